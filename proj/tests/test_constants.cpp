// Copyright 2026 The subexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "subexp/constants.hpp"
#include "subexp/weights.hpp"

using namespace subexp;

TEST_CASE("upper incomplete gamma against Boost") {
  for (double a : {0.2, 0.5, 1.0, 1.5, 2.0, 3.7, 6.0, 10.0})
    for (double t : {0.0, 1e-3, 0.3, 1.0, 2.5, 8.0, 30.0, 100.0}) {
      const double want = boost::math::tgamma(a, t);
      CHECK(upper_incomplete_gamma(a, t) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("upper incomplete gamma recurrence and closed forms") {
  for (double a : {0.5, 1.5, 2.5})
    for (double t : {0.1, 1.0, 5.0}) {
      const double lhs = upper_incomplete_gamma(a + 1, t);
      const double rhs = a * upper_incomplete_gamma(a, t) + std::pow(t, a) * std::exp(-t);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  for (double t : {0.0, 0.5, 4.0, 40.0}) {
    CHECK(upper_incomplete_gamma(1, t) == doctest::Approx(std::exp(-t)).epsilon(1e-9));
    CHECK(upper_incomplete_gamma(2, t) == doctest::Approx((1 + t) * std::exp(-t)).epsilon(1e-9));
  }
  CHECK(upper_incomplete_gamma(0.5, 0.0) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));
  CHECK_THROWS_AS(upper_incomplete_gamma(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(upper_incomplete_gamma(1.0, -1.0), InvalidArgument);
}

TEST_CASE("inverse_g against Boost gamma_q_inv") {
  for (double a : {0.5, 1.0, 2.0, 4.0})
    for (double u : {0.9, 1e-2, 1e-6, 1e-12}) {
      const double v = u * boost::math::tgamma(a);
      const double want = boost::math::gamma_q_inv(a, u);
      CHECK(inverse_g(a, v) == doctest::Approx(want).epsilon(1e-8));
      CHECK(upper_incomplete_gamma(a, inverse_g(a, v)) == doctest::Approx(v).epsilon(1e-8));
    }
  CHECK(inverse_g(2.0, 1.0) == 0.0);
  CHECK_THROWS_AS(inverse_g(2.0, 1.5), InvalidArgument);
  CHECK_THROWS_AS(inverse_g(2.0, 0.0), InvalidArgument);
}

TEST_CASE("g(u) / log(1/u) approaches 1 for alpha = 2") {
  double prev = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (double u : {1e-4, 1e-8, 1e-12}) {
    const double r = inverse_g(2.0, u) / std::log(1.0 / u);
    CHECK(r > 1.0);
    CHECK(r - 1.0 < prev);
    prev = r - 1.0;
    last = r;
  }
  CHECK(std::abs(last - 1.0) < 0.2);
}

TEST_CASE("E_R and F_R closed forms") {
  const double s = 2.0, q = 2.0, qc = 2.0;
  const double delta = 2.0 - std::sqrt(2.0);
  CHECK(gevrey_delta(s) == doctest::Approx(delta));
  CHECK(conjugate_exponent(2.0) == 2.0);
  CHECK(std::isinf(conjugate_exponent(1.0)));
  CHECK(conjugate_exponent(std::numeric_limits<double>::infinity()) == 1.0);
  for (int n : {1, 2})
    for (double R : {3.0, 6.0, 20.0}) {
      const double sn = s * n;
      const double want = 2 * std::pow(std::numbers::pi, n / 2.0) / boost::math::tgamma(n / 2.0) * s *
                          std::pow(delta * qc, -sn) * boost::math::tgamma(sn, delta * qc * std::pow(R - 2, 1 / s));
      CHECK(constant_E_R(s, q, n, R) == doctest::Approx(want).epsilon(1e-9));
      CHECK(constant_F_R(s, q, n, R, 3.0) == doctest::Approx(3.0 * std::sqrt(want)).epsilon(1e-9));
    }
  CHECK(constant_E_R(s, 1.0, 1, 6.0) == doctest::Approx(std::exp(-delta * 2.0)));
  CHECK(constant_G_RN(3, 4.0, 2.0) == doctest::Approx(2.0 / 64.0));
}

TEST_CASE("c3 lattice sums against direct summation") {
  const double s = analyze_weight().s_admissible;
  // Direct sum with long double accumulation up to a larger cutoff, independent of the tail bound.
  long double direct = std::exp(-s * w_star(0.0) * 2.0);
  for (long m = 1; m <= 4000000; ++m) direct += 2.0L * std::exp(-s * w_star(static_cast<double>(m)) * 2.0);
  const LatticeSum c = constant_c3_loglog(s, 2.0, 1);
  CHECK(std::isfinite(c.value));
  CHECK(c.tail_bound < 1e-10);
  CHECK(c.value == doctest::Approx(std::sqrt(static_cast<double>(direct))).epsilon(1e-9));
  CHECK(c.partial <= static_cast<double>(direct));

  const double delta = gevrey_delta(2.0);
  long double g = 1.0L;
  for (long m = 1; m <= 200000; ++m) g += 2.0L * std::exp(-delta * std::sqrt(static_cast<double>(m)) * 2.0);
  CHECK(constant_c3_gevrey(2.0, 2.0, 1).value == doctest::Approx(std::sqrt(static_cast<double>(g))).epsilon(1e-12));
}

TEST_CASE("c4 and R selection") {
  const double sup = analyze_weight().deriv_sup;
  CHECK(constant_c4(2) == doctest::Approx(std::exp(2 * std::sqrt(2.0) * sup)));
  CHECK(choose_R_loglog(16.0, 2) == doctest::Approx(8.0));
  double prev = 2.0;
  for (double u : {1.0001, 10.0, 1e4, 1e8}) {
    const double R = choose_R_gevrey(u, 2.0, 2.0, 1);
    CHECK(R > prev);
    // The defining relation F_R / F_2 = u^{1/s - 1}.
    CHECK(constant_F_R(2.0, 2.0, 1, R) / constant_F_R(2.0, 2.0, 1, 2.0) ==
          doctest::Approx(std::pow(u, 0.5 - 1.0)).epsilon(1e-7));
    prev = R;
  }
  CHECK_THROWS_AS(choose_R_gevrey(0.5, 2.0, 2.0, 1), InvalidArgument);
}

TEST_CASE("constants table is complete") {
  const Json t = constants_table();
  for (const char* key : {"weight_analysis", "c4", "c3_loglog", "c3_gevrey", "E_R", "choose_R", "G_RN"})
    CHECK(t.contains(key));
}
