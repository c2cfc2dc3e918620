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

#include <boost/math/differentiation/finite_difference.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "subexp/weights.hpp"

using namespace subexp;

TEST_CASE("bracket_star and w_star basics") {
  const double e = std::numbers::e;
  CHECK(bracket_star(0.0) == doctest::Approx(std::exp(e)).epsilon(1e-15));
  CHECK(bracket_star(3.0) == doctest::Approx(std::sqrt(std::exp(2 * e) + 9.0)).epsilon(1e-15));
  // log<0>_* = e and loglog<0>_* = 1.
  CHECK(w_star(0.0) == doctest::Approx(e).epsilon(1e-14));
  CHECK_THROWS_AS(w_star(1.0, 3), InvalidArgument);
}

TEST_CASE("w_star derivatives agree with finite differences") {
  using boost::math::differentiation::finite_difference_derivative;
  for (double t : {0.5, 3.0, 16.0, 40.0, 1e3, 1e5}) {
    const double d1 = finite_difference_derivative([](double x) { return w_star(x, 0); }, t);
    const double d2 = finite_difference_derivative([](double x) { return w_star(x, 1); }, t);
    CHECK(w_star(t, 1) == doctest::Approx(d1).epsilon(1e-8));
    CHECK(w_star(t, 2) == doctest::Approx(d2).epsilon(1e-6));
  }
}

TEST_CASE("analyze_weight locates t0 and p0") {
  const WeightAnalysis a = analyze_weight();
  CHECK(a.t0 > 16.4449);
  CHECK(a.t0 < 16.4451);
  CHECK(a.p0 > 0.410247);
  CHECK(a.p0 < 0.410248);
  CHECK(a.s_admissible == doctest::Approx(1.0 - a.p0));

  // Oracle: TOMS 748 on w_*'' over a bracket chosen independently of the library.
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve([](double t) { return w_star(t, 2); }, 5.0, 50.0,
                                                   boost::math::tools::eps_tolerance<double>(40), iters);
  CHECK(std::abs(a.t0 - 0.5 * (r.first + r.second)) < 1e-8);
  CHECK(a.deriv_sup == doctest::Approx(w_star(a.t0, 1)).epsilon(1e-12));

  // Oracle for p0: dense log-spaced scan of p(t) = t w_*'/w_*.
  double best = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double t = std::exp(std::log(1e-2) + (std::log(1e8) - std::log(1e-2)) * i / 200000.0);
    best = std::max(best, aux_p_q(t).p);
  }
  CHECK(a.p0 >= best - 1e-12);
  CHECK(a.p0 - best < 1e-8);
}

TEST_CASE("parse_weight round trip and errors") {
  for (const char* text : {"poly:2", "gevrey:1.5", "loglog", "exp:0.25"})
    CHECK(to_string(parse_weight(text)) == text);
  CHECK_THROWS_AS(parse_weight("gevrey:0"), InvalidArgument);
  CHECK_THROWS_AS(parse_weight("exp:-1"), InvalidArgument);
  CHECK_THROWS_AS(parse_weight("cubic"), InvalidArgument);
  CHECK_THROWS_AS(parse_weight("poly:"), InvalidArgument);
}

TEST_CASE("weight evaluation") {
  const double k2[2] = {3.0, 4.0};
  CHECK(weight_eval(WeightSpec::polynomial(2.0), k2) == doctest::Approx(26.0));
  CHECK(weight_eval(WeightSpec::gevrey(2.0), k2) == doctest::Approx(std::exp(std::sqrt(5.0))));
  CHECK(log_weight_eval(WeightSpec::loglog(), k2) == doctest::Approx(w_star(5.0)));
  CHECK(weight_eval(WeightSpec::exponential(1.0), k2) == doctest::Approx(32.0));
  // The radial weight depends on |r| only; negative radii come from signed 1D frequencies.
  for (const auto& w : {WeightSpec::gevrey(2.0), WeightSpec::loglog(), WeightSpec::polynomial(1.0)})
    CHECK(log_weight_radial(w, -7.5) == log_weight_radial(w, 7.5));
}

TEST_CASE("Gevrey inequality on a small lattice") {
  for (double s : {1.2, 2.0, 3.0}) {
    const auto r1 = verify_gevrey_inequality({s, 1, 60});
    CHECK(r1.passed);
    CHECK(r1.points_checked == 121u * 121u);
    const auto r2 = verify_gevrey_inequality({s, 2, 6});
    CHECK(r2.passed);
    CHECK(r2.points_checked == 13u * 13u * 13u * 13u);
  }
  CHECK_THROWS_AS(verify_gevrey_inequality({1.0, 1, 10}), InvalidArgument);
}

TEST_CASE("LogLog inequality holds at 1 - p0 and is sharp at 0.99") {
  LogLogDomain d;
  d.grid_max = 400.0;
  d.random_points = 5000;
  const auto ok = verify_loglog_inequality(d);
  CHECK(ok.passed);
  CHECK(ok.min_margin > 0.0);
  d.s = 0.99;
  d.grid_max = 2000.0;
  const auto bad = verify_loglog_inequality(d);
  CHECK_FALSE(bad.passed);
  CHECK(bad.worst_point.size() == 2);
}

TEST_CASE("elementary inequality") {
  for (double eps : {0.1, 0.5, 0.9}) CHECK(verify_elementary_inequality({eps, 1e4, 20001}).passed);
}

TEST_CASE("dispatch by kind") {
  const auto r = verify_weight_inequality("gevrey", {{"s", 1.5}, {"radius", 20}});
  CHECK(r.passed);
  CHECK(r.kind == "gevrey");
  CHECK_THROWS_AS(verify_weight_inequality("cubic", Json::object()), InvalidArgument);
}
