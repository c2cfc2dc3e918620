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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "subexp/modspace.hpp"

using namespace subexp;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

SampledFunction mode(int k, int N, cplx c = 1.0) {
  SynthParams p;
  p.k = {static_cast<double>(k)};
  p.c = c;
  return synthesize("mode", 1, kPi, N, p);
}

SampledFunction fixture(double L, int N, double band, std::uint64_t seed, bool real = true) {
  SynthParams p;
  p.band = band;
  p.real = real;
  return synthesize("random_bandlimited", 1, L, N, p, seed);
}

TEST_CASE("lp norms of simple functions") {
  SynthParams p;
  p.k = {0.0};
  p.c = {3.0, 4.0};
  const SampledFunction c = synthesize("mode", 1, 2.0, 64, p);
  CHECK(lp_norm(c, 1.0) == doctest::Approx(5.0 * 4.0));
  CHECK(lp_norm(c, 2.0) == doctest::Approx(5.0 * 2.0));
  CHECK(lp_norm(c, kInf) == doctest::Approx(5.0));
  CHECK(lp_norm(synthesize("zero", 1, 2.0, 64, {}), 3.0) == 0.0);
  CHECK_THROWS_AS(lp_norm(c, 0.5), InvalidArgument);
}

TEST_CASE("single mode: lattice norm is w(k) (2 pi)^{1/p}") {
  for (int k : {0, 3, -7, 20}) {
    const SampledFunction f = mode(k, 128, {0.0, 2.0});
    for (double p : {1.0, 2.0, 4.0, kInf}) {
      NormParams P;
      P.p = p;
      P.mode = FreqMode::Lattice;
      P.weight = WeightSpec::gevrey(2.0);
      const double want = 2.0 * std::exp(std::sqrt(std::abs(k))) * (std::isinf(p) ? 1.0 : std::pow(2 * kPi, 1.0 / p));
      CHECK(mod_norm(f, P).value == doctest::Approx(want).epsilon(1e-12));
      P.mode = FreqMode::Continuum;
      CHECK(mod_norm(f, P).value == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("lattice and continuum agree at L = pi") {
  const SampledFunction f = fixture(kPi, 256, 6.0, 3);
  NormParams A;
  A.k_max = 20;
  A.weight = WeightSpec::loglog();
  A.mode = FreqMode::Lattice;
  NormParams B = A;
  B.mode = FreqMode::Continuum;
  CHECK(mod_norm(f, A).value == doctest::Approx(mod_norm(f, B).value).epsilon(1e-11));
  SampledFunction g = fixture(2.0, 64, 3.0, 1);
  CHECK_THROWS_AS(mod_norm(g, A), InvalidArgument);
}

TEST_CASE("norm is independent of the sampling density for band-limited input") {
  NormParams P;
  P.k_max = 8;
  const double a = mod_norm(fixture(2 * kPi, 128, 4.0, 5), P).value;
  const double b = mod_norm(fixture(2 * kPi, 512, 4.0, 5), P).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-11));
}

TEST_CASE("zero function has zero norm; truncation warnings") {
  const SampledFunction z = synthesize("zero", 1, kPi, 64, {});
  NormParams P;
  P.mode = FreqMode::Lattice;
  CHECK(mod_norm(z, P).value == 0.0);

  const SampledFunction f = fixture(kPi, 128, 10.0, 2);
  P.k_max = 5;
  const NormResult r = mod_norm(f, P);
  CHECK(r.truncation_tail > kTruncationThreshold);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].rfind("TruncationWarning", 0) == 0);
  P.k_max = 12;
  CHECK(mod_norm(f, P).warnings.empty());
  P.k_max = 1000;
  CHECK_THROWS_AS(mod_norm(f, P), InvalidArgument);
}

TEST_CASE("box_k in lattice mode keeps one coefficient") {
  const SampledFunction f = fixture(kPi, 64, 5.0, 8, false);
  const int k[1] = {3};
  const SampledFunction b = box_k(f, k, build_window(1), FreqMode::Lattice);
  const Spectrum s = spectrum(b), t = spectrum(f);
  for (int i = 0; i < 64; ++i) CHECK(std::abs(s.coeffs[i] - (i == 3 ? t.coeffs[3] : cplx{})) < 1e-14);
}

TEST_CASE("STFT norm of a Gaussian matches the closed form") {
  // f = e^{-a t^2}, window e^{-b t^2}:
  // ||V(., xi)||_2^2 = (1/2pi) (pi/(a+b)) sqrt(pi (a+b)/(2ab)) e^{-xi^2/(2(a+b))}.
  const double a = 1.0, b = 0.5;
  SynthParams pf, pw;
  pf.a = a;
  pw.a = b;
  const SampledFunction f = synthesize("gaussian", 1, 4 * kPi, 256, pf);
  const SampledFunction w = synthesize("gaussian", 1, 4 * kPi, 256, pw);
  const auto v2 = [&](double xi) {
    return (1.0 / (2 * kPi)) * (kPi / (a + b)) * std::sqrt(kPi * (a + b) / (2 * a * b)) *
           std::exp(-xi * xi / (2 * (a + b)));
  };
  // Smooth weight: the xi-sum converges spectrally to the integral.
  const double integral =
      2.0 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(v2, 0.0, 60.0, 15, 1e-13);
  CHECK(stft_norm(f, 2.0, 2.0, WeightSpec::polynomial(0.0), w) == doctest::Approx(std::sqrt(integral)).epsilon(1e-9));
  // exp(|xi|^{1/2}) has a cusp at 0, so compare against the closed form summed on the same xi lattice.
  const WeightSpec g = WeightSpec::gevrey(2.0);
  double sum = 0.0;
  for (int m = -f.N / 2; m < f.N / 2; ++m) {
    const double xi = f.xi(m);
    sum += (kPi / f.L) * std::exp(2.0 * log_weight_radial(g, xi)) * v2(xi);
  }
  CHECK(stft_norm(f, 2.0, 2.0, g, w) == doctest::Approx(std::sqrt(sum)).epsilon(1e-9));
  const SampledFunction big = synthesize("gaussian", 1, 4 * kPi, 8192, pf);
  CHECK_THROWS_AS(stft_norm(big, 2, 2, WeightSpec::gevrey(2), big), InvalidArgument);
}

TEST_CASE("norm equivalence constants stay in a narrow band") {
  SynthParams gp;
  gp.a = 0.5;
  const SampledFunction win = synthesize("gaussian", 1, 4 * kPi, 256, gp);
  NormParams P;
  P.k_max = 8;
  double lo = kInf, hi = 0.0;
  for (int i = 0; i < 8; ++i) {
    const SampledFunction f = fixture(4 * kPi, 256, 6.0, 100 + i);
    const double r = stft_norm(f, 2, 2, P.weight, win) / mod_norm(f, P).value;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo < 20.0);
}

TEST_CASE("product spectrum lies in the sum of the supports") {
  const SampledFunction f = fixture(kPi, 128, 5.0, 1, false), g = fixture(kPi, 128, 7.0, 2, false);
  const Spectrum s = spectrum(multiply(f, g));
  for (int i = 0; i < 128; ++i)
    if (std::abs(Spectrum::signed_index(i, 128)) > 12) CHECK(std::abs(s.coeffs[i]) < 1e-13);
  CHECK_THROWS_AS(multiply(f, fixture(kPi, 64, 5.0, 1)), InvalidArgument);
}

TEST_CASE("algebra ratio is finite and refinement-stable") {
  std::vector<std::pair<SampledFunction, SampledFunction>> c1, c2;
  for (int i = 0; i < 5; ++i) {
    c1.emplace_back(fixture(2 * kPi, 256, 4.0, 10 + 2 * i, false), fixture(2 * kPi, 256, 4.0, 11 + 2 * i, false));
    c2.emplace_back(fixture(2 * kPi, 512, 4.0, 10 + 2 * i, false), fixture(2 * kPi, 512, 4.0, 11 + 2 * i, false));
  }
  NormParams P;
  P.k_max = 10;
  for (const auto& w : {WeightSpec::gevrey(2.0), WeightSpec::loglog(), WeightSpec::polynomial(2.0)}) {
    P.weight = w;
    const auto r1 = check_algebra_ratio(c1, P, 2, 2);
    const double m = r1.extra.at("max_ratio").get<double>();
    CHECK(std::isfinite(m));
    CHECK(m > 0.0);
    const auto r2 = check_algebra_ratio(c2, P, 2, 2, m);
    CHECK(r2.passed);
    CHECK(r2.extra.at("relative_change").get<double>() < 0.05);
  }
}

TEST_CASE("weighted Fourier L2 of a mode") {
  const SampledFunction f = mode(4, 64);
  // Continuous transform of e^{4ix} on [-pi, pi) is a spike of height 2pi/sqrt(2pi); dxi = 1.
  const double want = std::exp(2.0) * std::sqrt(2 * kPi);
  CHECK(weighted_fourier_l2(f, WeightSpec::gevrey(2.0)) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("Gevrey constant of a mode") {
  const SampledFunction f = mode(3, 64);
  const double s = 1.5;
  double want = 0.0;
  for (int a = 0; a <= 12; ++a) want = std::max(want, std::exp((a * std::log(3.0) - s * std::lgamma(a + 1.0)) / (a + 1.0)));
  CHECK(estimate_gevrey_constant(f, s, 12) == doctest::Approx(want).epsilon(1e-10));
  CHECK_THROWS_AS(estimate_gevrey_constant(f, s, 21), InvalidArgument);
}
