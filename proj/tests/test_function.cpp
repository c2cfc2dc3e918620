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

#include <cmath>
#include <filesystem>
#include <numbers>

#include "subexp/function.hpp"

using namespace subexp;

constexpr double kPi = std::numbers::pi;

TEST_CASE("grid geometry") {
  const SampledFunction f = make_function(1, kPi, 64);
  CHECK(f.size() == 64u);
  CHECK(f.spacing() == doctest::Approx(2 * kPi / 64));
  CHECK(f.x(0) == doctest::Approx(-kPi));
  CHECK(f.xi(3) == doctest::Approx(3.0));
  CHECK(make_function(2, 2.0, 16).size() == 256u);
  CHECK_THROWS_AS(make_function(1, kPi, 100), InvalidArgument);
  CHECK_THROWS_AS(make_function(3, kPi, 16), InvalidArgument);
  CHECK_THROWS_AS(make_function(1, -1.0, 16), InvalidArgument);
}

TEST_CASE("a pure mode has a single coefficient") {
  SynthParams p;
  p.k = {5.0};
  p.c = {0.5, -2.0};
  const SampledFunction f = synthesize("mode", 1, kPi, 64, p);
  CHECK(f.values[10].real() == doctest::Approx((p.c * std::exp(cplx(0, 5.0 * f.x(10)))).real()));
  const Spectrum s = spectrum(f);
  for (int i = 0; i < 64; ++i) {
    const cplx want = Spectrum::signed_index(i, 64) == 5 ? p.c : cplx{};
    CHECK(std::abs(s.coeffs[i] - want) < 1e-13);
  }
}

TEST_CASE("spectrum round trip in 1D and 2D") {
  for (int n : {1, 2}) {
    SynthParams p;
    p.band = 5.0;
    p.real = false;
    const SampledFunction f = synthesize("random_bandlimited", n, 3.0, 32, p, 9);
    const SampledFunction g = from_spectrum(spectrum(f), f);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(f.values[i] - g.values[i]) < 1e-12);
  }
}

TEST_CASE("Fourier transform of a Gaussian matches the closed form") {
  // F[e^{-a x^2}](xi) = (2a)^{-1/2} e^{-xi^2/(4a)} with the unitary convention.
  const double a = 0.7;
  SynthParams p;
  p.a = a;
  const SampledFunction f = synthesize("gaussian", 1, 4 * kPi, 256, p);
  const Spectrum s = spectrum(f);
  for (int i = 0; i < 256; ++i) {
    const double xi = f.xi(Spectrum::signed_index(i, 256));
    const double want = std::exp(-xi * xi / (4 * a)) / std::sqrt(2 * a);
    CHECK(std::abs(s.fourier_transform(i) - cplx(want)) < 1e-12);
  }
}

TEST_CASE("random band-limited fixtures") {
  SynthParams p;
  p.band = 6.0;
  const SampledFunction f = synthesize("random_bandlimited", 1, kPi, 128, p, 3);
  CHECK(f.is_real(1e-12));
  const Spectrum s = spectrum(f);
  for (int i = 0; i < 128; ++i)
    if (std::abs(Spectrum::signed_index(i, 128)) > 6) CHECK(std::abs(s.coeffs[i]) < 1e-14);
  // Coefficients are keyed by frequency, so a finer grid samples the same function.
  const SampledFunction g = synthesize("random_bandlimited", 1, kPi, 256, p, 3);
  for (int j = 0; j < 128; ++j) CHECK(std::abs(f.values[j] - g.values[2 * j]) < 1e-12);
  // Different seeds differ.
  const SampledFunction h = synthesize("random_bandlimited", 1, kPi, 128, p, 4);
  CHECK(std::abs(h.values[7] - f.values[7]) > 1e-6);
  p.band = 64.0;
  CHECK_THROWS_AS(synthesize("random_bandlimited", 1, kPi, 128, p, 3), InvalidArgument);
  CHECK_THROWS_AS(synthesize("sawtooth", 1, kPi, 128, p, 3), InvalidArgument);
}

TEST_CASE("serialization round trip is exact and deterministic") {
  SynthParams p;
  p.band = 4.0;
  p.real = false;
  const SampledFunction f = synthesize("random_bandlimited", 2, 2.5, 16, p, 21);
  const std::string text = serialize_function(f);
  const SampledFunction g = parse_function(text);
  CHECK(g.n == 2);
  CHECK(g.N == 16);
  CHECK(g.L == 2.5);
  CHECK(g.seed == 21u);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.values[i] == g.values[i]);
  CHECK(serialize_function(g) == text);

  const auto path = std::filesystem::temp_directory_path() / "subexp_test_function.csv";
  save_function(f, path.string());
  CHECK(serialize_function(load_function(path.string())) == text);
  std::filesystem::remove(path);
}

TEST_CASE("malformed function files are rejected") {
  CHECK_THROWS_AS(load_function("/nonexistent/dir/f.csv"), IoError);
  CHECK_THROWS(parse_function("not json\n"));
  CHECK_THROWS(parse_function("{\"n\":1,\"L\":3.14,\"N\":4}\n0,1,0\n1,1,0\n"));
  CHECK_THROWS(parse_function("{\"n\":1,\"L\":3.14,\"N\":2}\n0,1,0\n1,abc,0\n"));
}
