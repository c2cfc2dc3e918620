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

#ifndef SUBEXP_FUNCTION_HPP
#define SUBEXP_FUNCTION_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "subexp/report.hpp"

namespace subexp {

using cplx = std::complex<double>;

// Complex samples on the periodic grid x_j = -L + j*(2L/N) over [-L, L)^n, row-major.
struct SampledFunction {
  int n = 1;
  double L = 3.141592653589793;
  int N = 64;
  std::vector<cplx> values;
  std::string kind = "custom";
  std::uint64_t seed = 0;

  std::size_t size() const { return values.size(); }
  double spacing() const { return 2.0 * L / N; }
  double x(int j) const { return -L + j * spacing(); }
  // Frequency of spectral index m in [-N/2, N/2): pi*m/L.
  double xi(int m) const;
  bool same_grid(const SampledFunction& other) const;
  bool is_real(double tol = 0.0) const;
};

SampledFunction make_function(int n, double L, int N);

// Coefficients c_m with f(x_j) = sum_m c_m e^{i xi_m . x_j}; storage index is m mod N per axis.
struct Spectrum {
  int n = 1;
  double L = 3.141592653589793;
  int N = 64;
  std::vector<cplx> coeffs;

  static int signed_index(int idx, int N) { return idx < N / 2 ? idx : idx - N; }
  // Discrete surrogate of the Fourier transform (2 pi)^{-n/2} int f e^{-i x xi} dx at xi_m.
  cplx fourier_transform(std::size_t flat) const;
};

Spectrum spectrum(const SampledFunction& f);
SampledFunction from_spectrum(const Spectrum& s, const SampledFunction& like);

struct SynthParams {
  std::vector<double> k;       // mode: frequency vector (length n)
  cplx c{1.0, 0.0};            // mode: amplitude
  double a = 1.0;              // gaussian: exponent
  double band = 4.0;           // random_bandlimited: radius in |xi|_2
  bool real = true;            // random_bandlimited: impose conjugate symmetry
  double decay = 0.0;          // random_bandlimited: amplitude factor e^{-decay |xi|}
};

// kind: "mode", "gaussian", "random_bandlimited", "zero".
SampledFunction synthesize(const std::string& kind, int n, double L, int N, const SynthParams& params,
                           std::uint64_t seed = 0);

// Header line {n, L, N, kind, seed} then rows "flat_index,re,im" in shortest round-trip form.
void save_function(const SampledFunction& f, const std::string& path);
SampledFunction load_function(const std::string& path);
std::string serialize_function(const SampledFunction& f);
SampledFunction parse_function(const std::string& text);

}  // namespace subexp

#endif  // SUBEXP_FUNCTION_HPP
