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

#ifndef SUBEXP_SUPERPOSE_HPP
#define SUBEXP_SUPERPOSE_HPP

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "subexp/modspace.hpp"

namespace subexp {

using Symbol = std::function<std::complex<double>(std::span<const double>)>;

SampledFunction fourier_multiplier(const SampledFunction& f, const Symbol& phi);

struct PhaseSplit {
  SampledFunction u0;
  std::vector<SampledFunction> parts;  // index bit j set <=> eps_j = 1 (xi_j < 0)
  double R = 2.0;
};

// xi_j = 0 outside P_R counts as eps_j = 0.
PhaseSplit phase_split(const SampledFunction& u, double R);
double split_residual(const SampledFunction& u, const PhaseSplit& split);

// |a_1 ... a_N - 1 - sum over nonempty subsets of prod (a_j - 1)| with subsets of {1, ..., N}.
double product_identity_check(const std::vector<std::complex<double>>& a);

// Zero-padded spectral interpolation onto a grid `factor` times finer (same L).
SampledFunction upsample(const SampledFunction& u, int factor);

inline constexpr double kCompositionTailLimit = 1e-6;

// mod_norm of e^{iu} - 1 on the 4x oversampled grid; p must lie in (1, inf).
NormResult exp_minus_one_norm(const SampledFunction& u, const NormParams& params);

struct BoundScanRow {
  int fixture = 0;
  double lambda = 0.0;
  double norm_u = 0.0;
  double lhs = 0.0;
  double bound = 0.0;
  double residual = 0.0;
};

struct BoundScan {
  std::string regime;
  double b = 0.0;
  double c = 0.0;
  double s = 2.0;       // gevrey
  double theta = 1.5;   // loglog
  int N = 3;            // loglog
  std::vector<BoundScanRow> rows;
  double min_residual = 0.0;
  bool passed = false;

  std::string to_csv() const;
  Json to_json() const;
};

struct BoundShape {
  std::string regime = "gevrey";
  double s = 2.0;
  double theta = 1.5;
  int N = 3;
};

// gevrey: c e^{b x^{1/s} log x}; loglog: c e^{theta w_*(b x^{1 + 1/N})}, x = ||lambda u||.
// (b, c) minimize the largest log-residual subject to all residuals being nonnegative.
BoundScan bound_scan(const SampledFunction& u, const NormParams& params, const BoundShape& shape,
                     const std::vector<double>& lambdas);
// One (b, c) shared by every fixture and lambda.
BoundScan bound_scan(const std::vector<SampledFunction>& fixtures, const NormParams& params,
                     const BoundShape& shape, const std::vector<double>& lambdas);

// Closed forms "gevrey_bump:<mu>", "up"; "density:<density spec>" integrates
// (2 pi)^{-1/2} int (e^{i xi t} - 1) g(xi) dxi over the density's direct range.
std::function<double(double)> superposition_function(const std::string& name);

// Applies f pointwise on the 4x oversampled grid.
SampledFunction compose(const std::string& name, const SampledFunction& u);

struct LipschitzResult {
  double identity_residual = 0.0;
  double ratio = 0.0;  // NaN when u = v
};

LipschitzResult lipschitz_check(const SampledFunction& u, const SampledFunction& v, const NormParams& params);

}  // namespace subexp

#endif  // SUBEXP_SUPERPOSE_HPP
