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

#ifndef SUBEXP_MODSPACE_HPP
#define SUBEXP_MODSPACE_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subexp/function.hpp"
#include "subexp/partition.hpp"
#include "subexp/weights.hpp"

namespace subexp {

enum class FreqMode { Lattice, Continuum };

FreqMode parse_mode(const std::string& text);
std::string to_string(FreqMode mode);

// p, q may be +infinity. k_max < 0 selects the largest radius the grid supports.
struct NormParams {
  double p = 2.0;
  double q = 2.0;
  WeightSpec weight = WeightSpec::gevrey(2.0);
  FreqMode mode = FreqMode::Continuum;
  int k_max = -1;
};

Json to_json(const NormParams& params);

struct NormResult {
  double value = 0.0;
  double truncation_tail = 0.0;  // relative spectral mass outside |xi|_inf <= k_max - 1
  int k_max = 0;
  std::vector<std::string> warnings;
};

Json to_json(const NormResult& result, const NormParams& params);

inline constexpr double kTruncationThreshold = 1e-9;

// Largest |xi| resolved per axis: pi*(N/2)/L.
double nyquist(const SampledFunction& f);
int effective_k_max(const SampledFunction& f, const NormParams& params);

// Fraction of sum |c_m|^2 carried by frequencies with |xi_m|_inf > radius.
double spectral_tail(const SampledFunction& f, double radius);

SampledFunction box_k(const SampledFunction& f, std::span<const int> k, const WindowFunction& w, FreqMode mode);

double lp_norm(const SampledFunction& f, double p);

NormResult mod_norm(const SampledFunction& f, const NormParams& params, const WindowFunction& w);
NormResult mod_norm(const SampledFunction& f, const NormParams& params);

// Rejects N > 4096 in 1D and N > 128 in 2D.
double stft_norm(const SampledFunction& f, double p, double q, const WeightSpec& weight,
                 const SampledFunction& window);

SampledFunction multiply(const SampledFunction& f, const SampledFunction& g);

// (sum_m dxi^n w(xi_m)^2 |Ff(xi_m)|^2)^{1/2}, the weighted L^2 norm of the Fourier transform.
double weighted_fourier_l2(const SampledFunction& f, const WeightSpec& weight);

// r = ||fg||_{p} / (||f||_{p1} ||g||_{p2}) with p taken from params. With a reference maximum
// (e.g. from a coarser grid) the margin is 0.05 minus the relative change of the maximum.
VerificationReport check_algebra_ratio(const std::vector<std::pair<SampledFunction, SampledFunction>>& corpus,
                                       const NormParams& params, double p1, double p2,
                                       std::optional<double> reference_max = std::nullopt);

// Smallest C with sup|D^a f| <= C^{|a|+1} (a!)^{s n} over |a| <= alpha_max (at most 20).
double estimate_gevrey_constant(const SampledFunction& f, double s, int alpha_max);

}  // namespace subexp

#endif  // SUBEXP_MODSPACE_HPP
