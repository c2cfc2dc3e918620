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

#ifndef SUBEXP_WEIGHTS_HPP
#define SUBEXP_WEIGHTS_HPP

#include <cstdint>
#include <span>
#include <string>

#include "subexp/report.hpp"

namespace subexp {

/// Frequency weight families used by the modulation norms.
///
///   Polynomial(s)    (1 + |k|^2)^{s/2}
///   Gevrey(s)        exp(|k|^{1/s})
///   LogLog           exp(log<k>_* loglog<k>_*)
///   Exponential(l)   2^{l |k|}
struct WeightSpec {
  enum class Variant { Polynomial, Gevrey, LogLog, Exponential };

  Variant variant = Variant::Polynomial;
  double s = 0.0;
  double lambda = 0.0;

  static WeightSpec polynomial(double s) { return {Variant::Polynomial, s, 0.0}; }
  static WeightSpec gevrey(double s) { return {Variant::Gevrey, s, 0.0}; }
  static WeightSpec loglog() { return {Variant::LogLog, 0.0, 0.0}; }
  static WeightSpec exponential(double lambda) { return {Variant::Exponential, 0.0, lambda}; }

  // Throws InvalidArgument for Gevrey s <= 0 or Exponential lambda < 0.
  void validate() const;
};

/// Parses "poly:<s>", "gevrey:<s>", "loglog", "exp:<lambda>".
WeightSpec parse_weight(const std::string& text);
std::string to_string(const WeightSpec& w);
Json to_json(const WeightSpec& w);

/// <t>_* = (e^{2e} + t^2)^{1/2}.
double bracket_star(double t);

/// w_*(t) = log<t>_* loglog<t>_* (order 0) and its closed-form first and
/// second derivatives (order 1, 2).
double w_star(double t, int order = 0);

struct AuxPQ {
  double p;
  double q;
};

/// p(t) = t w_*'(t) / w_*(t) and q(t) = t / w_*(t), for t > 0.
AuxPQ aux_p_q(double t);

struct WeightAnalysis {
  double t0;            // root of w_*''
  double p0;            // sup of p over t > 0
  double p_argmax;      // where the sup is attained
  double s_admissible;  // 1 - p0
  double deriv_sup;     // w_*'(t0) = sup of w_*'
};

/// Locates t0 by bisection of w_*'' on [1, 100] and p0 by a log-spaced scan
/// followed by golden-section refinement. Throws NumericalError if w_*''
/// does not change sign on the bracket.
WeightAnalysis analyze_weight();

/// Weight value at a frequency vector (n = k.size()).
double weight_eval(const WeightSpec& spec, std::span<const double> k);
/// Natural log of weight_eval, usable where the weight itself overflows.
double log_weight_eval(const WeightSpec& spec, std::span<const double> k);
/// Radial versions.
double weight_radial(const WeightSpec& spec, double r);
double log_weight_radial(const WeightSpec& spec, double r);

/// exp(|k|^{1/s}) <= exp(|l|^{1/s}) exp(|l-k|^{1/s}) exp(-delta min(|l-k|,|l|)^{1/s})
/// with delta = 2 - 2^{1/s}, over the lattice box max(|k|_inf, |l|_inf) <= radius.
struct GevreyDomain {
  double s = 2.0;
  int n = 1;
  int radius = 200;
};

/// w_*(x) <= w_*(y) + w_*(|x-y|) - s min(w_*(y), w_*(|x-y|)) on the grid
/// [0, grid_max]^2 with spacing grid_step, plus random_points uniform samples
/// in [0, random_max]^2.
struct LogLogDomain {
  double s = 0.0;  // 0 selects 1 - p0
  double grid_max = 2000.0;
  double grid_step = 0.5;
  std::size_t random_points = 100000;
  double random_max = 1.0e6;
  std::uint64_t seed = 20260101;
};

/// w_*(xi^{1+eps}) <= (1+eps) log<xi>_* (eps + loglog<xi>_*) on [0, xi_max].
struct ElementaryDomain {
  double eps = 0.5;
  double xi_max = 1.0e5;
  std::size_t points = 200001;
};

/// All margins are RHS - LHS of the exponents (log domain).
inline constexpr double kLogDomainTolerance = 1e-12;

VerificationReport verify_gevrey_inequality(const GevreyDomain& domain);
VerificationReport verify_loglog_inequality(const LogLogDomain& domain);
VerificationReport verify_elementary_inequality(const ElementaryDomain& domain);

/// Dispatches on kind = "gevrey" | "loglog" | "elementary"; params carries the
/// domain fields by name (missing fields keep their defaults).
VerificationReport verify_weight_inequality(const std::string& kind, const Json& params);

}  // namespace subexp

#endif  // SUBEXP_WEIGHTS_HPP
