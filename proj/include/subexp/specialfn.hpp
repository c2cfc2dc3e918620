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

#ifndef SUBEXP_SPECIALFN_HPP
#define SUBEXP_SPECIALFN_HPP

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "subexp/report.hpp"

namespace subexp {

// phi_mu(t) = psi(1 - t) psi(t) with psi(t) = e^{-t^mu} for t > 0 and 0 otherwise; mu < 0.
double gevrey_bump(double mu, double t);

// (2 pi)^{-1/2} int_0^1 phi_mu(t) e^{-i t xi} dt by double-exponential quadrature.
std::complex<double> gevrey_bump_fourier(double mu, double xi);

struct DecayFit {
  double c = 0.0;
  double eps = 0.0;
  double s = 0.0;           // 1 - 1/mu; the fitted bound is c e^{-eps |xi|^{1/s}}
  bool ok = false;          // false when no eps > 0 fits the samples
  double max_violation = 0; // max of log|F| - log(c e^{-eps |xi|^{1/s}}) over the samples (<= 0)
  std::vector<double> xi;
  std::vector<double> log_abs;
};

// Supporting line of the upper hull of (|xi|^{1/s}, log|F(xi)|) at the mean abscissa.
DecayFit gevrey_bump_decay(double mu, const std::vector<double>& xi_list);

struct UpFourier {
  std::complex<double> value;
  double rel_error_bound = 0.0;  // certified bound on the omitted factors j > J
  int J = 0;
};

// e^{-i xi} (2 pi)^{-1/2} prod_{j=1}^J sinc(2^{-j} xi). J <= 0 chooses |xi| 2^{-J} <= 1e-8 (at least 60).
UpFourier up_fourier(double xi, int J = 0);

enum class UpMethod { Convolution, Fourier };

double up_eval(double x, UpMethod method = UpMethod::Convolution);
// Spectral derivative from the Fourier integral.
double up_derivative(double x);

// Decay bound (2 pi)^{-1/2} |xi|^{1 - log2|xi| / 2}.
double up_decay_bound(double xi);

// Fourier-side density of a measure on R; |g| is even.
struct Density {
  struct Table {
    std::vector<double> xi, weight;  // quadrature nodes of [0, direct_limit]
    std::vector<std::complex<double>> g;
  };

  std::string name;
  std::function<std::complex<double>(double)> eval;
  // Upper bound for log|g(xi)|, used beyond `direct_limit`.
  std::function<double(double)> log_envelope;
  double direct_limit = 0.0;
  bool odd = false;  // g(-xi) = -g(xi); otherwise g(-xi) = conj(g(xi))
  Json params = Json::object();
  std::shared_ptr<const Table> table;
};

// name: "gevrey_bump:<mu>", "up", "rational_decay:<k>", "gaussian:<a>".
Density make_density(const std::string& spec);

struct MeasureParams {
  std::string regime = "gevrey";  // gevrey | loglog
  double s = 2.0;                 // gevrey
  double theta = 1.5;             // loglog
  double eps = 0.5;               // loglog
};

struct MeasureResult {
  double log_value = 0.0;
  double value = 0.0;            // +inf when exp overflows
  std::complex<double> moment;   // int g over the direct range
  double moment_tail_bound = 0.0;
  bool divergent = false;
  double xi_converged = 0.0;     // upper end of the last block that mattered
  int blocks = 0;
  std::vector<double> block_log;  // log of the contribution of each dyadic block [2^{k-1}, 2^k]
};

// L1(lambda) = int e^{E(xi)} |g(xi)| dxi with E the regime's exponent.
MeasureResult measure_L1(const Density& g, double lambda, const MeasureParams& params);

// Regime exponent: gevrey lambda |xi|^{1/s} log|xi|; loglog theta w_*(lambda |xi|^{1+eps}). Input is log|xi|.
double measure_exponent(double log_xi, double lambda, const MeasureParams& params);

// |numerator| / |log|g(xi)|| with numerator xi^{1/s} log xi (gevrey) or w_*(xi) (loglog). log|g| is the
// maximum over the window [xi/sqrt2, xi sqrt2] on the direct range and the envelope beyond it.
double density_quotient(const Density& g, double xi, const MeasureParams& params);

}  // namespace subexp

#endif  // SUBEXP_SPECIALFN_HPP
