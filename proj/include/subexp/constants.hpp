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

#ifndef SUBEXP_CONSTANTS_HPP
#define SUBEXP_CONSTANTS_HPP

#include "subexp/report.hpp"

namespace subexp {

// int_t^inf e^{-y} y^{alpha-1} dy, relative error <= 1e-10.
double upper_incomplete_gamma(double alpha, double t);

// Inverse of t -> upper_incomplete_gamma(alpha, t), mapping (0, Gamma(alpha)] onto [0, inf).
double inverse_g(double alpha, double u);

// Conjugate exponent; q = 1 gives +inf and q = inf gives 1.
double conjugate_exponent(double q);

// delta = 2 - 2^{1/s}.
double gevrey_delta(double s);

// 2 pi^{n/2}/Gamma(n/2) * s (delta q')^{-sn} * Gamma(sn, delta q' (R-2)^{1/s}).
// For q = 1 the sup form e^{-delta (R-2)^{1/s}} is returned instead.
double constant_E_R(double s, double q, int n, double R);

// Subalgebra constant C * E_R^{1/q'} (C * e^{-delta (R-2)^{1/s}} when q = 1); D_R and F_R share this form.
double constant_F_R(double s, double q, int n, double R, double calibration = 1.0);

double constant_G_RN(int N, double R, double calibration = 1.0);

struct LatticeSum {
  double value = 0.0;       // (sum)^{1/q'}
  double partial = 0.0;     // sum over |m|_2 <= cutoff
  double tail_bound = 0.0;  // rigorous bound on the omitted terms of the sum
  double cutoff = 0.0;
  double last_term = 0.0;   // summand at |m| = cutoff
};

// (sum_{m in Z^n} e^{-s w_*(|m|) q'})^{1/q'} with an integral bound on the tail.
// cutoff = 0 selects 1e6 in 1D and 2000 in 2D (1e5 and 400 for the Gevrey sum).
LatticeSum constant_c3_loglog(double s, double q_conj, int n, double cutoff = 0.0);
// (sum_{m in Z^n} e^{-delta |m|^{1/s} q'})^{1/q'} with delta = 2 - 2^{1/s}.
LatticeSum constant_c3_gevrey(double s, double q_conj, int n, double cutoff = 0.0);

// e^{2 sqrt(n) ||w_*'||_inf}.
double constant_c4(int n);

// Gevrey: R > 2 solving F_R/F_2 = norm_u^{1/s - 1}.
double choose_R_gevrey(double norm_u, double s, double q, int n);
// LogLog: 2 norm_u^{1/N}.
double choose_R_loglog(double norm_u, int N);

Json constants_table();

}  // namespace subexp

#endif  // SUBEXP_CONSTANTS_HPP
