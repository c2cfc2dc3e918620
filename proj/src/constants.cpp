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

#include "subexp/constants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "quadrature.hpp"
#include "subexp/weights.hpp"

namespace subexp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Asymptotic expansion Gamma(a, y) ~ y^{a-1} e^{-y} sum_k (a-1)...(a-k) / y^k, valid for y >> a.
double asymptotic_tail(double alpha, double y) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = term * (alpha - k) / y;
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::exp((alpha - 1.0) * std::log(y) - y) * sum;
}

double tail_integral(const std::function<double(double)>& phi, double a) {
  double total = 0.0;
  double lo = a;
  double width = std::max(1.0, a);
  for (int seg = 0; seg < 200; ++seg) {
    const double part = detail::adaptive_gauss(phi, lo, lo + width, 1e-10, 0.0, 30).value;
    total += part;
    if (part <= 1e-18 * total || (total == 0.0 && phi(lo + width) == 0.0)) break;
    lo += width;
    width *= 2.0;
  }
  return total;
}

LatticeSum lattice_sum(const std::function<double(double)>& phi, double q_conj, int n, double cutoff) {
  if (n != 1 && n != 2) throw InvalidArgument("dimension must be 1 or 2");
  if (!(q_conj >= 1.0)) throw InvalidArgument("q' must lie in [1, inf]");
  LatticeSum out;
  out.cutoff = cutoff;
  const long M = static_cast<long>(std::floor(cutoff));
  double sum = 0.0;
  if (n == 1) {
    // Summed from the far end so small terms are not lost.
    for (long m = M; m >= 1; --m) sum += 2.0 * phi(static_cast<double>(m));
    sum += phi(0.0);
  } else {
    const double M2 = cutoff * cutoff;
    for (long m1 = M; m1 >= 0; --m1) {
      for (long m2 = M; m2 >= 0; --m2) {
        const double r2 = static_cast<double>(m1 * m1 + m2 * m2);
        if (r2 > M2) continue;
        const double mult = (m1 == 0 ? 1.0 : 2.0) * (m2 == 0 ? 1.0 : 2.0);
        sum += mult * phi(std::sqrt(r2));
      }
    }
  }
  out.partial = sum;
  out.last_term = phi(cutoff);
  // Each omitted lattice point is dominated by phi(|x| - sqrt(n)/2) on its unit cell.
  const double off = 0.5 * std::sqrt(static_cast<double>(n));
  const double omega = n == 1 ? 2.0 : 2.0 * std::numbers::pi;
  const auto integrand = [&](double r) {
    return omega * std::pow(r, n - 1) * phi(std::max(0.0, r - off));
  };
  out.tail_bound = tail_integral(integrand, std::max(0.0, cutoff - off)) * (1.0 + 1e-8);
  out.value = std::isinf(q_conj) ? phi(0.0) : std::pow(sum, 1.0 / q_conj);
  return out;
}

}  // namespace

double upper_incomplete_gamma(double alpha, double t) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive");
  if (!(t >= 0.0)) throw InvalidArgument("t must be nonnegative");
  if (std::isinf(t)) return 0.0;
  const double Y = std::max(t, 50.0 * std::max(alpha, 1.0));
  double body = 0.0;
  if (t < Y) {
    if (alpha < 1.0) {
      // y = u^{1/alpha} removes the endpoint singularity of y^{alpha-1}.
      const auto f = [alpha](double u) { return std::exp(-std::pow(u, 1.0 / alpha)) / alpha; };
      body = detail::adaptive_gauss(f, std::pow(t, alpha), std::pow(Y, alpha), 1e-14, 0.0, 50).value;
    } else {
      const auto f = [alpha](double y) { return y == 0.0 ? (alpha == 1.0 ? 1.0 : 0.0)
                                                         : std::exp((alpha - 1.0) * std::log(y) - y); };
      // Split at the mode alpha-1 so both panels see a monotone integrand.
      const double mode = std::clamp(alpha - 1.0, t, Y);
      body = detail::adaptive_gauss(f, t, mode, 1e-14, 0.0, 50).value +
             detail::adaptive_gauss(f, mode, Y, 1e-14, 0.0, 50).value;
    }
  }
  return body + asymptotic_tail(alpha, Y);
}

double inverse_g(double alpha, double u) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  const double full = std::tgamma(alpha);
  if (!(u > 0.0) || u > full * (1.0 + 1e-15)) throw InvalidArgument("u must lie in (0, Gamma(alpha)]");
  if (u >= full) return 0.0;
  const double target = std::log(u);
  const auto F = [&](double t) { return std::log(upper_incomplete_gamma(alpha, t)) - target; };
  double lo = 0.0, hi = std::max(1.0, -target);
  while (F(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw NumericalError("inverse_g bracket search failed");
  }
  // Newton on log f (d/dt log f = -t^{a-1} e^{-t} / f) safeguarded by the bracket.
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double ft = upper_incomplete_gamma(alpha, t);
    const double val = std::log(ft) - target;
    if (val > 0.0) lo = t; else hi = t;
    if (std::abs(val) < 1e-14 || hi - lo < 1e-15 * std::max(1.0, t)) break;
    const double dlog = -std::exp((alpha - 1.0) * std::log(t) - t) / ft;
    double next = (t > 0.0 && dlog < 0.0 && std::isfinite(dlog)) ? t - val / dlog : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  return t;
}

double conjugate_exponent(double q) {
  if (!(q >= 1.0)) throw InvalidArgument("q must lie in [1, inf]");
  if (q == 1.0) return kInf;
  if (std::isinf(q)) return 1.0;
  return q / (q - 1.0);
}

double gevrey_delta(double s) {
  if (!(s > 1.0)) throw InvalidArgument("s must exceed 1 (delta = 2 - 2^{1/s} > 0)");
  return 2.0 - std::pow(2.0, 1.0 / s);
}

double constant_E_R(double s, double q, int n, double R) {
  const double delta = gevrey_delta(s);
  if (n < 1) throw InvalidArgument("dimension must be positive");
  if (!(R >= 2.0)) throw InvalidArgument("R must be at least 2");
  const double qc = conjugate_exponent(q);
  if (std::isinf(qc)) return std::exp(-delta * std::pow(R - 2.0, 1.0 / s));
  const double dq = delta * qc;
  const double pref = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n) * s * std::pow(dq, -s * n);
  return pref * upper_incomplete_gamma(s * n, dq * std::pow(R - 2.0, 1.0 / s));
}

double constant_F_R(double s, double q, int n, double R, double calibration) {
  const double qc = conjugate_exponent(q);
  const double e = constant_E_R(s, q, n, R);
  return calibration * (std::isinf(qc) ? e : std::pow(e, 1.0 / qc));
}

double constant_G_RN(int N, double R, double calibration) {
  if (N < 1) throw InvalidArgument("N must be a positive integer");
  if (!(R >= 2.0)) throw InvalidArgument("R must be at least 2");
  return calibration * std::pow(R, -N);
}

LatticeSum constant_c3_loglog(double s, double q_conj, int n, double cutoff) {
  if (!(s > 0.0)) throw InvalidArgument("s must be positive");
  if (cutoff <= 0.0) cutoff = n == 1 ? 1.0e6 : 2000.0;
  const auto phi = [=](double r) { return std::exp(-s * w_star(r) * q_conj); };
  return lattice_sum(phi, q_conj, n, cutoff);
}

LatticeSum constant_c3_gevrey(double s, double q_conj, int n, double cutoff) {
  const double delta = gevrey_delta(s);
  if (cutoff <= 0.0) cutoff = n == 1 ? 1.0e5 : 400.0;
  const auto phi = [=](double r) { return std::exp(-delta * std::pow(r, 1.0 / s) * q_conj); };
  return lattice_sum(phi, q_conj, n, cutoff);
}

double constant_c4(int n) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  return std::exp(2.0 * std::sqrt(static_cast<double>(n)) * analyze_weight().deriv_sup);
}

double choose_R_gevrey(double norm_u, double s, double q, int n) {
  if (!(norm_u > 1.0)) throw InvalidArgument("norm_u must exceed 1 (use R = 3 otherwise)");
  const double delta = gevrey_delta(s);
  const double qc = conjugate_exponent(q);
  if (std::isinf(qc)) return 2.0 + std::pow((1.0 - 1.0 / s) * std::log(norm_u) / delta, s);
  const double sn = s * n;
  // Gamma(sn, y) / Gamma(sn) = norm_u^{q'(1/s - 1)}, solved in log form to stay in range.
  const double log_u = std::lgamma(sn) + qc * (1.0 / s - 1.0) * std::log(norm_u);
  const double y = inverse_g(sn, std::min(std::exp(log_u), std::tgamma(sn)));
  return 2.0 + std::pow(y / (delta * qc), s);
}

double choose_R_loglog(double norm_u, int N) {
  if (!(norm_u > 1.0)) throw InvalidArgument("norm_u must exceed 1 (use R = 3 otherwise)");
  if (N < 1) throw InvalidArgument("N must be a positive integer");
  return 2.0 * std::pow(norm_u, 1.0 / N);
}

Json constants_table() {
  const WeightAnalysis wa = analyze_weight();
  Json t;
  t["weight_analysis"] = {{"t0", wa.t0},
                          {"p0", wa.p0},
                          {"p_argmax", wa.p_argmax},
                          {"s_admissible", wa.s_admissible},
                          {"deriv_sup", wa.deriv_sup}};
  t["c4"] = {{"n1", constant_c4(1)}, {"n2", constant_c4(2)}};
  const auto lattice_json = [](const LatticeSum& l) {
    return Json{{"value", l.value}, {"partial_sum", l.partial}, {"cutoff", l.cutoff},
                {"last_term", l.last_term}, {"tail_bound", l.tail_bound}};
  };
  t["c3_loglog"] = lattice_json(constant_c3_loglog(wa.s_admissible, 2.0, 1));
  t["c3_loglog"]["s"] = wa.s_admissible;
  t["c3_loglog"]["q_conj"] = 2.0;
  t["c3_gevrey"] = lattice_json(constant_c3_gevrey(2.0, 2.0, 1));
  t["c3_gevrey"]["s"] = 2.0;
  t["c3_gevrey"]["q_conj"] = 2.0;
  Json er = Json::array();
  for (int R = 2; R <= 10; ++R)
    er.push_back({{"R", R}, {"E_R", constant_E_R(2.0, 2.0, 1, R)}, {"F_R_over_F_2",
                  constant_F_R(2.0, 2.0, 1, R) / constant_F_R(2.0, 2.0, 1, 2.0)}});
  t["E_R"] = {{"s", 2.0}, {"q", 2.0}, {"n", 1}, {"values", er}};
  Json cr = Json::array();
  for (double u : {1.5, 10.0, 100.0, 1e4, 1e8})
    cr.push_back({{"norm_u", u}, {"R_gevrey", choose_R_gevrey(u, 2.0, 2.0, 1)}, {"R_loglog", choose_R_loglog(u, 3)}});
  t["choose_R"] = {{"gevrey", {{"s", 2.0}, {"q", 2.0}, {"n", 1}}}, {"loglog", {{"N", 3}}}, {"values", cr}};
  Json g = Json::array();
  for (double R : {2.0, 4.0, 8.0, 16.0}) g.push_back({{"R", R}, {"G_RN", constant_G_RN(3, R)}});
  t["G_RN"] = {{"N", 3}, {"calibration", 1.0}, {"values", g}};
  return t;
}

}  // namespace subexp
