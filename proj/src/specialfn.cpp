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

#include "subexp/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "quadrature.hpp"
#include "subexp/weights.hpp"

namespace subexp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

double psi(double mu, double t) { return t > 0.0 ? std::exp(-std::pow(t, mu)) : 0.0; }

double log_sum_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// Double-exponential nodes for int_0^{1/2} phi_mu(1/2 + tau) cos(xi tau) dtau with step 2^{-level}.
struct BumpRule {
  std::vector<double> tau, weight;  // weight already includes phi_mu(1/2 + tau) and the Jacobian
};

const BumpRule& bump_rule(double mu, int level) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, BumpRule> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(mu, level);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  BumpRule rule;
  const double h = std::ldexp(1.0, -level);
  const int K = static_cast<int>(std::ceil(6.0 / h));
  for (int i = -K; i <= K; ++i) {
    const double x = i * h;
    const double u = 0.5 * kPi * std::sinh(x);
    // 1/2 - tau = 0.5/(1 + e^{2u}) keeps full relative precision next to the endpoint.
    const double right = 0.5 / (1.0 + std::exp(2.0 * u));
    const double tau = 0.5 - right;
    const double cu = std::cosh(u);
    const double jac = 0.25 * 0.5 * kPi * std::cosh(x) / (cu * cu);
    const double w = h * jac * psi(mu, right) * psi(mu, 1.0 - right);
    if (w == 0.0 || !std::isfinite(w)) continue;
    rule.tau.push_back(tau);
    rule.weight.push_back(w);
  }
  return cache.emplace(key, std::move(rule)).first->second;
}

double sinc(double x) {
  const double a = std::abs(x);
  if (a < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

// prod_{j=1}^J sinc(2^{-j} xi).
double up_product(double xi, int J) {
  double p = 1.0;
  double x = xi;
  for (int j = 1; j <= J; ++j) {
    x *= 0.5;
    // Factors with |x| < 1e-9 round to exactly 1.
    if (std::abs(x) < 1e-9) break;
    p *= sinc(x);
    if (p == 0.0) break;
  }
  return p;
}

int auto_level(double xi) {
  const double a = std::abs(xi);
  if (a <= 1e6) return 60;
  return static_cast<int>(std::ceil(std::log2(a / 1e-8)));
}

// Convolution table of up on [0, 2] with spacing 2^{-14}.
struct UpTable {
  static constexpr int kLevel = 14;
  double h = std::ldexp(1.0, -kLevel);
  double shift = 0.0;
  std::vector<double> v;
};

const UpTable& up_table() {
  static const UpTable table = [] {
    UpTable t;
    const int one = 1 << UpTable::kLevel;
    const int size = 2 * one + 2;
    std::vector<double> a(size, 0.0);
    for (int i = 0; i <= one; ++i) a[i] = 1.0;
    a[0] = a[one] = 0.5;
    std::vector<double> prefix(size + 1);
    // Factor j is the unit-mass box 2^j X(2^j x) of width m = 2^{14-j} cells, discretized by the trapezoid rule.
    for (int j = 1; j <= UpTable::kLevel; ++j) {
      const int m = 1 << (UpTable::kLevel - j);
      prefix[0] = 0.0;
      for (int i = 0; i < size; ++i) prefix[i + 1] = prefix[i] + a[i];
      std::vector<double> b(size, 0.0);
      for (int i = 0; i < size; ++i) {
        const int lo = std::max(0, i - m);
        double s = prefix[i + 1] - prefix[lo];
        s -= 0.5 * a[i];
        if (i - m >= 0) s -= 0.5 * a[i - m];
        b[i] = s / m;
      }
      a.swap(b);
    }
    // Boxes narrower than the grid act as shifts by their centers 2^{-j-1}, j = 15..20.
    for (int j = UpTable::kLevel + 1; j <= 20; ++j) t.shift += std::ldexp(1.0, -j - 1);
    t.v = std::move(a);
    return t;
  }();
  return table;
}

// Gauss-Legendre nodes on [0, 1024] aligned with the zeros 2 pi k of the product.
struct UpFourierRule {
  std::vector<double> xi, weight, P;
};

const UpFourierRule& up_fourier_rule() {
  static const UpFourierRule rule = [] {
    UpFourierRule r;
    const auto& gl = detail::gauss_legendre(24);
    const double limit = 1024.0;
    const double width = 2.0 * kPi;
    for (double a = 0.0; a < limit; a += width) {
      const double b = std::min(a + width, limit);
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
        r.xi.push_back(x);
        r.weight.push_back(0.5 * (b - a) * gl.weights[i]);
        r.P.push_back(up_product(x, 60));
      }
    }
    return r;
  }();
  return rule;
}

}  // namespace

double gevrey_bump(double mu, double t) {
  if (!(mu < 0.0)) throw InvalidArgument("gevrey_bump requires mu < 0");
  return psi(mu, 1.0 - t) * psi(mu, t);
}

std::complex<double> gevrey_bump_fourier(double mu, double xi) {
  if (!(mu < 0.0)) throw InvalidArgument("gevrey_bump requires mu < 0");
  const double a = std::abs(xi);
  if (a > 1e5) throw NumericalError("bump transform: |xi| beyond the quadrature range (1e5)");
  // Keep the phase step xi * tau'(x) * h below 1/4; tau' <= pi/8.
  int level = 7;
  while (a * kPi / 8.0 * std::ldexp(1.0, -level) > 0.25) ++level;
  const BumpRule& rule = bump_rule(mu, level);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.tau.size(); ++i) sum += rule.weight[i] * std::cos(xi * rule.tau[i]);
  return std::polar(2.0 * sum * kInvSqrt2Pi, -0.5 * xi);
}

DecayFit gevrey_bump_decay(double mu, const std::vector<double>& xi_list) {
  if (!(mu < 0.0)) throw InvalidArgument("gevrey_bump requires mu < 0");
  DecayFit fit;
  fit.s = 1.0 - 1.0 / mu;
  std::vector<std::pair<double, double>> pts;
  for (double xi : xi_list) {
    const double la = std::log(std::abs(gevrey_bump_fourier(mu, xi)));
    fit.xi.push_back(xi);
    fit.log_abs.push_back(la);
    if (std::isfinite(la)) pts.emplace_back(std::pow(std::abs(xi), 1.0 / fit.s), la);
  }
  if (pts.size() < 2) return fit;
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& q = hull.back();
      const double cross = (q.first - o.first) * (p.second - o.second) - (q.second - o.second) * (p.first - o.first);
      if (cross >= 0.0) hull.pop_back(); else break;
    }
    hull.push_back(p);
  }
  double mean = 0.0;
  for (const auto& p : pts) mean += p.first;
  mean /= static_cast<double>(pts.size());
  double slope = 0.0;
  bool found = false;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    if (hull[i].first <= mean && mean <= hull[i + 1].first && hull[i + 1].first > hull[i].first) {
      slope = (hull[i + 1].second - hull[i].second) / (hull[i + 1].first - hull[i].first);
      found = true;
      break;
    }
  }
  if (!found || !(slope < 0.0)) return fit;
  fit.eps = -slope;
  double log_c = -kInf;
  for (const auto& p : pts) log_c = std::max(log_c, p.second + fit.eps * p.first);
  fit.c = std::exp(log_c);
  fit.max_violation = -kInf;
  for (const auto& p : pts) fit.max_violation = std::max(fit.max_violation, p.second - (log_c - fit.eps * p.first));
  fit.ok = true;
  return fit;
}

UpFourier up_fourier(double xi, int J) {
  UpFourier out;
  out.J = J > 0 ? J : auto_level(xi);
  const double P = up_product(xi, out.J);
  out.value = std::polar(kInvSqrt2Pi, -xi) * P;
  // Omitted factors obey |1 - sinc x| <= x^2/6 and sinc x >= 1 - x^2/6; sum_{j>J} (2^{-j} xi)^2 = xi^2 4^{-J}/3.
  const double tail = xi * xi * std::ldexp(1.0, -2 * out.J) / 3.0 / 6.0;
  out.rel_error_bound = tail < 0.5 ? std::expm1(tail / (1.0 - tail)) : kInf;
  return out;
}

double up_eval(double x, UpMethod method) {
  if (method == UpMethod::Convolution) {
    if (x <= 0.0 || x >= 2.0) return 0.0;
    const UpTable& t = up_table();
    const double pos = (x - t.shift) / t.h;
    if (pos <= 0.0) return 0.0;
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= t.v.size()) return 0.0;
    const double frac = pos - static_cast<double>(i);
    return (1.0 - frac) * t.v[i] + frac * t.v[i + 1];
  }
  const UpFourierRule& r = up_fourier_rule();
  double sum = 0.0;
  for (std::size_t i = 0; i < r.xi.size(); ++i) sum += r.weight[i] * r.P[i] * std::cos(r.xi[i] * (x - 1.0));
  return sum / kPi;
}

double up_derivative(double x) {
  const UpFourierRule& r = up_fourier_rule();
  double sum = 0.0;
  for (std::size_t i = 0; i < r.xi.size(); ++i)
    sum += r.weight[i] * r.P[i] * r.xi[i] * std::sin(r.xi[i] * (x - 1.0));
  return -sum / kPi;
}

double up_decay_bound(double xi) {
  const double a = std::abs(xi);
  return kInvSqrt2Pi * std::pow(a, 1.0 - std::log2(a) / 2.0);
}

namespace {

std::shared_ptr<const Density::Table> build_table(const Density& d, double panel, int order) {
  auto t = std::make_shared<Density::Table>();
  const auto& gl = detail::gauss_legendre(order);
  const auto add_panel = [&](double a, double b) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      t->xi.push_back(0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i]);
      t->weight.push_back(0.5 * (b - a) * gl.weights[i]);
    }
  };
  // The regime exponents behave like xi^{1/s} log xi at the origin, so the first panel is graded
  // geometrically towards 0. Nodes stay in increasing order.
  const double first = std::min(panel, d.direct_limit);
  constexpr int kGraded = 40;
  add_panel(0.0, std::ldexp(first, -kGraded));
  for (int j = kGraded; j >= 1; --j) add_panel(std::ldexp(first, -j), std::ldexp(first, 1 - j));
  for (double a = first; a < d.direct_limit; a += panel) add_panel(a, std::min(a + panel, d.direct_limit));
  t->g.resize(t->xi.size());
  for (std::size_t i = 0; i < t->xi.size(); ++i) t->g[i] = d.eval(t->xi[i]);
  return t;
}

double parse_number(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0') throw InvalidArgument("bad parameter for " + what + ": '" + text + "'");
  return v;
}

}  // namespace

Density make_density(const std::string& spec) {
  static std::mutex mutex;
  static std::map<std::string, Density> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(spec);
    if (it != cache.end()) return it->second;
  }
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  Density d;
  d.name = spec;
  double panel = 1.0;
  if (name == "gevrey_bump") {
    const double mu = parse_number(arg, name);
    if (!(mu < 0.0)) throw InvalidArgument("gevrey_bump density requires mu < 0");
    d.eval = [mu](double xi) { return gevrey_bump_fourier(mu, xi); };
    const double f0 = std::abs(gevrey_bump_fourier(mu, 0.0));
    // Direct range ends where |F| drops below 1e-12 |F(0)| on a dyadic window.
    double limit = 16.0;
    for (; limit < 1024.0; limit *= 2.0) {
      double m = 0.0;
      for (int i = 0; i <= 64; ++i) m = std::max(m, std::abs(gevrey_bump_fourier(mu, limit * (1.0 + i / 64.0))));
      if (m < 1e-12 * f0) break;
    }
    d.direct_limit = limit;
    std::vector<double> xs;
    for (int i = 0; i <= 400; ++i) xs.push_back(1.0 + (limit - 1.0) * i / 400.0);
    const DecayFit fit = gevrey_bump_decay(mu, xs);
    if (!fit.ok) throw NumericalError("no decay envelope fits the bump transform");
    const double lc = std::log(fit.c), eps = fit.eps, s = fit.s;
    d.log_envelope = [lc, eps, s](double xi) { return lc - eps * std::pow(xi, 1.0 / s); };
    d.params = {{"mu", mu}, {"s", s}, {"envelope_c", fit.c}, {"envelope_eps", eps}};
    panel = 0.5;
  } else if (name == "up") {
    if (!arg.empty()) throw InvalidArgument("up density takes no parameter");
    d.eval = [](double xi) { return up_fourier(xi).value; };
    d.log_envelope = [](double xi) { return std::log(up_decay_bound(std::max(xi, 4.0))); };
    d.direct_limit = std::ldexp(1.0, 18);
    panel = 2.0 * kPi;
  } else if (name == "rational_decay") {
    const double k = parse_number(arg, name);
    if (!(k > 0.0)) throw InvalidArgument("rational_decay requires k > 0");
    d.eval = [k](double xi) { return std::complex<double>(std::pow(1.0 + xi * xi, -k) * std::sin(xi), 0.0); };
    d.log_envelope = [k](double xi) {
      // Written so that xi^2 never overflows.
      return xi <= 1.0 ? -k * std::log1p(xi * xi) : -k * (2.0 * std::log(xi) + std::log1p(1.0 / (xi * xi)));
    };
    d.direct_limit = std::ldexp(1.0, 18);
    d.odd = true;
    d.params = {{"k", k}};
    panel = kPi;
  } else if (name == "gaussian") {
    const double a = parse_number(arg, name);
    if (!(a > 0.0)) throw InvalidArgument("gaussian density requires a > 0");
    const double pre = 1.0 / std::sqrt(2.0 * a);
    d.eval = [a, pre](double xi) { return std::complex<double>(pre * std::exp(-xi * xi / (4.0 * a)), 0.0); };
    d.log_envelope = [a, pre](double xi) { return std::log(pre) - xi * xi / (4.0 * a); };
    d.direct_limit = 64.0 * std::sqrt(a);
    d.params = {{"a", a}};
    panel = 0.5;
  } else {
    throw InvalidArgument("unknown density '" + spec + "'");
  }
  d.table = build_table(d, panel, 12);
  std::lock_guard lock(mutex);
  return cache.emplace(spec, d).first->second;
}

double measure_exponent(double log_xi, double lambda, const MeasureParams& params) {
  if (params.regime == "gevrey") {
    return lambda * std::exp(log_xi / params.s) * log_xi;
  }
  // theta * w_*(t) with log t = log lambda + (1 + eps) log xi, kept in log form for huge t.
  const double lt = std::log(lambda) + (1.0 + params.eps) * log_xi;
  const double lb = lt > 30.0 ? lt + 0.5 * std::log1p(std::exp(2.0 * std::numbers::e - 2.0 * lt))
                              : std::log(bracket_star(std::exp(lt)));
  return params.theta * lb * std::log(lb);
}

MeasureResult measure_L1(const Density& g, double lambda, const MeasureParams& params) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (params.regime != "gevrey" && params.regime != "loglog") throw InvalidArgument("regime must be gevrey or loglog");
  if (params.regime == "gevrey" && !(params.s > 0.0)) throw InvalidArgument("gevrey regime requires s > 0");
  if (params.regime == "loglog" && !(params.theta > 0.0 && params.eps > 0.0 && params.eps < 1.0))
    throw InvalidArgument("loglog regime requires theta > 0 and 0 < eps < 1");
  if (!g.table) throw InvalidArgument("density has no quadrature table");

  MeasureResult out;
  constexpr int kBlocks = 1000;
  const auto& t = *g.table;
  const auto& gl = detail::gauss_legendre(32);
  std::size_t node = 0;
  std::complex<double> moment{};
  double total = -kInf;

  // Envelope quadrature in v = log xi over [a, b] (xi >= a > 0); returns the log of the integral.
  const auto envelope_block = [&](double a, double b, bool with_weight) {
    double acc = -kInf;
    const double va = std::log(a), vb = std::log(b);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double v = 0.5 * (va + vb) + 0.5 * (vb - va) * gl.nodes[i];
      const double w = 0.5 * (vb - va) * gl.weights[i];
      const double e = with_weight ? measure_exponent(v, lambda, params) : 0.0;
      acc = log_sum_exp(acc, e + g.log_envelope(std::exp(v)) + v + std::log(w));
    }
    return acc;
  };

  double moment_tail = -kInf;
  for (int k = 0; k <= kBlocks; ++k) {
    const double lo = k == 0 ? 0.0 : std::ldexp(1.0, k - 1);
    const double hi = std::ldexp(1.0, k);
    double block = -kInf;
    for (; node < t.xi.size() && t.xi[node] < hi; ++node) {
      const double a = std::abs(t.g[node]);
      if (a == 0.0) continue;
      const double xi = t.xi[node];
      const double e = xi > 0.0 ? measure_exponent(std::log(xi), lambda, params) : 0.0;
      block = log_sum_exp(block, e + std::log(a) + std::log(t.weight[node]));
      moment += t.weight[node] * (g.odd ? std::complex<double>{} : t.g[node] + std::conj(t.g[node]));
    }
    if (hi > g.direct_limit) {
      const double a = std::max(lo, g.direct_limit);
      if (a > 0.0) {
        block = log_sum_exp(block, envelope_block(a, hi, true));
        moment_tail = log_sum_exp(moment_tail, envelope_block(a, hi, false));
      }
    }
    // |g| is even: the negative half-line doubles each block.
    block += std::log(2.0);
    out.block_log.push_back(block);
    total = log_sum_exp(total, block);
  }
  out.blocks = static_cast<int>(out.block_log.size());
  out.log_value = total;
  out.value = std::exp(total);
  out.moment = moment;
  out.moment_tail_bound = moment_tail == -kInf ? 0.0 : 2.0 * std::exp(moment_tail);

  // Cauchy criterion: the last hundred dyadic blocks must be negligible and decreasing.
  double tail = -kInf;
  for (int k = kBlocks - 100; k <= kBlocks; ++k) tail = log_sum_exp(tail, out.block_log[k]);
  const bool increasing = out.block_log[kBlocks] > out.block_log[kBlocks - 1];
  out.divergent = !std::isfinite(total) || tail >= total - 30.0 || increasing;
  for (int k = 0; k <= kBlocks; ++k)
    if (out.block_log[k] >= total - 40.0) out.xi_converged = std::ldexp(1.0, k);
  if (out.divergent) {
    out.value = kInf;
  }
  return out;
}

double density_quotient(const Density& g, double xi, const MeasureParams& params) {
  if (!(xi > 1.0)) throw InvalidArgument("density quotient needs xi > 1");
  const double num = params.regime == "gevrey" ? std::pow(xi, 1.0 / params.s) * std::log(xi) : w_star(xi);
  double log_g;
  if (xi * std::numbers::sqrt2 <= g.direct_limit) {
    double m = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = xi * std::pow(2.0, -0.5 + i / 1000.0);
      m = std::max(m, std::abs(g.eval(x)));
    }
    log_g = std::log(m);
  } else {
    log_g = g.log_envelope(xi);
  }
  return std::abs(num / log_g);
}

}  // namespace subexp
