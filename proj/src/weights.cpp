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

#include "subexp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <vector>

#include "parallel.hpp"
#include "rng.hpp"

namespace subexp {

namespace {

constexpr double kE = std::numbers::e;
const double kExp2E = std::exp(2.0 * kE);

double euclidean(std::span<const double> k) {
  double r2 = 0.0;
  for (double v : k) r2 += v * v;
  return std::sqrt(r2);
}

}  // namespace

void WeightSpec::validate() const {
  if (variant == Variant::Gevrey && !(s > 0.0))
    throw InvalidArgument("Gevrey weight requires s > 0");
  if (variant == Variant::Exponential && !(lambda >= 0.0))
    throw InvalidArgument("exponential weight requires lambda >= 0");
}

WeightSpec parse_weight(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  double value = 0.0;
  if (colon != std::string::npos) {
    const std::string arg = text.substr(colon + 1);
    char* end = nullptr;
    value = std::strtod(arg.c_str(), &end);
    if (arg.empty() || end == arg.c_str() || *end != '\0')
      throw InvalidArgument("bad weight parameter in '" + text + "'");
  }
  WeightSpec w;
  if (name == "poly" || name == "polynomial") {
    w = WeightSpec::polynomial(value);
  } else if (name == "gevrey") {
    w = WeightSpec::gevrey(value);
  } else if (name == "loglog") {
    w = WeightSpec::loglog();
  } else if (name == "exp" || name == "exponential") {
    w = WeightSpec::exponential(value);
  } else {
    throw InvalidArgument("unknown weight '" + text + "'");
  }
  w.validate();
  return w;
}

std::string to_string(const WeightSpec& w) {
  std::ostringstream os;
  os.precision(17);
  switch (w.variant) {
    case WeightSpec::Variant::Polynomial: os << "poly:" << w.s; break;
    case WeightSpec::Variant::Gevrey: os << "gevrey:" << w.s; break;
    case WeightSpec::Variant::LogLog: os << "loglog"; break;
    case WeightSpec::Variant::Exponential: os << "exp:" << w.lambda; break;
  }
  return os.str();
}

Json to_json(const WeightSpec& w) {
  Json j;
  switch (w.variant) {
    case WeightSpec::Variant::Polynomial: j["variant"] = "polynomial"; j["s"] = w.s; break;
    case WeightSpec::Variant::Gevrey: j["variant"] = "gevrey"; j["s"] = w.s; break;
    case WeightSpec::Variant::LogLog: j["variant"] = "loglog"; break;
    case WeightSpec::Variant::Exponential: j["variant"] = "exponential"; j["lambda"] = w.lambda; break;
  }
  return j;
}

double bracket_star(double t) { return std::sqrt(kExp2E + t * t); }

double w_star(double t, int order) {
  const double b2 = kExp2E + t * t;
  const double lb = 0.5 * std::log(b2);
  const double llb = std::log(lb);
  switch (order) {
    case 0:
      return lb * llb;
    case 1:
      return t / b2 * (1.0 + llb);
    case 2:
      return (1.0 + llb) / b2 + t * t / (b2 * b2) * (1.0 / lb - 2.0 - 2.0 * llb);
    default:
      throw InvalidArgument("w_star order must be 0, 1 or 2");
  }
}

AuxPQ aux_p_q(double t) {
  if (!(t > 0.0)) throw InvalidArgument("aux_p_q requires t > 0");
  const double w = w_star(t, 0);
  return {t * w_star(t, 1) / w, t / w};
}

WeightAnalysis analyze_weight() {
  double lo = 1.0, hi = 100.0;
  double flo = w_star(lo, 2);
  if (!(flo > 0.0) || !(w_star(hi, 2) < 0.0))
    throw NumericalError("w_*'' has no sign change on [1, 100]");
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double fm = w_star(mid, 2);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double t0 = 0.5 * (lo + hi);

  // Coarse log-spaced scan of p, then golden-section on the bracketing cells.
  const auto p = [](double t) { return aux_p_q(t).p; };
  constexpr int kScan = 4000;
  const double log_lo = std::log(1e-6), log_hi = std::log(1e6);
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i <= kScan; ++i) {
    const double v = p(std::exp(log_lo + (log_hi - log_lo) * i / kScan));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = std::exp(log_lo + (log_hi - log_lo) * std::max(best - 1, 0) / kScan);
  double b = std::exp(log_lo + (log_hi - log_lo) * std::min(best + 1, kScan) / kScan);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = p(c), fd = p(d);
  while (b - a > 1e-10 * b) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = p(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = p(d);
    }
  }
  const double t_max = 0.5 * (a + b);
  const double p0 = std::max({p(t_max), fc, fd});

  return {t0, p0, t_max, 1.0 - p0, w_star(t0, 1)};
}

double log_weight_radial(const WeightSpec& spec, double r) {
  r = std::abs(r);
  switch (spec.variant) {
    case WeightSpec::Variant::Polynomial:
      return 0.5 * spec.s * std::log1p(r * r);
    case WeightSpec::Variant::Gevrey:
      if (!(spec.s > 0.0)) throw InvalidArgument("Gevrey weight requires s > 0");
      return std::pow(r, 1.0 / spec.s);
    case WeightSpec::Variant::LogLog:
      return w_star(r, 0);
    case WeightSpec::Variant::Exponential:
      return spec.lambda * r * std::numbers::ln2;
  }
  return 0.0;
}

double weight_radial(const WeightSpec& spec, double r) {
  if (spec.variant == WeightSpec::Variant::Polynomial) return std::pow(1.0 + r * r, 0.5 * spec.s);
  return std::exp(log_weight_radial(spec, r));
}

double weight_eval(const WeightSpec& spec, std::span<const double> k) {
  return weight_radial(spec, euclidean(k));
}

double log_weight_eval(const WeightSpec& spec, std::span<const double> k) {
  return log_weight_radial(spec, euclidean(k));
}

VerificationReport verify_gevrey_inequality(const GevreyDomain& dom) {
  if (!(dom.s > 1.0))
    throw InvalidArgument("Gevrey weight inequality is only claimed for s > 1");
  if (dom.n != 1 && dom.n != 2) throw InvalidArgument("dimension must be 1 or 2");
  if (dom.radius < 0) throw InvalidArgument("radius must be nonnegative");

  const double delta = 2.0 - std::pow(2.0, 1.0 / dom.s);
  const int K = dom.radius;
  const int side = 2 * K + 1;

  VerificationReport report;
  report.kind = "gevrey";
  report.params = {{"s", dom.s}, {"delta", delta}, {"n", dom.n}};
  report.domain = "k, l in Z^" + std::to_string(dom.n) + ", |k|_inf, |l|_inf <= " + std::to_string(K);
  report.tolerance = kLogDomainTolerance;

  const auto chunks = detail::chunk_count(static_cast<std::size_t>(side));
  std::vector<VerificationReport> parts(chunks);

  if (dom.n == 1) {
    // |.|^{1/s} at integer distances 0..2K.
    std::vector<double> pw(2 * K + 1);
    for (int d = 0; d <= 2 * K; ++d) pw[d] = std::pow(static_cast<double>(d), 1.0 / dom.s);
    detail::parallel_chunks(side, [&](std::size_t b, std::size_t e, std::size_t c) {
      auto& part = parts[c];
      for (std::size_t ik = b; ik < e; ++ik) {
        const int k = static_cast<int>(ik) - K;
        for (int l = -K; l <= K; ++l) {
          const double a = pw[std::abs(l)], bb = pw[std::abs(l - k)];
          const double margin = a + bb - delta * std::min(a, bb) - pw[std::abs(k)];
          ++part.points_checked;
          if (margin < part.min_margin) {
            part.min_margin = margin;
            part.worst_point = {double(k), double(l)};
          }
        }
      }
    });
  } else {
    // Squared norms reach 2 (2K)^2.
    const int max_d2 = 2 * (2 * K) * (2 * K);
    std::vector<double> pw(max_d2 + 1);
    for (int d2 = 0; d2 <= max_d2; ++d2) pw[d2] = std::pow(static_cast<double>(d2), 0.5 / dom.s);
    detail::parallel_chunks(side, [&](std::size_t b, std::size_t e, std::size_t c) {
      auto& part = parts[c];
      for (std::size_t ik1 = b; ik1 < e; ++ik1) {
        const int k1 = static_cast<int>(ik1) - K;
        for (int k2 = -K; k2 <= K; ++k2) {
          const double wk = pw[k1 * k1 + k2 * k2];
          for (int l1 = -K; l1 <= K; ++l1) {
            const int d1 = l1 - k1;
            for (int l2 = -K; l2 <= K; ++l2) {
              const int d2 = l2 - k2;
              const double a = pw[l1 * l1 + l2 * l2], bb = pw[d1 * d1 + d2 * d2];
              const double margin = a + bb - delta * std::min(a, bb) - wk;
              if (margin < part.min_margin) {
                part.min_margin = margin;
                part.worst_point = {double(k1), double(k2), double(l1), double(l2)};
              }
            }
          }
          part.points_checked += static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
        }
      }
    });
  }
  for (const auto& p : parts) report.merge(p);
  return report.finalize();
}

VerificationReport verify_loglog_inequality(const LogLogDomain& dom) {
  const WeightAnalysis wa = analyze_weight();
  const double s = dom.s == 0.0 ? wa.s_admissible : dom.s;
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("loglog inequality requires 0 < s < 1");
  if (!(dom.grid_step > 0.0) || dom.grid_max < 0.0) throw InvalidArgument("bad grid");

  VerificationReport report;
  report.kind = "loglog";
  report.params = {{"s", s}, {"p0", wa.p0}, {"s_max_claimed", wa.s_admissible}};
  {
    std::ostringstream os;
    os << "grid [0," << dom.grid_max << "]^2 step " << dom.grid_step << " + " << dom.random_points
       << " uniform points in [0," << dom.random_max << "]^2 (seed " << dom.seed << ")";
    report.domain = os.str();
  }
  report.tolerance = kLogDomainTolerance;

  const auto m = static_cast<std::size_t>(std::floor(dom.grid_max / dom.grid_step + 1e-9)) + 1;
  std::vector<double> wt(m);
  for (std::size_t i = 0; i < m; ++i) wt[i] = w_star(static_cast<double>(i) * dom.grid_step);

  std::vector<VerificationReport> parts(detail::chunk_count(m));
  detail::parallel_chunks(m, [&](std::size_t b, std::size_t e, std::size_t c) {
    auto& part = parts[c];
    for (std::size_t i = b; i < e; ++i) {
      const double wx = wt[i];
      for (std::size_t j = 0; j < m; ++j) {
        const double wy = wt[j];
        const double wd = wt[i > j ? i - j : j - i];
        const double margin = wy + wd - s * std::min(wy, wd) - wx;
        if (margin < part.min_margin) {
          part.min_margin = margin;
          part.worst_point = {static_cast<double>(i) * dom.grid_step, static_cast<double>(j) * dom.grid_step};
        }
      }
      part.points_checked += m;
    }
  });
  for (const auto& p : parts) report.merge(p);

  detail::SplitMix64 rng(dom.seed);
  for (std::size_t r = 0; r < dom.random_points; ++r) {
    const double x = rng.uniform() * dom.random_max;
    const double y = rng.uniform() * dom.random_max;
    const double wy = w_star(y), wd = w_star(std::abs(x - y));
    report.observe(wy + wd - s * std::min(wy, wd) - w_star(x), {x, y});
  }
  return report.finalize();
}

VerificationReport verify_elementary_inequality(const ElementaryDomain& dom) {
  if (!(dom.eps > 0.0 && dom.eps < 1.0)) throw InvalidArgument("elementary inequality requires 0 < eps < 1");
  if (dom.points < 2) throw InvalidArgument("need at least two sample points");
  VerificationReport report;
  report.kind = "elementary";
  report.params = {{"eps", dom.eps}};
  report.domain = "xi in [0," + std::to_string(dom.xi_max) + "], " + std::to_string(dom.points) + " points";
  report.tolerance = kLogDomainTolerance;
  for (std::size_t i = 0; i < dom.points; ++i) {
    const double xi = dom.xi_max * static_cast<double>(i) / static_cast<double>(dom.points - 1);
    const double lb = std::log(bracket_star(xi));
    const double rhs = (1.0 + dom.eps) * lb * (dom.eps + std::log(lb));
    report.observe(rhs - w_star(std::pow(xi, 1.0 + dom.eps)), {xi});
  }
  return report.finalize();
}

VerificationReport verify_weight_inequality(const std::string& kind, const Json& params) {
  if (kind == "gevrey") {
    GevreyDomain d;
    d.s = params.value("s", d.s);
    d.n = params.value("n", d.n);
    d.radius = params.value("radius", d.radius);
    return verify_gevrey_inequality(d);
  }
  if (kind == "loglog") {
    LogLogDomain d;
    d.s = params.value("s", d.s);
    d.grid_max = params.value("grid_max", d.grid_max);
    d.grid_step = params.value("grid_step", d.grid_step);
    d.random_points = params.value("random_points", d.random_points);
    d.random_max = params.value("random_max", d.random_max);
    d.seed = params.value("seed", d.seed);
    return verify_loglog_inequality(d);
  }
  if (kind == "elementary") {
    ElementaryDomain d;
    d.eps = params.value("eps", d.eps);
    d.xi_max = params.value("xi_max", d.xi_max);
    d.points = params.value("points", d.points);
    return verify_elementary_inequality(d);
  }
  throw InvalidArgument("unknown inequality kind '" + kind + "'");
}

}  // namespace subexp
