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

#include "subexp/superpose.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "subexp/specialfn.hpp"
#include "subexp/weights.hpp"

namespace subexp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::array<double, 2> frequency(const SampledFunction& f, std::size_t idx) {
  std::array<double, 2> xi{f.xi(Spectrum::signed_index(static_cast<int>(idx % f.N), f.N)), 0.0};
  if (f.n == 2) xi[1] = f.xi(Spectrum::signed_index(static_cast<int>(idx / f.N), f.N));
  return xi;
}

void require_real(const SampledFunction& u, const char* what) {
  double scale = 0.0;
  for (const auto& v : u.values) scale = std::max(scale, std::abs(v));
  if (!u.is_real(1e-12 * std::max(scale, 1.0)))
    throw InvalidArgument(std::string(what) + " requires a real-valued function");
}

void require_open_p(const NormParams& params) {
  if (!(params.p > 1.0) || std::isinf(params.p))
    throw InvalidArgument("superposition checks require 1 < p < inf");
}

SampledFunction expi_minus_one(const SampledFunction& u) {
  SampledFunction out = u;
  out.kind = "exp_minus_one";
  for (auto& v : out.values) {
    const double t = v.real();
    // e^{it} - 1 = -2 sin^2(t/2) + i sin t, without cancellation for small t.
    const double h = std::sin(0.5 * t);
    v = {-2.0 * h * h, std::sin(t)};
  }
  return out;
}

}  // namespace

SampledFunction fourier_multiplier(const SampledFunction& f, const Symbol& phi) {
  Spectrum s = spectrum(f);
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    if (s.coeffs[i] == std::complex<double>{}) continue;
    const auto xi = frequency(f, i);
    s.coeffs[i] *= phi(std::span<const double>(xi.data(), f.n));
  }
  SampledFunction out = from_spectrum(s, f);
  out.kind = "multiplier";
  return out;
}

PhaseSplit phase_split(const SampledFunction& u, double R) {
  require_real(u, "phase_split");
  if (!(R >= 2.0)) throw InvalidArgument("phase_split requires R >= 2");
  const Spectrum s = spectrum(u);
  const std::size_t parts = std::size_t{1} << u.n;
  Spectrum s0{s.n, s.L, s.N, std::vector<cplx>(s.coeffs.size())};
  std::vector<Spectrum> se(parts, s0);
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    const auto xi = frequency(u, i);
    bool inside = true;
    std::size_t eps = 0;
    for (int j = 0; j < u.n; ++j) {
      if (std::abs(xi[j]) > R) inside = false;
      if (xi[j] < 0.0) eps |= std::size_t{1} << j;
    }
    if (inside) {
      s0.coeffs[i] = s.coeffs[i];
    } else {
      se[eps].coeffs[i] = s.coeffs[i];
    }
  }
  PhaseSplit out;
  out.R = R;
  out.u0 = from_spectrum(s0, u);
  out.u0.kind = "phase_split_u0";
  for (std::size_t e = 0; e < parts; ++e) {
    out.parts.push_back(from_spectrum(se[e], u));
    out.parts.back().kind = "phase_split_eps" + std::to_string(e);
  }
  return out;
}

double split_residual(const SampledFunction& u, const PhaseSplit& split) {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cplx sum = split.u0.values[i];
    for (const auto& p : split.parts) sum += p.values[i];
    worst = std::max(worst, std::abs(u.values[i] - sum));
  }
  return worst;
}

double product_identity_check(const std::vector<std::complex<double>>& a) {
  const std::size_t N = a.size();
  if (N == 0 || N > 20) throw InvalidArgument("product identity needs 1 <= N <= 20");
  std::complex<double> lhs = 1.0;
  for (const auto& v : a) lhs *= v;
  lhs -= 1.0;
  std::complex<double> rhs{};
  for (std::uint32_t mask = 1; mask < (1u << N); ++mask) {
    std::complex<double> term = 1.0;
    for (std::size_t j = 0; j < N; ++j)
      if (mask & (1u << j)) term *= a[j] - 1.0;
    rhs += term;
  }
  return std::abs(lhs - rhs);
}

SampledFunction upsample(const SampledFunction& u, int factor) {
  if (factor < 1 || (factor & (factor - 1)) != 0) throw InvalidArgument("upsampling factor must be a power of two");
  if (factor == 1) return u;
  const Spectrum s = spectrum(u);
  const int N = u.N, M = u.N * factor;
  SampledFunction fine = make_function(u.n, u.L, M);
  fine.kind = u.kind;
  fine.seed = u.seed;
  Spectrum t{u.n, u.L, M, std::vector<cplx>(fine.size())};
  const auto place = [&](int m1, int m2, cplx c) {
    const std::size_t idx = static_cast<std::size_t>((m1 + M) % M) +
                            (u.n == 2 ? static_cast<std::size_t>((m2 + M) % M) * M : 0);
    t.coeffs[idx] += c;
  };
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    const int m1 = Spectrum::signed_index(static_cast<int>(i % N), N);
    const int m2 = u.n == 2 ? Spectrum::signed_index(static_cast<int>(i / N), N) : 0;
    // The Nyquist coefficient is shared between +N/2 and -N/2 on the finer grid.
    std::vector<int> c1{m1}, c2{m2};
    if (m1 == -N / 2) c1 = {-N / 2, N / 2};
    if (u.n == 2 && m2 == -N / 2) c2 = {-N / 2, N / 2};
    const double share = 1.0 / static_cast<double>(c1.size() * c2.size());
    for (int a : c1)
      for (int b : c2) place(a, b, s.coeffs[i] * share);
  }
  SampledFunction out = from_spectrum(t, fine);
  if (u.is_real()) {
    for (auto& v : out.values) v = v.real();
  }
  return out;
}

NormResult exp_minus_one_norm(const SampledFunction& u, const NormParams& params) {
  require_open_p(params);
  require_real(u, "exp_minus_one_norm");
  const SampledFunction e = expi_minus_one(upsample(u, 4));
  NormResult r = mod_norm(e, params);
  if (r.truncation_tail > kCompositionTailLimit)
    throw NumericalError("composed spectrum leaks past k_max (relative tail " + std::to_string(r.truncation_tail) +
                         "); refine the grid");
  return r;
}

namespace {

double log_shape(const BoundShape& shape, double b, double x) {
  if (shape.regime == "gevrey") return b * std::pow(x, 1.0 / shape.s) * std::log(x);
  return shape.theta * w_star(b * std::pow(x, 1.0 + 1.0 / shape.N));
}

}  // namespace

BoundScan bound_scan(const SampledFunction& u, const NormParams& params, const BoundShape& shape,
                     const std::vector<double>& lambdas) {
  return bound_scan(std::vector<SampledFunction>{u}, params, shape, lambdas);
}

BoundScan bound_scan(const std::vector<SampledFunction>& fixtures, const NormParams& params,
                     const BoundShape& shape, const std::vector<double>& lambdas) {
  if (shape.regime != "gevrey" && shape.regime != "loglog") throw InvalidArgument("regime must be gevrey or loglog");
  if (shape.regime == "gevrey" && !(shape.s > 1.0)) throw InvalidArgument("gevrey bound requires s > 1");
  if (shape.regime == "loglog" && (!(shape.theta > 0.0) || shape.N < 1))
    throw InvalidArgument("loglog bound requires theta > 0 and N >= 1");
  if (lambdas.empty()) throw InvalidArgument("bound_scan needs at least one lambda");
  if (fixtures.empty()) throw InvalidArgument("bound_scan needs at least one fixture");
  BoundScan scan;
  scan.regime = shape.regime;
  scan.s = shape.s;
  scan.theta = shape.theta;
  scan.N = shape.N;
  std::vector<double> x, logL;
  for (std::size_t fi = 0; fi < fixtures.size(); ++fi) {
    for (double lam : lambdas) {
      SampledFunction v = fixtures[fi];
      for (auto& z : v.values) z *= lam;
      BoundScanRow row;
      row.fixture = static_cast<int>(fi);
      row.lambda = lam;
      row.norm_u = mod_norm(v, params).value;
      row.lhs = exp_minus_one_norm(v, params).value;
      if (!(row.norm_u > 1.0)) throw InvalidArgument("bound_scan needs ||lambda u|| > 1 for every lambda");
      scan.rows.push_back(row);
      x.push_back(row.norm_u);
      logL.push_back(std::log(row.lhs));
    }
  }
  // For fixed b the smallest admissible log c is max_i(log L_i - shape_i(b)); minimize the spread over b.
  const auto objective = [&](double b, double* log_c) {
    double lc = -kInf;
    for (std::size_t i = 0; i < x.size(); ++i) lc = std::max(lc, logL[i] - log_shape(shape, b, x[i]));
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, lc + log_shape(shape, b, x[i]) - logL[i]);
    if (log_c) *log_c = lc;
    return worst;
  };
  double best_b = 1e-4, best = kInf;
  const int grid = 400;
  for (int i = 0; i <= grid; ++i) {
    const double b = std::exp(std::log(1e-4) + (std::log(1e2) - std::log(1e-4)) * i / grid);
    const double v = objective(b, nullptr);
    if (v < best) {
      best = v;
      best_b = b;
    }
  }
  double lo = best_b / std::exp((std::log(1e2) - std::log(1e-4)) / grid);
  double hi = best_b * std::exp((std::log(1e2) - std::log(1e-4)) / grid);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
    const double c1 = hi - inv_phi * (hi - lo), c2 = lo + inv_phi * (hi - lo);
    if (objective(c1, nullptr) <= objective(c2, nullptr)) hi = c2; else lo = c1;
  }
  const double b_ref = 0.5 * (lo + hi);
  if (objective(b_ref, nullptr) < best) best_b = b_ref;
  double log_c = 0.0;
  objective(best_b, &log_c);
  scan.b = best_b;
  scan.c = std::exp(log_c);
  scan.min_residual = kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto& row = scan.rows[i];
    const double log_bound = log_c + log_shape(shape, best_b, x[i]);
    row.bound = std::exp(log_bound);
    // bound - L = L (e^{log bound - log L} - 1), exact sign even when both sides are huge.
    row.residual = row.lhs * std::expm1(log_bound - logL[i]);
    scan.min_residual = std::min(scan.min_residual, row.residual);
  }
  scan.passed = scan.min_residual >= 0.0;
  return scan;
}

std::string BoundScan::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "fixture,lambda,norm_u,lhs,fitted_bound,residual\n";
  for (const auto& r : rows)
    os << r.fixture << ',' << r.lambda << ',' << r.norm_u << ',' << r.lhs << ',' << r.bound << ',' << r.residual
       << '\n';
  return os.str();
}

Json BoundScan::to_json() const {
  Json rows_json = Json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"fixture", r.fixture},
                         {"lambda", r.lambda},
                         {"norm_u", r.norm_u},
                         {"lhs", r.lhs},
                         {"fitted_bound", r.bound},
                         {"residual", r.residual}});
  Json j = {{"regime", regime}, {"b", b}, {"c", c}};
  if (regime == "gevrey") {
    j["s"] = s;
  } else {
    j["theta"] = theta;
    j["N"] = N;
  }
  j["min_residual"] = min_residual;
  j["passed"] = passed;
  j["rows"] = rows_json;
  return j;
}

std::function<double(double)> superposition_function(const std::string& name) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (head == "gevrey_bump") {
    char* end = nullptr;
    const double mu = std::strtod(arg.c_str(), &end);
    if (arg.empty() || *end != '\0' || !(mu < 0.0)) throw InvalidArgument("gevrey_bump needs mu < 0");
    return [mu](double t) { return gevrey_bump(mu, t); };
  }
  if (head == "up") return [](double t) { return up_eval(t, UpMethod::Convolution); };
  if (head == "density") {
    const Density d = make_density(arg);
    return [d](double t) {
      const auto& tab = *d.table;
      double sum = 0.0;
      for (std::size_t i = 0; i < tab.xi.size(); ++i) {
        const std::complex<double> e(std::cos(tab.xi[i] * t), std::sin(tab.xi[i] * t));
        // Pairs xi and -xi: conj-symmetric densities give 2 Re[(e - 1) g], odd ones 2i sin(xi t) g.
        const std::complex<double> pair = d.odd ? 2.0 * std::complex<double>(0.0, e.imag()) * tab.g[i]
                                                : 2.0 * std::complex<double>(((e - 1.0) * tab.g[i]).real(), 0.0);
        sum += tab.weight[i] * pair.real();
      }
      return sum / std::sqrt(2.0 * std::numbers::pi);
    };
  }
  throw InvalidArgument("unknown superposition function '" + name + "'");
}

SampledFunction compose(const std::string& name, const SampledFunction& u) {
  require_real(u, "compose");
  const auto f = superposition_function(name);
  SampledFunction out = upsample(u, 4);
  for (auto& v : out.values) {
    const double r = f(v.real());
    if (!std::isfinite(r)) throw NumericalError("composition produced a non-finite value");
    v = r;
  }
  out.kind = "compose:" + name;
  return out;
}

LipschitzResult lipschitz_check(const SampledFunction& u, const SampledFunction& v, const NormParams& params) {
  require_open_p(params);
  require_real(u, "lipschitz_check");
  require_real(v, "lipschitz_check");
  if (!u.same_grid(v)) throw InvalidArgument("lipschitz_check: grid mismatch");
  LipschitzResult out;
  double diff_sup = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u.values[i].real(), b = v.values[i].real();
    const cplx eu = std::polar(1.0, a), ev = std::polar(1.0, b), ed = std::polar(1.0, a - b);
    const cplx rhs = (ev - 1.0) * (ed - 1.0) + (ed - 1.0);
    out.identity_residual = std::max(out.identity_residual, std::abs((eu - ev) - rhs));
    diff_sup = std::max(diff_sup, std::abs(a - b));
  }
  if (diff_sup == 0.0) {
    out.ratio = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  SampledFunction d = u;
  for (std::size_t i = 0; i < d.size(); ++i) d.values[i] = u.values[i].real() - v.values[i].real();
  SampledFunction fu = upsample(u, 4), fv = upsample(v, 4);
  SampledFunction diff = fu;
  for (std::size_t i = 0; i < diff.size(); ++i)
    diff.values[i] = std::polar(1.0, fu.values[i].real()) - std::polar(1.0, fv.values[i].real());
  const NormResult num = mod_norm(diff, params);
  if (num.truncation_tail > kCompositionTailLimit) throw NumericalError("composed spectrum leaks past k_max");
  out.ratio = num.value / mod_norm(d, params).value;
  return out;
}

}  // namespace subexp
