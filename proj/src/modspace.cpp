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

#include "subexp/modspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "fft.hpp"
#include "parallel.hpp"

namespace subexp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t flat_index(int m1, int m2, int n, int N) {
  const auto i1 = static_cast<std::size_t>((m1 % N + N) % N);
  if (n == 1) return i1;
  return i1 + static_cast<std::size_t>((m2 % N + N) % N) * N;
}

// Log of (sum_i exp(q*t_i))^{1/q} with q = inf meaning max; entries of -inf are zero terms.
double log_lq(const std::vector<double>& terms, double q) {
  double top = -kInf;
  for (double t : terms) top = std::max(top, t);
  if (top == -kInf) return -kInf;
  if (std::isinf(q)) return top;
  double sum = 0.0;
  for (double t : terms)
    if (t != -kInf) sum += std::exp(q * (t - top));
  return top + std::log(sum) / q;
}

void check_exponent(double p, const char* name) {
  if (!(p >= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [1, inf]");
}

bool near_pi(double L) { return std::abs(L - std::numbers::pi) <= 1e-12; }

}  // namespace

FreqMode parse_mode(const std::string& text) {
  if (text == "lattice") return FreqMode::Lattice;
  if (text == "continuum") return FreqMode::Continuum;
  throw InvalidArgument("mode must be lattice or continuum");
}

std::string to_string(FreqMode mode) { return mode == FreqMode::Lattice ? "lattice" : "continuum"; }

namespace {
Json exponent_json(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}
}  // namespace

Json to_json(const NormParams& params) {
  return {{"p", exponent_json(params.p)},
          {"q", exponent_json(params.q)},
          {"weight", to_string(params.weight)},
          {"mode", to_string(params.mode)},
          {"k_max", params.k_max}};
}

Json to_json(const NormResult& result, const NormParams& params) {
  Json p = to_json(params);
  p["k_max"] = result.k_max;
  Json j = {{"params", p}, {"value", result.value}, {"truncation_tail", result.truncation_tail}};
  j["warnings"] = result.warnings;
  return j;
}

double nyquist(const SampledFunction& f) { return std::numbers::pi * (f.N / 2) / f.L; }

int effective_k_max(const SampledFunction& f, const NormParams& params) {
  const double nyq = nyquist(f);
  if (params.k_max >= 0) {
    if (params.k_max > nyq) throw InvalidArgument("k_max exceeds the grid Nyquist frequency");
    return params.k_max;
  }
  return std::max(0, static_cast<int>(std::floor(nyq + 1e-9)) - 1);
}

double spectral_tail(const SampledFunction& f, double radius) {
  const Spectrum s = spectrum(f);
  double total = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    const double e = std::norm(s.coeffs[i]);
    total += e;
    double r = std::abs(f.xi(Spectrum::signed_index(static_cast<int>(i % f.N), f.N)));
    if (f.n == 2) r = std::max(r, std::abs(f.xi(Spectrum::signed_index(static_cast<int>(i / f.N), f.N))));
    if (r > radius + 1e-12) outside += e;
  }
  return total > 0.0 ? outside / total : 0.0;
}

namespace {

// Per-axis partition values sigma_{k_i}(xi_m) for every storage index.
std::vector<double> axis_sigma(const SampledFunction& f, int k) {
  std::vector<double> out(f.N);
  for (int i = 0; i < f.N; ++i) out[i] = sigma_1d(k, f.xi(Spectrum::signed_index(i, f.N)));
  return out;
}

SampledFunction box_from_spectrum(const Spectrum& s, const SampledFunction& f, std::span<const int> k,
                                  FreqMode mode) {
  Spectrum out{s.n, s.L, s.N, std::vector<cplx>(s.coeffs.size())};
  if (mode == FreqMode::Lattice) {
    if (!near_pi(f.L)) throw InvalidArgument("lattice mode requires L = pi");
    for (int i = 0; i < f.n; ++i)
      if (k[i] < -f.N / 2 || k[i] >= f.N / 2) throw InvalidArgument("k outside the lattice grid");
    const std::size_t idx = flat_index(k[0], f.n == 2 ? k[1] : 0, f.n, f.N);
    out.coeffs[idx] = s.coeffs[idx];
  } else {
    const auto s1 = axis_sigma(f, k[0]);
    if (f.n == 1) {
      for (int i = 0; i < f.N; ++i)
        if (s1[i] != 0.0) out.coeffs[i] = s.coeffs[i] * s1[i];
    } else {
      const auto s2 = axis_sigma(f, k[1]);
      for (int j = 0; j < f.N; ++j) {
        if (s2[j] == 0.0) continue;
        for (int i = 0; i < f.N; ++i) {
          const std::size_t idx = static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * f.N;
          if (s1[i] != 0.0) out.coeffs[idx] = s.coeffs[idx] * (s1[i] * s2[j]);
        }
      }
    }
  }
  return from_spectrum(out, f);
}

}  // namespace

SampledFunction box_k(const SampledFunction& f, std::span<const int> k, const WindowFunction& w, FreqMode mode) {
  if (k.size() != static_cast<std::size_t>(f.n) || w.n != f.n) throw InvalidArgument("box_k dimension mismatch");
  return box_from_spectrum(spectrum(f), f, k, mode);
}

double lp_norm(const SampledFunction& f, double p) {
  check_exponent(p, "p");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  // Scale by the maximum first so |f|^p neither under- nor overflows.
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& v : f.values) sum += std::pow(std::abs(v) / m, p);
  return m * std::pow(std::pow(f.spacing(), f.n) * sum, 1.0 / p);
}

NormResult mod_norm(const SampledFunction& f, const NormParams& params, const WindowFunction& w) {
  check_exponent(params.p, "p");
  check_exponent(params.q, "q");
  params.weight.validate();
  if (w.n != f.n) throw InvalidArgument("window dimension mismatch");
  NormResult result;
  const int K = effective_k_max(f, params);
  result.k_max = K;
  if (params.mode == FreqMode::Lattice) {
    if (!near_pi(f.L)) throw InvalidArgument("lattice mode requires L = pi");
    if (K > f.N / 2 - 1) throw InvalidArgument("k_max exceeds the lattice grid");
  }

  const Spectrum s = spectrum(f);
  {
    double total = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
      const double e = std::norm(s.coeffs[i]);
      total += e;
      double r = std::abs(f.xi(Spectrum::signed_index(static_cast<int>(i % f.N), f.N)));
      if (f.n == 2) r = std::max(r, std::abs(f.xi(Spectrum::signed_index(static_cast<int>(i / f.N), f.N))));
      if (r > K - 1 + 1e-12) outside += e;
    }
    result.truncation_tail = total > 0.0 ? outside / total : 0.0;
    if (result.truncation_tail > kTruncationThreshold)
      result.warnings.push_back("TruncationWarning: relative spectral mass " +
                                std::to_string(result.truncation_tail) + " outside |xi|_inf <= " +
                                std::to_string(K - 1));
  }

  const int side = 2 * K + 1;
  const std::size_t count = f.n == 1 ? side : static_cast<std::size_t>(side) * side;
  const double p = params.p;
  const auto log_term = [&](std::size_t idx) {
    std::array<int, 2> k{static_cast<int>(idx % side) - K, f.n == 2 ? static_cast<int>(idx / side) - K : 0};
    double piece;
    if (params.mode == FreqMode::Lattice) {
      // sigma_k(m) = delta_km: the box keeps one coefficient and ||c e^{ikx}||_p = |c| (2 pi)^{n/p}.
      const double c = std::abs(s.coeffs[flat_index(k[0], k[1], f.n, f.N)]);
      piece = std::isinf(p) ? c : c * std::pow(2.0 * std::numbers::pi, f.n / p);
    } else {
      piece = lp_norm(box_from_spectrum(s, f, std::span<const int>(k.data(), f.n), params.mode), p);
    }
    if (piece == 0.0) return -kInf;
    const std::array<double, 2> kd{double(k[0]), double(k[1])};
    return log_weight_eval(params.weight, std::span<const double>(kd.data(), f.n)) + std::log(piece);
  };
  const auto terms = params.mode == FreqMode::Lattice
                         ? [&] {
                             std::vector<double> t(count);
                             for (std::size_t i = 0; i < count; ++i) t[i] = log_term(i);
                             return t;
                           }()
                         : detail::parallel_map<double>(count, log_term);
  const double lv = log_lq(terms, params.q);
  result.value = lv == -kInf ? 0.0 : std::exp(lv);
  return result;
}

NormResult mod_norm(const SampledFunction& f, const NormParams& params) {
  return mod_norm(f, params, build_window(f.n));
}

double stft_norm(const SampledFunction& f, double p, double q, const WeightSpec& weight,
                 const SampledFunction& window) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  weight.validate();
  if (!f.same_grid(window)) throw InvalidArgument("window must share the function's grid");
  if ((f.n == 1 && f.N > 4096) || (f.n == 2 && f.N > 128))
    throw InvalidArgument("stft_norm cost guard: N too large (max 4096 in 1D, 128 in 2D)");

  const int N = f.N, n = f.n;
  const std::size_t total = f.size();
  const double hn = std::pow(f.spacing(), n);
  const double scale = hn / std::pow(2.0 * std::numbers::pi, 0.5 * n);
  const auto shifted = [&](std::size_t j, std::size_t i) {
    // Index of x_j - x_i on the periodic grid centred at the origin.
    const int j1 = static_cast<int>(j % N), i1 = static_cast<int>(i % N);
    std::size_t l = static_cast<std::size_t>(((j1 - i1 + N / 2) % N + N) % N);
    if (n == 2) {
      const int j2 = static_cast<int>(j / N), i2 = static_cast<int>(i / N);
      l += static_cast<std::size_t>(((j2 - i2 + N / 2) % N + N) % N) * N;
    }
    return l;
  };

  // acc[m] accumulates sum_x h^n |V(x, xi_m)|^p (or the max for p = inf) per chunk of shifts.
  const std::size_t chunks = detail::chunk_count(total);
  std::vector<std::vector<double>> acc(chunks, std::vector<double>(total, 0.0));
  detail::parallel_chunks(total, [&](std::size_t b, std::size_t e, std::size_t c) {
    std::vector<cplx> buf(total);
    auto& a = acc[c];
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = 0; j < total; ++j) buf[j] = f.values[j] * std::conj(window.values[shifted(j, i)]);
      detail::fft_inplace(buf, n, N, -1);
      for (std::size_t m = 0; m < total; ++m) {
        const double v = scale * std::abs(buf[m]);
        if (std::isinf(p)) {
          a[m] = std::max(a[m], v);
        } else {
          a[m] += hn * std::pow(v, p);
        }
      }
    }
  });
  std::vector<double> inner(total, 0.0);
  for (const auto& a : acc)
    for (std::size_t m = 0; m < total; ++m) inner[m] = std::isinf(p) ? std::max(inner[m], a[m]) : inner[m] + a[m];

  const double dxi_n = std::pow(std::numbers::pi / f.L, n);
  std::vector<double> terms(total);
  for (std::size_t m = 0; m < total; ++m) {
    const double lp = std::isinf(p) ? inner[m] : std::pow(inner[m], 1.0 / p);
    if (lp == 0.0) {
      terms[m] = -kInf;
      continue;
    }
    double r = std::abs(f.xi(Spectrum::signed_index(static_cast<int>(m % N), N)));
    if (n == 2) r = std::hypot(r, f.xi(Spectrum::signed_index(static_cast<int>(m / N), N)));
    // The xi-measure dxi^n enters inside the q-sum; for q = inf it is dropped.
    terms[m] = log_weight_radial(weight, r) + std::log(lp) + (std::isinf(q) ? 0.0 : std::log(dxi_n) / q);
  }
  const double lv = log_lq(terms, q);
  return lv == -kInf ? 0.0 : std::exp(lv);
}

SampledFunction multiply(const SampledFunction& f, const SampledFunction& g) {
  if (!f.same_grid(g)) throw InvalidArgument("multiply: grid mismatch");
  SampledFunction out = f;
  out.kind = "product";
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] *= g.values[i];
  return out;
}

double weighted_fourier_l2(const SampledFunction& f, const WeightSpec& weight) {
  weight.validate();
  const Spectrum s = spectrum(f);
  std::vector<double> terms(s.coeffs.size());
  const double log_dxi = f.n * std::log(std::numbers::pi / f.L);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double a = std::abs(s.fourier_transform(i));
    if (a == 0.0) {
      terms[i] = -kInf;
      continue;
    }
    double r = f.xi(Spectrum::signed_index(static_cast<int>(i % f.N), f.N));
    if (f.n == 2) r = std::hypot(r, f.xi(Spectrum::signed_index(static_cast<int>(i / f.N), f.N)));
    terms[i] = log_weight_radial(weight, r) + std::log(a) + 0.5 * log_dxi;
  }
  const double lv = log_lq(terms, 2.0);
  return lv == -kInf ? 0.0 : std::exp(lv);
}

VerificationReport check_algebra_ratio(const std::vector<std::pair<SampledFunction, SampledFunction>>& corpus,
                                       const NormParams& params, double p1, double p2,
                                       std::optional<double> reference_max) {
  check_exponent(p1, "p1");
  check_exponent(p2, "p2");
  VerificationReport report;
  report.kind = "algebra_ratio";
  report.params = to_json(params);
  report.params["p1"] = exponent_json(p1);
  report.params["p2"] = exponent_json(p2);
  report.domain = std::to_string(corpus.size()) + " function pairs";
  report.tolerance = 0.0;
  NormParams P1 = params, P2 = params;
  P1.p = p1;
  P2.p = p2;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  std::size_t worst = 0;
  bool all_finite = true;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [f, g] = corpus[i];
    const double num = mod_norm(multiply(f, g), params).value;
    const double den = mod_norm(f, P1).value * mod_norm(g, P2).value;
    const double r = den > 0.0 ? num / den : (num == 0.0 ? 0.0 : kInf);
    ratios.push_back(r);
    ++report.points_checked;
    if (!std::isfinite(r)) all_finite = false;
    if (r > max_ratio) {
      max_ratio = r;
      worst = i;
    }
  }
  report.extra["max_ratio"] = max_ratio;
  report.extra["worst_pair"] = worst;
  report.extra["ratios"] = ratios;
  report.worst_point = {static_cast<double>(worst)};
  if (!all_finite) {
    report.min_margin = -kInf;
  } else if (reference_max) {
    const double change = std::abs(max_ratio - *reference_max) / *reference_max;
    report.extra["reference_max_ratio"] = *reference_max;
    report.extra["relative_change"] = change;
    report.min_margin = 0.05 - change;
  } else {
    report.min_margin = kInf;
  }
  return report.finalize();
}

double estimate_gevrey_constant(const SampledFunction& f, double s, int alpha_max) {
  if (alpha_max < 0) throw InvalidArgument("alpha_max must be nonnegative");
  if (alpha_max > 20) throw InvalidArgument("alpha_max > 20 overflows the factorial fit");
  if (!(s > 0.0)) throw InvalidArgument("s must be positive");
  const Spectrum sp = spectrum(f);
  double best = 0.0;
  const auto consider = [&](int a1, int a2) {
    Spectrum d = sp;
    for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
      const double x1 = f.xi(Spectrum::signed_index(static_cast<int>(i % f.N), f.N));
      cplx factor = std::pow(cplx(0.0, x1), a1);
      if (f.n == 2) factor *= std::pow(cplx(0.0, f.xi(Spectrum::signed_index(static_cast<int>(i / f.N), f.N))), a2);
      d.coeffs[i] *= factor;
    }
    const double sup = lp_norm(from_spectrum(d, f), kInf);
    if (sup == 0.0) return;
    const double log_fact = std::lgamma(a1 + 1.0) + std::lgamma(a2 + 1.0);
    const double c = std::exp((std::log(sup) - s * f.n * log_fact) / (a1 + a2 + 1.0));
    best = std::max(best, c);
  };
  for (int a1 = 0; a1 <= alpha_max; ++a1) {
    if (f.n == 1) {
      consider(a1, 0);
    } else {
      for (int a2 = 0; a1 + a2 <= alpha_max; ++a2) consider(a1, a2);
    }
  }
  return best;
}

}  // namespace subexp
