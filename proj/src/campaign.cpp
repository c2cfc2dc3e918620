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


#include "subexp/campaign.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "quadrature.hpp"
#include "rng.hpp"
#include "subexp/constants.hpp"
#include "subexp/partition.hpp"
#include "subexp/specialfn.hpp"
#include "subexp/superpose.hpp"
#include "subexp/weights.hpp"

namespace subexp {

namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

using Pairs = std::vector<std::pair<SampledFunction, SampledFunction>>;

// A check whose outcome is a single margin (RHS - LHS style, pass iff >= -tolerance).
VerificationReport scalar_check(const std::string& kind, const std::string& domain, double margin,
                                double tolerance, Json extra = Json::object()) {
  VerificationReport r;
  r.kind = kind;
  r.domain = domain;
  r.tolerance = tolerance;
  r.observe(std::isnan(margin) ? -kInf : margin, {});
  r.extra = std::move(extra);
  r.finalize();
  return r;
}

std::vector<double> doubles(const Json& j) { return j.get<std::vector<double>>(); }

SampledFunction random_fixture(int n, double L, int N, double band, bool real, std::uint64_t seed) {
  SynthParams p;
  p.band = band;
  p.real = real;
  return synthesize("random_bandlimited", n, L, N, p, seed);
}

Pairs pair_corpus(double L, int N, double band, int count, std::uint64_t seed) {
  Pairs out;
  for (int i = 0; i < count; ++i)
    out.emplace_back(random_fixture(1, L, N, band, false, seed + 2 * i),
                     random_fixture(1, L, N, band, false, seed + 2 * i + 1));
  return out;
}

void scale(SampledFunction& f, double factor) {
  for (auto& v : f.values) v *= factor;
}

// min_i (v_i - v_{i+1}) / v_i: nonnegative iff the sequence is nonincreasing.
double decrease_margin(const std::vector<double>& v) {
  double m = kInf;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) m = std::min(m, (v[i] - v[i + 1]) / v[i]);
  return m;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str();
}

// ---------------------------------------------------------------- weights

Json weights_defaults(bool quick) {
  return {{"t0_interval", {16.4449, 16.4451}},
          {"p0_interval", {0.410247, 0.410248}},
          {"gevrey_s", {1.2, 1.5, 2.0, 3.0}},
          {"gevrey_radius_1d", quick ? 50 : 200},
          {"gevrey_radius_2d", 40},
          {"loglog",
           {{"grid_max", 2000.0},
            {"grid_step", 0.5},
            {"random_points", quick ? 10000 : 100000},
            {"random_max", 1.0e6},
            {"seed", 20260101}}},
          {"sharpness_s", 0.99},
          {"elementary_eps", {0.1, 0.5, 0.9}},
          {"elementary_xi_max", 1.0e5},
          {"elementary_points", quick ? 20001 : 200001}};
}

Json run_weights(const Json& o, std::vector<VerificationReport>& out) {
  const WeightAnalysis a = analyze_weight();
  const auto t_iv = doubles(o.at("t0_interval")), p_iv = doubles(o.at("p0_interval"));
  const double m = std::min({a.t0 - t_iv.at(0), t_iv.at(1) - a.t0, a.p0 - p_iv.at(0), p_iv.at(1) - a.p0});
  auto an = scalar_check("weight_analysis", "t0 and p0 inside their reference intervals", m, 0.0,
                         {{"t0", a.t0}, {"p0", a.p0}});
  an.worst_point = {a.t0, a.p0};
  out.push_back(an);

  for (double s : doubles(o.at("gevrey_s"))) {
    out.push_back(verify_gevrey_inequality({s, 1, o.at("gevrey_radius_1d").get<int>()}));
    out.push_back(verify_gevrey_inequality({s, 2, o.at("gevrey_radius_2d").get<int>()}));
  }

  const Json& ll = o.at("loglog");
  LogLogDomain d;
  d.grid_max = ll.at("grid_max").get<double>();
  d.grid_step = ll.at("grid_step").get<double>();
  d.random_points = ll.at("random_points").get<std::size_t>();
  d.random_max = ll.at("random_max").get<double>();
  d.seed = ll.at("seed").get<std::uint64_t>();
  out.push_back(verify_loglog_inequality(d));

  // The probe passes when the inequality fails somewhere.
  LogLogDomain probe = d;
  probe.s = o.at("sharpness_s").get<double>();
  const VerificationReport pr = verify_loglog_inequality(probe);
  auto sharp = scalar_check("loglog_sharpness", "s = " + std::to_string(probe.s) + " must violate the inequality",
                            -pr.min_margin - kLogDomainTolerance, 0.0,
                            {{"s", probe.s}, {"probe_min_margin", pr.min_margin}, {"probe_points", pr.points_checked}});
  sharp.worst_point = pr.worst_point;
  out.push_back(sharp);

  for (double eps : doubles(o.at("elementary_eps")))
    out.push_back(verify_elementary_inequality(
        {eps, o.at("elementary_xi_max").get<double>(), o.at("elementary_points").get<std::size_t>()}));

  return {{"t0", a.t0},
          {"p0", a.p0},
          {"p_argmax", a.p_argmax},
          {"s_admissible", a.s_admissible},
          {"deriv_sup", a.deriv_sup}};
}

// ---------------------------------------------------------------- partition

Json partition_defaults(bool quick) {
  return {{"extent", 3.0},
          {"points_1d", 10001},
          {"points_2d", quick ? 10001 : 90601},
          {"fd_step", 1e-3},
          {"lattice_1d", quick ? 50 : 200},
          {"lattice_2d", quick ? 5 : 10},
          {"translation_samples", quick ? 20 : 100},
          {"exact_tol", 1e-14},
          {"translation_tol", 1e-14},
          {"seed", 4242}};
}

Json run_partition(const Json& o, std::vector<VerificationReport>& out) {
  const double extent = o.at("extent").get<double>(), fd = o.at("fd_step").get<double>();
  for (int n : {1, 2}) {
    PartitionGrid g{extent, o.at(n == 1 ? "points_1d" : "points_2d").get<int>(), fd};
    auto r = verify_partition(build_window(n), g);
    r.kind = "partition_" + std::to_string(n) + "d";
    out.push_back(r);
  }

  const double exact_tol = o.at("exact_tol").get<double>();
  const int K1 = o.at("lattice_1d").get<int>(), K2 = o.at("lattice_2d").get<int>();
  {
    VerificationReport r;
    r.kind = "lattice_exactness_1d";
    r.domain = "sigma_k(m) = delta_km for |k|, |m| <= " + std::to_string(K1);
    r.tolerance = 0.0;
    for (int k = -K1; k <= K1; ++k)
      for (int m = -K1; m <= K1; ++m)
        r.observe(exact_tol - std::abs(sigma_1d(k, m) - (k == m ? 1.0 : 0.0)), {double(k), double(m)});
    out.push_back(r.finalize());
  }
  {
    const WindowFunction w = build_window(2);
    VerificationReport r;
    r.kind = "lattice_exactness_2d";
    r.domain = "sigma_k(m) = delta_km for |k|_inf, |m|_inf <= " + std::to_string(K2);
    r.tolerance = 0.0;
    for (int k1 = -K2; k1 <= K2; ++k1)
      for (int k2 = -K2; k2 <= K2; ++k2)
        for (int m1 = -K2; m1 <= K2; ++m1)
          for (int m2 = -K2; m2 <= K2; ++m2) {
            const int k[2] = {k1, k2};
            const double x[2] = {double(m1), double(m2)};
            const double want = (k1 == m1 && k2 == m2) ? 1.0 : 0.0;
            r.observe(exact_tol - std::abs(sigma_eval(w, k, x) - want),
                      {double(k1), double(k2), double(m1), double(m2)});
          }
    out.push_back(r.finalize());
  }

  const double tr_tol = o.at("translation_tol").get<double>();
  const int samples = o.at("translation_samples").get<int>();
  detail::SplitMix64 rng(o.at("seed").get<std::uint64_t>());
  {
    VerificationReport r;
    r.kind = "translation_1d";
    r.domain = "sigma_k(xi) = sigma_0(xi - k), |k| <= " + std::to_string(K1);
    r.tolerance = 0.0;
    for (int k = -K1; k <= K1; ++k)
      for (int i = 0; i < samples; ++i) {
        const double xi = k - 1.5 + 3.0 * rng.uniform();
        r.observe(tr_tol - std::abs(sigma_1d(k, xi) - sigma_1d(0, xi - k)), {double(k), xi});
      }
    out.push_back(r.finalize());
  }
  {
    const WindowFunction w = build_window(2);
    VerificationReport r;
    r.kind = "translation_2d";
    r.domain = "sigma_k(xi) = sigma_0(xi - k), |k|_inf <= " + std::to_string(K2);
    r.tolerance = 0.0;
    const int zero[2] = {0, 0};
    for (int k1 = -K2; k1 <= K2; ++k1)
      for (int k2 = -K2; k2 <= K2; ++k2)
        for (int i = 0; i < samples; ++i) {
          const int k[2] = {k1, k2};
          const double x[2] = {k1 - 1.5 + 3.0 * rng.uniform(), k2 - 1.5 + 3.0 * rng.uniform()};
          const double y[2] = {x[0] - k1, x[1] - k2};
          r.observe(tr_tol - std::abs(sigma_eval(w, k, x) - sigma_eval(w, zero, y)),
                    {double(k1), double(k2), x[0], x[1]});
        }
    out.push_back(r.finalize());
  }
  return Json::object();
}

// ---------------------------------------------------------------- algebra

Json algebra_defaults(bool quick) {
  return {{"pairs", quick ? 10 : 50},
          {"weights", {"gevrey:2", "loglog", "poly:2"}},
          {"p", 2.0},
          {"q", 2.0},
          {"L", 2.0 * kPi},
          {"N_coarse", 256},
          {"N_fine", 512},
          {"band", 4.0},
          {"k_max", 10},
          {"seed", 1000},
          {"norm_equivalence",
           {{"fixtures", 20},
            {"weight", "gevrey:2"},
            {"L", 4.0 * kPi},
            {"N_coarse", 256},
            {"N_fine", 512},
            {"band", 6.0},
            {"k_max", 8},
            {"window_a", 0.5},
            {"max_spread", 20.0},
            {"stability", 0.10},
            {"seed", 100}}}};
}

Json run_algebra(const Json& o, std::vector<VerificationReport>& out) {
  const int pairs = o.at("pairs").get<int>();
  const double L = o.at("L").get<double>(), band = o.at("band").get<double>();
  const int Nc = o.at("N_coarse").get<int>(), Nf = o.at("N_fine").get<int>();
  const auto seed = o.at("seed").get<std::uint64_t>();
  const Pairs coarse = pair_corpus(L, Nc, band, pairs, seed);
  const Pairs fine = pair_corpus(L, Nf, band, pairs, seed);
  Json summary = Json::object();
  for (const auto& wname : o.at("weights")) {
    NormParams P;
    P.p = o.at("p").get<double>();
    P.q = o.at("q").get<double>();
    P.weight = parse_weight(wname.get<std::string>());
    P.mode = FreqMode::Continuum;
    P.k_max = o.at("k_max").get<int>();
    const VerificationReport rc = check_algebra_ratio(coarse, P, P.p, P.p);
    const double ref = rc.extra.at("max_ratio").get<double>();
    VerificationReport rf = check_algebra_ratio(fine, P, P.p, P.p, ref);
    rf.kind = "algebra_ratio " + wname.get<std::string>();
    rf.extra["N_coarse"] = Nc;
    rf.extra["N_fine"] = Nf;
    rf.extra.erase("ratios");
    rf.finalize();
    summary[wname.get<std::string>()] = {{"max_ratio_coarse", ref},
                                         {"max_ratio_fine", rf.extra.at("max_ratio")}};
    out.push_back(rf);
  }

  const Json& ne = o.at("norm_equivalence");
  const WeightSpec w = parse_weight(ne.at("weight").get<std::string>());
  NormParams P;
  P.weight = w;
  P.k_max = ne.at("k_max").get<int>();
  std::vector<double> lo, hi;
  for (const char* key : {"N_coarse", "N_fine"}) {
    const int N = ne.at(key).get<int>();
    const double Le = ne.at("L").get<double>();
    SynthParams gp;
    gp.a = ne.at("window_a").get<double>();
    const SampledFunction win = synthesize("gaussian", 1, Le, N, gp);
    double a = kInf, A = 0.0;
    for (int i = 0; i < ne.at("fixtures").get<int>(); ++i) {
      const SampledFunction f =
          random_fixture(1, Le, N, ne.at("band").get<double>(), true, ne.at("seed").get<std::uint64_t>() + i);
      const double r = stft_norm(f, 2.0, 2.0, w, win) / mod_norm(f, P).value;
      a = std::min(a, r);
      A = std::max(A, r);
    }
    lo.push_back(a);
    hi.push_back(A);
  }
  const double spread = hi[0] / lo[0];
  out.push_back(scalar_check("norm_equivalence_spread", "A/a of stft_norm/mod_norm over the fixtures",
                             ne.at("max_spread").get<double>() - spread, 0.0,
                             {{"a", lo[0]}, {"A", hi[0]}, {"spread", spread}}));
  const double drift = std::max(std::abs(lo[1] / lo[0] - 1.0), std::abs(hi[1] / hi[0] - 1.0));
  out.push_back(scalar_check("norm_equivalence_stability", "[a, A] under N -> 2N",
                             ne.at("stability").get<double>() - drift, 0.0,
                             {{"coarse", {lo[0], hi[0]}}, {"fine", {lo[1], hi[1]}}, {"relative_change", drift}}));
  summary["norm_equivalence"] = {{"coarse", {lo[0], hi[0]}}, {"fine", {lo[1], hi[1]}}};
  return summary;
}

// ---------------------------------------------------------------- subalgebra

Json subalgebra_defaults(bool quick) {
  return {{"pairs", quick ? 10 : 50},
          {"seed", 5000},
          {"gevrey",
           {{"weight", "gevrey:2"}, {"R", {4, 8, 16, 32}}, {"N", 512}, {"min_total_decrease", 10.0}}},
          {"loglog",
           {{"weight", "loglog"}, {"R", {16, 32, 64, 128}}, {"N", 2048}, {"max_step_quotient", 0.5}}}};
}

// Max algebra ratio over pairs whose spectra lie in (R, 2R + 1/2], the eps = 0 part of P_R(eps).
double subalgebra_ratio(const WeightSpec& w, int R, int N, int pairs, std::uint64_t seed) {
  Pairs corpus;
  for (int i = 0; i < pairs; ++i) {
    const auto f = random_fixture(1, kPi, N, 2.0 * R + 0.5, true, seed + 2 * i);
    const auto g = random_fixture(1, kPi, N, 2.0 * R + 0.5, true, seed + 2 * i + 1);
    corpus.emplace_back(phase_split(f, R).parts[0], phase_split(g, R).parts[0]);
  }
  NormParams P;
  P.weight = w;
  P.mode = FreqMode::Lattice;
  return check_algebra_ratio(corpus, P, 2.0, 2.0).extra.at("max_ratio").get<double>();
}

Json run_subalgebra(const Json& o, std::vector<VerificationReport>& out) {
  const int pairs = o.at("pairs").get<int>();
  const auto seed = o.at("seed").get<std::uint64_t>();
  Json summary = Json::object();
  for (const char* regime : {"gevrey", "loglog"}) {
    const Json& c = o.at(regime);
    const WeightSpec w = parse_weight(c.at("weight").get<std::string>());
    const auto Rs = c.at("R").get<std::vector<int>>();
    std::vector<double> ratios;
    for (int R : Rs) {
      // The product spectrum reaches 4R + 1, which must stay below Nyquist.
      const int N = c.at("N").get<int>();
      if (4 * R + 1 >= N / 2) throw InvalidArgument("subalgebra: N too small for R = " + std::to_string(R));
      ratios.push_back(subalgebra_ratio(w, R, N, pairs, seed));
    }
    Json extra = {{"R", Rs}, {"max_ratio", ratios}};
    summary[regime] = extra;
    if (std::string(regime) == "gevrey") {
      out.push_back(scalar_check("subalgebra_monotone gevrey", "ratio nonincreasing in R = " + join(std::vector<double>(Rs.begin(), Rs.end())),
                                 decrease_margin(ratios), 0.0, extra));
      const double total = ratios.front() / ratios.back();
      out.push_back(scalar_check("subalgebra_total_decrease gevrey", "ratio(R_first) / ratio(R_last)",
                                 total / c.at("min_total_decrease").get<double>() - 1.0, 0.0, extra));
    } else {
      double worst = 0.0;
      for (std::size_t i = 0; i + 1 < ratios.size(); ++i) worst = std::max(worst, ratios[i + 1] / ratios[i]);
      out.push_back(scalar_check("subalgebra_inverse_R loglog", "ratio(2R) / ratio(R) <= quotient bound",
                                 c.at("max_step_quotient").get<double>() - worst, 0.0, extra));
    }
  }
  return summary;
}

// ---------------------------------------------------------------- superposition

Json superposition_defaults(bool quick) {
  return {{"product_identity", {{"max_terms", 8}, {"trials", quick ? 5 : 20}, {"tol", 1e-12}, {"seed", 7}}},
          {"exp_difference", {{"pairs", 5}, {"N", 256}, {"band", 8.0}, {"tol", 1e-12}, {"seed", 300}}},
          {"phase_split",
           {{"R", {2.0, 3.0, 5.0}}, {"N_1d", 256}, {"band_1d", 8.0}, {"N_2d", 64}, {"band_2d", 6.0},
            {"tol", 1e-10}, {"seed", 77}}},
          {"bound_scan",
           {{"fixtures", 5}, {"N", 256}, {"band", 4.0}, {"lambdas", {1.5, 3.0, 6.0, 12.0, 24.0}},
            {"s", 2.0}, {"theta", 1.5}, {"N_terms", 3}, {"seed", 9000}}},
          {"measure",
           {{"finite", {{{"density", "gevrey_bump:-2"}, {"regime", "gevrey"}}, {{"density", "up"}, {"regime", "loglog"}}}},
            {"divergent",
             {{{"density", "gevrey_bump:-1"}, {"regime", "gevrey"}},
              {{"density", "rational_decay:2"}, {"regime", "gevrey"}}}},
            {"lambdas", {0.1, 1.0, 10.0}},
            {"s", 2.0},
            {"theta", 1.5},
            {"eps", 0.5}}},
          {"quotient",
           {{"cases", {{{"density", "gevrey_bump:-3"}, {"regime", "gevrey"}}, {{"density", "up"}, {"regime", "loglog"}}}},
            {"xi", {1e2, 1e3, 1e4, 1e5}}}},
          {"compose",
           {{"cases", {{{"function", "gevrey_bump:-2"}, {"weight", "gevrey:2"}}, {{"function", "up"}, {"weight", "loglog"}}}},
            {"N_coarse", 256},
            {"N_fine", 512},
            {"band", 4.0},
            {"center", 0.5},
            {"amplitude", 0.3},
            {"refinement_tol", 0.01},
            {"seed", 55}}}};
}

MeasureParams measure_params(const Json& o, const std::string& regime) {
  MeasureParams m;
  m.regime = regime;
  m.s = o.at("s").get<double>();
  m.theta = o.at("theta").get<double>();
  m.eps = o.at("eps").get<double>();
  return m;
}

// Gap between the total and the last hundred dyadic blocks minus the 30-nat Cauchy threshold.
double cauchy_gap(const MeasureResult& r) {
  if (r.block_log.size() < 101 || !std::isfinite(r.log_value)) return -kInf;
  double tail = -kInf;
  for (std::size_t k = r.block_log.size() - 101; k < r.block_log.size(); ++k) {
    const double b = r.block_log[k];
    if (b == -kInf) continue;
    tail = tail == -kInf ? b : std::max(tail, b) + std::log1p(std::exp(-std::abs(tail - b)));
  }
  return r.log_value - tail - 30.0;
}

Json run_superposition(const Json& o, std::vector<VerificationReport>& out) {
  Json summary = Json::object();
  {
    const Json& c = o.at("product_identity");
    detail::SplitMix64 rng(c.at("seed").get<std::uint64_t>());
    VerificationReport r;
    r.kind = "product_identity";
    r.domain = "N <= " + std::to_string(c.at("max_terms").get<int>()) + ", a_j in the disc |a - 1| < 1/2";
    r.tolerance = 0.0;
    for (int N = 1; N <= c.at("max_terms").get<int>(); ++N)
      for (int t = 0; t < c.at("trials").get<int>(); ++t) {
        std::vector<std::complex<double>> a(N);
        for (auto& z : a) z = std::complex<double>(1.0, 0.0) + std::polar(0.5 * rng.uniform(), 2.0 * kPi * rng.uniform());
        r.observe(c.at("tol").get<double>() - product_identity_check(a), {double(N), double(t)});
      }
    out.push_back(r.finalize());
  }
  {
    const Json& c = o.at("exp_difference");
    NormParams P;
    P.mode = FreqMode::Lattice;
    P.weight = WeightSpec::gevrey(2.0);
    VerificationReport r, lip;
    r.kind = "exp_difference_identity";
    r.domain = "e^{iu} - e^{iv} splitting on random pairs";
    lip.kind = "lipschitz_ratio_finite";
    lip.domain = "||e^{iu} - e^{iv}|| / ||u - v|| for ||u||, ||v|| <= 0.9";
    std::vector<double> ratios;
    for (int i = 0; i < c.at("pairs").get<int>(); ++i) {
      const auto seed = c.at("seed").get<std::uint64_t>() + 2 * i;
      SampledFunction u = random_fixture(1, kPi, c.at("N").get<int>(), c.at("band").get<double>(), true, seed);
      SampledFunction v = random_fixture(1, kPi, c.at("N").get<int>(), c.at("band").get<double>(), true, seed + 1);
      scale(u, 0.9 / mod_norm(u, P).value);
      scale(v, 0.9 / mod_norm(v, P).value);
      const LipschitzResult lr = lipschitz_check(u, v, P);
      r.observe(c.at("tol").get<double>() - lr.identity_residual, {double(i)});
      lip.observe(std::isfinite(lr.ratio) ? 0.0 : -kInf, {double(i)});
      ratios.push_back(lr.ratio);
    }
    lip.extra["ratios"] = ratios;
    out.push_back(r.finalize());
    out.push_back(lip.finalize());
  }
  {
    const Json& c = o.at("phase_split");
    VerificationReport r;
    r.kind = "phase_split_reconstruction";
    r.domain = "u = u0 + sum_eps u_eps in 1D and 2D";
    r.tolerance = 0.0;
    const auto seed = c.at("seed").get<std::uint64_t>();
    for (int n : {1, 2}) {
      const SampledFunction u = random_fixture(n, kPi, c.at(n == 1 ? "N_1d" : "N_2d").get<int>(),
                                               c.at(n == 1 ? "band_1d" : "band_2d").get<double>(), true, seed + n);
      for (double R : doubles(c.at("R")))
        r.observe(c.at("tol").get<double>() - split_residual(u, phase_split(u, R)), {double(n), R});
    }
    out.push_back(r.finalize());
  }
  {
    const Json& c = o.at("bound_scan");
    for (const char* regime : {"gevrey", "loglog"}) {
      NormParams P;
      P.mode = FreqMode::Lattice;
      P.weight = std::string(regime) == "gevrey" ? WeightSpec::gevrey(c.at("s").get<double>()) : WeightSpec::loglog();
      std::vector<SampledFunction> fixtures;
      for (int i = 0; i < c.at("fixtures").get<int>(); ++i) {
        SampledFunction u = random_fixture(1, kPi, c.at("N").get<int>(), c.at("band").get<double>(), true,
                                           c.at("seed").get<std::uint64_t>() + i);
        scale(u, 1.0 / mod_norm(u, P).value);
        fixtures.push_back(std::move(u));
      }
      BoundShape shape;
      shape.regime = regime;
      shape.s = c.at("s").get<double>();
      shape.theta = c.at("theta").get<double>();
      shape.N = c.at("N_terms").get<int>();
      const BoundScan scan = bound_scan(fixtures, P, shape, doubles(c.at("lambdas")));
      VerificationReport r;
      r.kind = std::string("bound_scan ") + regime;
      r.domain = "one (b, c) over all fixtures and lambdas";
      r.tolerance = 0.0;
      for (const auto& row : scan.rows) r.observe(row.residual / row.lhs, {double(row.fixture), row.lambda});
      r.extra = {{"b", scan.b}, {"c", scan.c}, {"min_residual", scan.min_residual}};
      out.push_back(r.finalize());
      summary[std::string("bound_scan_") + regime] = scan.to_json();
    }
  }
  {
    const Json& c = o.at("measure");
    const auto lambdas = doubles(c.at("lambdas"));
    for (const char* group : {"finite", "divergent"}) {
      const bool want_finite = std::string(group) == "finite";
      for (const auto& item : c.at(group)) {
        const std::string name = item.at("density").get<std::string>();
        const Density d = make_density(name);
        const MeasureParams mp = measure_params(c, item.at("regime").get<std::string>());
        VerificationReport r;
        r.kind = std::string(want_finite ? "measure_finite " : "measure_divergent ") + name;
        r.domain = "lambda in {" + join(lambdas) + "}, " + mp.regime + " regime";
        r.tolerance = 0.0;
        Json logs = Json::array();
        for (double lam : lambdas) {
          const MeasureResult m = measure_L1(d, lam, mp);
          const double gap = cauchy_gap(m);
          // Not divergent implies gap > 0.
          const double margin = want_finite ? (m.divergent ? -kInf : gap) : (m.divergent ? 0.0 : -gap);
          r.observe(margin, {lam});
          logs.push_back({{"lambda", lam}, {"log_value", m.log_value}, {"divergent", m.divergent}});
        }
        r.extra["results"] = logs;
        out.push_back(r.finalize());
      }
    }
  }
  {
    const Json& c = o.at("quotient");
    const auto xs = doubles(c.at("xi"));
    for (const auto& item : c.at("cases")) {
      const std::string name = item.at("density").get<std::string>();
      MeasureParams mp = measure_params(o.at("measure"), item.at("regime").get<std::string>());
      std::vector<double> q;
      for (double xi : xs) q.push_back(density_quotient(make_density(name), xi, mp));
      out.push_back(scalar_check("density_quotient " + name, "quotient decreasing over xi in {" + join(xs) + "}",
                                 decrease_margin(q), 0.0, {{"xi", xs}, {"quotient", q}}));
    }
  }
  {
    const Json& c = o.at("compose");
    for (const auto& item : c.at("cases")) {
      const std::string fname = item.at("function").get<std::string>();
      NormParams P;
      P.mode = FreqMode::Lattice;
      P.weight = parse_weight(item.at("weight").get<std::string>());
      std::vector<double> norms;
      for (const char* key : {"N_coarse", "N_fine"}) {
        SampledFunction u = random_fixture(1, kPi, c.at(key).get<int>(), c.at("band").get<double>(), true,
                                           c.at("seed").get<std::uint64_t>());
        scale(u, c.at("amplitude").get<double>() / lp_norm(u, kInf));
        for (auto& v : u.values) v += c.at("center").get<double>();
        norms.push_back(mod_norm(compose(fname, u), P).value);
      }
      const double change = std::abs(norms[1] / norms[0] - 1.0);
      const double margin = std::isfinite(norms[0]) && std::isfinite(norms[1])
                                ? c.at("refinement_tol").get<double>() - change
                                : -kInf;
      out.push_back(scalar_check("compose " + fname, "finite norm of f(u), stable under N -> 2N", margin, 0.0,
                                 {{"weight", item.at("weight")}, {"norms", norms}, {"relative_change", change}}));
    }
  }
  return summary;
}

// ---------------------------------------------------------------- constants

Json constants_defaults(bool) {
  return {{"gamma_alpha", {0.5, 1.0, 1.5, 2.0, 3.5, 5.0}},
          {"gamma_t", {0.0, 0.1, 1.0, 5.0, 20.0, 50.0}},
          {"gamma_tol", 1e-9},
          {"inverse_alpha", {0.5, 1.0, 2.0, 3.0}},
          {"inverse_u", {1e-1, 1e-4, 1e-8, 1e-12}},
          {"inverse_tol", 1e-8},
          {"asymptotic_u", {1e-4, 1e-8, 1e-12}},
          {"asymptotic_last_within", 0.2},
          {"R_ladder", {4.0, 8.0, 16.0, 32.0}},
          {"lattice_tail_rel", 1e-6}};
}

Json run_constants(const Json& o, std::vector<VerificationReport>& out) {
  const double gtol = o.at("gamma_tol").get<double>();
  {
    VerificationReport r;
    r.kind = "gamma_recurrence_closed_forms";
    r.domain = "Gamma(a+1,t) = a Gamma(a,t) + t^a e^{-t}; a = 1, 2 closed forms; Gamma(1/2, 0) = sqrt(pi)";
    r.tolerance = 0.0;
    for (double a : doubles(o.at("gamma_alpha")))
      for (double t : doubles(o.at("gamma_t"))) {
        const double lhs = upper_incomplete_gamma(a + 1.0, t);
        const double rhs = a * upper_incomplete_gamma(a, t) + std::pow(t, a) * std::exp(-t);
        r.observe(gtol - std::abs(lhs - rhs) / std::abs(rhs), {a, t});
      }
    for (double t : doubles(o.at("gamma_t"))) {
      const double e1 = std::exp(-t), e2 = (1.0 + t) * std::exp(-t);
      r.observe(gtol - std::abs(upper_incomplete_gamma(1.0, t) - e1) / e1, {1.0, t});
      r.observe(gtol - std::abs(upper_incomplete_gamma(2.0, t) - e2) / e2, {2.0, t});
    }
    r.observe(gtol - std::abs(upper_incomplete_gamma(0.5, 0.0) / std::sqrt(kPi) - 1.0), {0.5, 0.0});
    out.push_back(r.finalize());
  }
  {
    VerificationReport r;
    r.kind = "inverse_g_roundtrip";
    r.domain = "|f(g(u)) - u| / u";
    r.tolerance = 0.0;
    for (double a : doubles(o.at("inverse_alpha")))
      for (double u : doubles(o.at("inverse_u"))) {
        const double g = inverse_g(a, u);
        r.observe(o.at("inverse_tol").get<double>() - std::abs(upper_incomplete_gamma(a, g) - u) / u, {a, u});
      }
    out.push_back(r.finalize());
  }
  Json summary = Json::object();
  {
    std::vector<double> q;
    for (double u : doubles(o.at("asymptotic_u"))) q.push_back(inverse_g(2.0, u) / std::log(1.0 / u));
    std::vector<double> dist;
    for (double v : q) dist.push_back(std::abs(v - 1.0));
    const double margin =
        std::min(decrease_margin(dist), o.at("asymptotic_last_within").get<double>() - dist.back());
    out.push_back(scalar_check("inverse_g_asymptotics", "g(u)/log(1/u) approaches 1 for alpha = 2", margin, 0.0,
                               {{"u", o.at("asymptotic_u")}, {"quotient", q}}));
    summary["g_over_log"] = q;
  }
  {
    const auto Rs = doubles(o.at("R_ladder"));
    std::vector<double> E, F, G;
    for (double R : Rs) {
      E.push_back(constant_E_R(2.0, 2.0, 1, R));
      F.push_back(constant_F_R(2.0, 2.0, 1, R));
      G.push_back(constant_G_RN(1, R));
    }
    out.push_back(scalar_check("E_R_F_R_decreasing", "E_R, F_R (s = 2, q = 2, n = 1) decrease in R",
                               std::min(decrease_margin(E), decrease_margin(F)), 0.0,
                               {{"R", Rs}, {"E_R", E}, {"F_R", F}}));
    out.push_back(scalar_check("G_RN_decreasing", "G_{R,1} decreases in R", decrease_margin(G), 0.0,
                               {{"R", Rs}, {"G_R1", G}}));
  }
  {
    const double s_ll = analyze_weight().s_admissible;
    const LatticeSum ll = constant_c3_loglog(s_ll, 2.0, 1);
    const LatticeSum gv = constant_c3_gevrey(2.0, 2.0, 1);
    const double tol = o.at("lattice_tail_rel").get<double>();
    for (const auto& [name, sum] : {std::pair{"c3_loglog", ll}, std::pair{"c3_gevrey", gv}}) {
      const double margin = std::isfinite(sum.value) ? tol - sum.tail_bound / sum.value : -kInf;
      out.push_back(scalar_check(name, "lattice sum finite with relative tail bound", margin, 0.0,
                                 {{"value", sum.value}, {"tail_bound", sum.tail_bound}, {"cutoff", sum.cutoff}}));
    }
  }
  summary["table"] = constants_table();
  return summary;
}

// ---------------------------------------------------------------- dispatch

using Runner = Json (*)(const Json&, std::vector<VerificationReport>&);
using Defaults = Json (*)(bool);

const std::map<std::string, std::pair<Defaults, Runner>>& families() {
  static const std::map<std::string, std::pair<Defaults, Runner>> table = {
      {"weights", {weights_defaults, run_weights}},
      {"partition", {partition_defaults, run_partition}},
      {"algebra", {algebra_defaults, run_algebra}},
      {"subalgebra", {subalgebra_defaults, run_subalgebra}},
      {"superposition", {superposition_defaults, run_superposition}},
      {"constants", {constants_defaults, run_constants}},
  };
  return table;
}

bool quick_profile(const std::string& profile) {
  if (profile == "quick") return true;
  if (profile == "full") return false;
  throw InvalidArgument("profile must be quick or full");
}

Json envelope(const std::string& id, const std::string& family, const std::string& profile, const Json& options,
              const Json& summary, const std::vector<VerificationReport>& reports) {
  bool passed = true;
  Json reps = Json::array();
  for (const auto& r : reports) {
    passed = passed && r.passed;
    reps.push_back(to_json(r));
  }
  Json j = {{"id", id}, {"family", family}, {"profile", profile}, {"passed", passed}, {"options", options}};
  j["summary"] = summary;
  j["reports"] = reps;
  return j;
}

}  // namespace

Json default_options(const std::string& family, const std::string& profile) {
  const auto it = families().find(family);
  if (it == families().end()) throw InvalidArgument("unknown verification family '" + family + "'");
  return it->second.first(quick_profile(profile));
}

Json verify_family(const std::string& family, const std::string& profile, const Json& overrides) {
  Json options = default_options(family, profile);
  if (!overrides.is_object()) throw InvalidArgument("overrides must be a JSON object");
  options.merge_patch(overrides);
  std::vector<VerificationReport> reports;
  Json summary;
  try {
    summary = families().at(family).second(options, reports);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad option: ") + e.what());
  }
  return envelope("verify/" + family + "/" + profile, family, profile, options, summary, reports);
}

// ---------------------------------------------------------------- special functions

namespace {

Json special_defaults(const std::string& which) {
  if (which == "up")
    return {{"integral_tol", 1e-6},
            {"agreement_points", 1025},
            {"agreement_tol", 1e-5},
            {"derivative_points", 513},
            {"derivative_tol", 1e-4},
            {"decay_xi", {4.0, 8.0, 16.0, 32.0, 64.0}}};
  if (which == "bump")
    return {{"mu", -1.0},
            {"decay_xi", {10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0, 110.0, 120.0, 130.0,
                          140.0, 150.0, 160.0, 170.0, 180.0, 190.0, 200.0}},
            {"mass_mu", {-1.0, -2.0, -3.0}},
            {"mass_tol", 1e-8}};
  throw InvalidArgument("special check must be up or bump");
}

Json run_up(const Json& o, std::vector<VerificationReport>& out) {
  const auto I = detail::adaptive_gauss([](double x) { return up_eval(x); }, 0.0, 2.0, 1e-12, 1e-14);
  out.push_back(scalar_check("up_integral", "|int up - 1|", o.at("integral_tol").get<double>() - std::abs(I.value - 1.0),
                             0.0, {{"integral", I.value}}));
  {
    VerificationReport r;
    r.kind = "up_convolution_vs_fourier";
    r.domain = "uniform grid on [0, 2]";
    const int M = o.at("agreement_points").get<int>();
    for (int i = 0; i < M; ++i) {
      const double x = 2.0 * i / (M - 1);
      r.observe(o.at("agreement_tol").get<double>() -
                    std::abs(up_eval(x, UpMethod::Convolution) - up_eval(x, UpMethod::Fourier)),
                {x});
    }
    out.push_back(r.finalize());
  }
  {
    // Checked on the centred translate: up'(x) = 2 up(2x) - 2 up(2x - 2) for the [0, 2] version.
    VerificationReport r;
    r.kind = "up_derivative_identity";
    r.domain = "uniform grid on [0, 2]";
    const int M = o.at("derivative_points").get<int>();
    for (int i = 0; i < M; ++i) {
      const double x = 2.0 * i / (M - 1);
      const double rhs = 2.0 * up_eval(2.0 * x) - 2.0 * up_eval(2.0 * x - 2.0);
      r.observe(o.at("derivative_tol").get<double>() - std::abs(up_derivative(x) - rhs), {x});
    }
    out.push_back(r.finalize());
  }
  {
    VerificationReport r;
    r.kind = "up_decay_bound";
    r.domain = "|F up(xi)| <= (2 pi)^{-1/2} |xi|^{1 - log2|xi| / 2}";
    for (double xi : doubles(o.at("decay_xi"))) {
      const double b = up_decay_bound(xi);
      r.observe((b - std::abs(up_fourier(xi).value)) / b, {xi});
    }
    out.push_back(r.finalize());
  }
  return {{"integral", I.value}};
}

Json run_bump(const Json& o, std::vector<VerificationReport>& out) {
  const double mu = o.at("mu").get<double>();
  const DecayFit fit = gevrey_bump_decay(mu, doubles(o.at("decay_xi")));
  out.push_back(scalar_check("bump_decay_fit", "fit ok with eps > 0", fit.ok && fit.eps > 0.0 ? fit.eps : -kInf, 0.0,
                             {{"mu", mu}, {"c", fit.c}, {"eps", fit.eps}, {"s", fit.s},
                              {"max_violation", fit.max_violation}}));
  VerificationReport r;
  r.kind = "bump_transform_at_zero";
  r.domain = "F phi(0) = (2 pi)^{-1/2} int phi";
  for (double m : doubles(o.at("mass_mu"))) {
    const auto I = detail::adaptive_gauss([m](double t) { return gevrey_bump(m, t); }, 0.0, 1.0, 1e-13, 1e-300);
    const double want = I.value / std::sqrt(2.0 * kPi);
    r.observe(o.at("mass_tol").get<double>() - std::abs(gevrey_bump_fourier(m, 0.0).real() - want) / want, {m});
  }
  out.push_back(r.finalize());
  return {{"mu", mu}, {"c", fit.c}, {"eps", fit.eps}, {"ok", fit.ok}};
}

}  // namespace

Json special_check(const std::string& which, const Json& overrides) {
  Json options = special_defaults(which);
  if (!overrides.is_object()) throw InvalidArgument("overrides must be a JSON object");
  options.merge_patch(overrides);
  std::vector<VerificationReport> reports;
  Json summary;
  try {
    summary = which == "up" ? run_up(options, reports) : run_bump(options, reports);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad option: ") + e.what());
  }
  return envelope("special/" + which, "special", "default", options, summary, reports);
}

// ---------------------------------------------------------------- corpus and reports

CorpusSpec corpus_spec_from_json(const Json& j) {
  CorpusSpec s;
  try {
    s.n = j.value("n", s.n);
    s.L = j.value("L", s.L);
    s.N = j.value("N", s.N);
    s.band_min = j.value("band_min", s.band_min);
    s.band_max = j.value("band_max", s.band_max);
    s.decay = j.value("decay", s.decay);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad corpus spec: ") + e.what());
  }
  if (!(s.band_min > 0.0) || s.band_max < s.band_min) throw InvalidArgument("corpus bands must satisfy 0 < min <= max");
  if (s.decay < 0.0) throw InvalidArgument("corpus decay must be >= 0");
  return s;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw IoError("write failed: " + path.string());
}

}  // namespace

Json corpus_generate(const std::string& dir, std::uint64_t seed, int count, const CorpusSpec& spec) {
  if (count < 0) throw InvalidArgument("count must be >= 0");
  corpus_spec_from_json({{"band_min", spec.band_min}, {"band_max", spec.band_max}, {"decay", spec.decay}});
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());

  detail::SplitMix64 rng(seed);
  Json files = Json::array();
  for (int i = 0; i < count; ++i) {
    const std::uint64_t fseed = rng.next();
    const double band = spec.band_min + (spec.band_max - spec.band_min) * rng.uniform();
    SynthParams p;
    p.band = band;
    p.decay = spec.decay;
    const SampledFunction f = synthesize("random_bandlimited", spec.n, spec.L, spec.N, p, fseed);
    char name[32];
    std::snprintf(name, sizeof name, "fixture_%04d.csv", i);
    save_function(f, (fs::path(dir) / name).string());
    files.push_back({{"file", name}, {"seed", fseed}, {"band", band}, {"decay", spec.decay}});
  }
  Json manifest = {{"seed", seed},
                   {"count", count},
                   {"spec",
                    {{"n", spec.n},
                     {"L", spec.L},
                     {"N", spec.N},
                     {"band_min", spec.band_min},
                     {"band_max", spec.band_max},
                     {"decay", spec.decay}}},
                   {"files", files}};
  write_text(fs::path(dir) / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

Json environment_fingerprint() {
  Json j;
#if defined(__clang__)
  j["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  j["compiler"] = std::string("gcc ") + __VERSION__;
#else
  j["compiler"] = "unknown";
#endif
  j["cplusplus"] = static_cast<long>(__cplusplus);
  j["fftw"] = std::string(fftw_version);
#if defined(__linux__)
  j["os"] = "linux";
#elif defined(__APPLE__)
  j["os"] = "darwin";
#else
  j["os"] = "other";
#endif
  j["library_version"] = "0.1.0";
  return j;
}

Json report_merge(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir);
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir, ec))
    if (e.is_regular_file() && e.path().extension() == ".json") paths.push_back(e.path());
  if (ec) throw IoError("cannot list " + dir + ": " + ec.message());
  std::sort(paths.begin(), paths.end());

  Json malformed = Json::array(), warnings = Json::array(), failing = Json::array(), ids = Json::array();
  Json fam = Json::object();
  std::set<std::string> seen;
  bool passed = true;
  for (const auto& path : paths) {
    Json j;
    try {
      std::ifstream is(path);
      j = Json::parse(is);
      if (!j.is_object() || !j.contains("id") || !j.contains("passed") || !j.at("passed").is_boolean())
        throw std::runtime_error("missing id or passed");
    } catch (const std::exception&) {
      malformed.push_back(path.filename().string());
      continue;
    }
    const std::string id = j.at("id").get<std::string>();
    if (!seen.insert(id).second) {
      warnings.push_back("duplicate id '" + id + "' in " + path.filename().string() + " ignored");
      continue;
    }
    ids.push_back(id);
    const bool ok = j.at("passed").get<bool>();
    passed = passed && ok;
    if (!ok) failing.push_back(id);
    const std::string family = j.value("family", std::string("unknown"));
    Json& f = fam[family];
    if (f.is_null()) f = {{"reports", 0}, {"passed", true}, {"worst_margin", nullptr}, {"worst_check", nullptr}};
    f["reports"] = f["reports"].get<int>() + 1;
    f["passed"] = f["passed"].get<bool>() && ok;
    if (j.contains("reports") && j.at("reports").is_array()) {
      for (const auto& r : j.at("reports")) {
        try {
          const VerificationReport vr = report_from_json(r);
          if (f["worst_margin"].is_null() || vr.min_margin < f["worst_margin"].get<double>()) {
            f["worst_margin"] = vr.min_margin;
            f["worst_check"] = id + ":" + vr.kind;
          }
        } catch (const std::exception&) {
          warnings.push_back("unreadable check in " + path.filename().string());
        }
      }
    }
  }
  // Non-finite margins are not representable in JSON numbers.
  for (auto& [name, f] : fam.items())
    if (f["worst_margin"].is_number() && !std::isfinite(f["worst_margin"].get<double>()))
      f["worst_margin"] = f["worst_margin"].get<double>() > 0 ? "inf" : "-inf";

  Json out = {{"reports", ids.size()}, {"passed", passed}, {"ids", ids}, {"failing", failing}};
  out["families"] = fam;
  out["malformed"] = malformed;
  out["warnings"] = warnings;
  out["environment"] = environment_fingerprint();
  return out;
}

Json norm_record(const SampledFunction& f, const NormParams& params) {
  return to_json(mod_norm(f, params), params);
}

}  // namespace subexp
