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

// Acceptance gate: one PASS/FAIL line per criterion. Usage: subexp_acceptance <path to subexp_cli>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "subexp/campaign.hpp"
#include "subexp/weights.hpp"

using namespace subexp;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Json> reports_with_prefix(const Json& envelope, const std::string& prefix) {
  std::vector<Json> out;
  for (const auto& r : envelope.at("reports"))
    if (r.at("kind").get<std::string>().rfind(prefix, 0) == 0) out.push_back(r);
  return out;
}

// Every listed prefix must match at least one report and all matches must pass.
bool prefixes_pass(const Json& envelope, const std::vector<std::string>& prefixes, std::ostringstream& why) {
  bool ok = true;
  for (const auto& p : prefixes) {
    const auto rs = reports_with_prefix(envelope, p);
    if (rs.empty()) {
      why << " missing:" << p;
      ok = false;
    }
    for (const auto& r : rs)
      if (!r.at("passed").get<bool>()) {
        why << " failed:" << r.at("kind").get<std::string>();
        ok = false;
      }
  }
  return ok;
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome criterion_1() {
  const auto t = std::chrono::steady_clock::now();
  const WeightAnalysis a = analyze_weight();
  const double dt = seconds_since(t);
  const bool ok = a.t0 > 16.4449 && a.t0 < 16.4451 && a.p0 > 0.410247 && a.p0 < 0.410248 && dt < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "t0=%.9f p0=%.9f time=%.3fs", a.t0, a.p0, dt);
  return {ok, buf};
}

Outcome criterion_2() {
  const auto t = std::chrono::steady_clock::now();
  double worst = 1e300;
  std::size_t points = 0;
  for (double s : {1.2, 1.5, 2.0, 3.0}) {
    for (auto [n, radius] : {std::pair{1, 200}, std::pair{2, 40}}) {
      const VerificationReport r = verify_gevrey_inequality({s, n, radius});
      worst = std::min(worst, r.min_margin);
      points += r.points_checked;
    }
  }
  const double dt = seconds_since(t);
  char buf[160];
  std::snprintf(buf, sizeof buf, "pairs=%zu min_margin=%.3e time=%.2fs", points, worst, dt);
  return {worst >= -kLogDomainTolerance && dt < 30.0, buf};
}

Outcome criterion_3() {
  const auto t = std::chrono::steady_clock::now();
  LogLogDomain d;  // s = 1 - p0, grid [0, 2000]^2 step 0.5, 1e5 random points in [0, 1e6]^2
  const VerificationReport r = verify_loglog_inequality(d);
  LogLogDomain probe = d;
  probe.s = 0.99;
  const VerificationReport pr = verify_loglog_inequality(probe);
  const double dt = seconds_since(t);
  const bool ok = d.grid_max == 2000.0 && d.grid_step == 0.5 && d.random_points == 100000 &&
                  r.min_margin >= -kLogDomainTolerance && pr.min_margin < -kLogDomainTolerance && dt < 60.0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "points=%zu min_margin=%.3e probe(s=0.99) min_margin=%.3e time=%.2fs",
                r.points_checked, r.min_margin, pr.min_margin, dt);
  return {ok, buf};
}

Outcome criterion_4(const Json& part) {
  std::ostringstream why;
  const Json& o = part.at("options");
  bool ok = o.at("points_1d").get<int>() >= 10000 && o.at("exact_tol").get<double>() <= 1e-14 &&
            o.at("translation_tol").get<double>() <= 1e-14;
  ok = prefixes_pass(part, {"partition_1d", "partition_2d", "lattice_exactness", "translation"}, why) && ok;
  for (const auto& r : reports_with_prefix(part, "partition_1d"))
    for (const auto& c : r.at("checks"))
      if (c.at("kind") == "sum_to_one") {
        ok = ok && c.at("tolerance").get<double>() <= 1e-10;
        why << " sum_to_one margin=" << c.at("min_margin");
      }
  return {ok, why.str()};
}

Outcome criterion_5(const Json& alg) {
  std::ostringstream why;
  const Json& ne = alg.at("options").at("norm_equivalence");
  bool ok = ne.at("fixtures").get<int>() == 20 && ne.at("max_spread").get<double>() <= 20.0 &&
            ne.at("stability").get<double>() <= 0.10 && ne.at("weight") == "gevrey:2";
  ok = prefixes_pass(alg, {"norm_equivalence_spread", "norm_equivalence_stability"}, why) && ok;
  why << " interval coarse=" << alg.at("summary").at("norm_equivalence").at("coarse").dump()
      << " fine=" << alg.at("summary").at("norm_equivalence").at("fine").dump();
  return {ok, why.str()};
}

Outcome criterion_6(const Json& alg, const Json& sub) {
  std::ostringstream why;
  bool ok = alg.at("options").at("pairs").get<int>() >= 50;
  ok = prefixes_pass(alg, {"algebra_ratio gevrey:2", "algebra_ratio loglog", "algebra_ratio poly:2"}, why) && ok;
  ok = prefixes_pass(sub, {"subalgebra_monotone gevrey", "subalgebra_total_decrease gevrey"}, why) && ok;
  for (const auto& [w, v] : alg.at("summary").items())
    if (v.contains("max_ratio_fine")) why << " " << w << "=" << v.at("max_ratio_fine").get<double>();
  for (const auto& r : reports_with_prefix(sub, "subalgebra_total_decrease gevrey"))
    why << " gevrey_decrease=" << r.at("extra").dump();
  return {ok, why.str()};
}

Outcome criterion_7(const Json& cst) {
  std::ostringstream why;
  const bool ok =
      prefixes_pass(cst, {"gamma_recurrence_closed_forms", "inverse_g_roundtrip", "inverse_g_asymptotics"}, why);
  for (const auto& r : reports_with_prefix(cst, "inverse_g_asymptotics")) why << " " << r.at("extra").dump();
  return {ok, why.str()};
}

Outcome criterion_8(const Json& up, const Json& bump) {
  std::ostringstream why;
  bool ok = prefixes_pass(up, {"up_integral", "up_convolution_vs_fourier", "up_derivative_identity", "up_decay_bound"},
                          why);
  ok = prefixes_pass(bump, {"bump_decay_fit"}, why) && ok;
  for (const auto& r : reports_with_prefix(bump, "bump_decay_fit")) why << " eps_margin=" << r.at("min_margin");
  return {ok, why.str()};
}

Outcome criterion_9(const Json& sup) {
  std::ostringstream why;
  const Json& o = sup.at("options");
  bool ok = o.at("bound_scan").at("fixtures").get<int>() == 5 && o.at("exp_difference").at("tol").get<double>() <= 1e-12 &&
            o.at("phase_split").at("tol").get<double>() <= 1e-10 &&
            o.at("product_identity").at("tol").get<double>() <= 1e-12 &&
            o.at("product_identity").at("max_terms").get<int>() >= 8;
  ok = prefixes_pass(sup,
                     {"bound_scan gevrey", "bound_scan loglog", "exp_difference_identity", "phase_split_reconstruction",
                      "product_identity", "measure_finite gevrey_bump", "measure_finite up"},
                     why) &&
       ok;
  for (const char* key : {"bound_scan_gevrey", "bound_scan_loglog"})
    if (sup.at("summary").contains(key))
      why << " " << key << ".min_residual=" << sup.at("summary").at(key).at("min_residual");
  return {ok, why.str()};
}

Outcome criterion_10(const std::string& cli) {
  std::ostringstream why;
  bool ok = true;
  for (auto [profile, limit] : {std::pair{"full", 600.0}, std::pair{"quick", 120.0}}) {
    const std::string cmd = "\"" + cli + "\" verify all --profile " + profile + " > /dev/null 2>&1";
    const auto t = std::chrono::steady_clock::now();
    const int rc = std::system(cmd.c_str());
    const double dt = seconds_since(t);
    ok = ok && rc == 0 && dt < limit;
    why << " " << profile << ": exit=" << rc << " time=" << dt << "s (limit " << limit << "s)";
  }
  return {ok, why.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: subexp_acceptance <subexp_cli>\n";
    return 2;
  }
  std::vector<Outcome> results;
  auto run = [&](const std::function<Outcome()>& fn) {
    try {
      results.push_back(fn());
    } catch (const std::exception& e) {
      results.push_back({false, std::string("exception: ") + e.what()});
    }
    const std::size_t k = results.size();
    std::cout << "criterion " << k << ": " << (results.back().ok ? "PASS" : "FAIL") << " " << results.back().detail
              << std::endl;
  };

  run(criterion_1);
  run(criterion_2);
  run(criterion_3);
  run([] { return criterion_4(verify_family("partition", "full")); });
  const Json alg = verify_family("algebra", "full");
  run([&] { return criterion_5(alg); });
  run([&] { return criterion_6(alg, verify_family("subalgebra", "full")); });
  run([] { return criterion_7(verify_family("constants", "full")); });
  run([] { return criterion_8(special_check("up"), special_check("bump")); });
  run([] { return criterion_9(verify_family("superposition", "full")); });
  run([&] { return criterion_10(argv[1]); });

  int failed = 0;
  for (const auto& r : results) failed += r.ok ? 0 : 1;
  std::cout << (failed ? "acceptance: FAIL (" + std::to_string(failed) + " criteria)" : "acceptance: PASS")
            << std::endl;
  return failed ? 1 : 0;
}
