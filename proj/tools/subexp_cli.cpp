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

// Command-line front end. JSON goes to stdout, human-readable summaries to
// stderr. Exit codes: 0 all checks passed, 1 a check failed or a numerical
// error occurred, 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subexp/subexp.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

const char* const kFamilies[] = {"weights", "partition", "algebra", "subalgebra", "superposition", "constants"};

struct Failure {
  int exit_code;
};

// Owns a string returned by the C API.
struct CString {
  char* p = nullptr;
  ~CString() { sx_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Function {
  sx_function* p = nullptr;
  ~Function() { sx_function_free(p); }
};

struct Globals {
  std::string config_path;
  std::string output_path;
  bool timing = false;
  int workers = 0;
  Json config = Json::object();
};

[[noreturn]] void api_failure(sx_status s) {
  const Json err = {{"error", {{"status", sx_status_name(s)}, {"message", sx_last_error()}}}};
  std::cout << err.dump(2) << "\n";
  std::cerr << "error: " << sx_last_error() << "\n";
  throw Failure{s == SX_ERR_INVALID_ARGUMENT || s == SX_ERR_IO ? kExitUsage : kExitFail};
}

void check(sx_status s) {
  if (s != SX_OK) api_failure(s);
}

[[noreturn]] void usage_failure(const std::string& message) {
  const Json err = {{"error", {{"status", "usage"}, {"message", message}}}};
  std::cout << err.dump(2) << "\n";
  std::cerr << "error: " << message << "\n";
  throw Failure{kExitUsage};
}

Json parse_object(const std::string& text, const std::string& what) {
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) usage_failure(what + " must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    usage_failure(what + ": " + e.what());
  }
}

Json config_section(const Globals& g, const std::string& a, const std::string& b = "") {
  if (!g.config.contains(a)) return Json::object();
  const Json& s = g.config.at(a);
  if (b.empty()) return s;
  return s.contains(b) ? s.at(b) : Json::object();
}

void emit(const Globals& g, const Json& j) {
  const std::string text = j.dump(2);
  if (!g.output_path.empty()) {
    const std::filesystem::path out(g.output_path);
    std::error_code ec;
    if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path(), ec);
    std::ofstream os(out, std::ios::binary);
    if (!os) usage_failure("cannot write " + g.output_path);
    os << text << "\n";
  }
  std::cout << text << "\n";
}

void summarize(const Json& report) {
  const bool passed = report.value("passed", false);
  std::size_t n = 0;
  std::vector<std::string> failing;
  for (const auto& r : report.value("reports", Json::array())) {
    ++n;
    if (!r.value("passed", false)) failing.push_back(r.value("kind", std::string("?")));
  }
  std::cerr << report.value("id", std::string("report")) << ": " << (passed ? "PASS" : "FAIL") << " (" << n
            << " checks)\n";
  for (const auto& f : failing) std::cerr << "  failed: " << f << "\n";
}

void write_bound_scan_csv(const Json& summary, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const char* regime : {"gevrey", "loglog"}) {
    const std::string key = std::string("bound_scan_") + regime;
    if (!summary.contains(key)) continue;
    const std::string path = (std::filesystem::path(dir) / (key + ".csv")).string();
    std::ofstream os(path);
    if (!os) usage_failure("cannot write " + path);
    os.precision(17);
    os << "fixture,lambda,norm_u,lhs,fitted_bound,residual\n";
    for (const auto& r : summary.at(key).at("rows"))
      os << r.at("fixture").get<int>() << ',' << r.at("lambda").get<double>() << ',' << r.at("norm_u").get<double>()
         << ',' << r.at("lhs").get<double>() << ',' << r.at("fitted_bound").get<double>() << ','
         << r.at("residual").get<double>() << '\n';
    std::cerr << "wrote " << path << "\n";
  }
}

Json run_family(const Globals& g, const std::string& family, const std::string& profile, const Json& patch) {
  Json overrides = config_section(g, "verify", family);
  overrides.merge_patch(patch);
  CString out;
  int passed = 0;
  check(sx_verify(family.c_str(), profile.c_str(), overrides.dump().c_str(), &out.p, &passed));
  return Json::parse(out.str());
}

int cmd_verify(const Globals& g, const std::string& family, const std::string& profile, const std::string& set_text,
               const std::string& csv_dir) {
  const Json set = set_text.empty() ? Json::object() : parse_object(set_text, "--set");
  Json result;
  if (family == "all") {
    Json fams = Json::array();
    bool passed = true;
    for (const char* f : kFamilies) {
      Json r = run_family(g, f, profile, set.contains(f) ? set.at(f) : Json::object());
      summarize(r);
      passed = passed && r.value("passed", false);
      if (f == std::string("superposition") && !csv_dir.empty()) write_bound_scan_csv(r.at("summary"), csv_dir);
      fams.push_back(std::move(r));
    }
    result = {{"id", "verify/all/" + profile}, {"family", "all"}, {"profile", profile}, {"passed", passed}};
    result["families"] = fams;
  } else {
    // A --set object may be given either flat or keyed by family.
    const bool keyed = set.size() == 1 && set.contains(family) && set.at(family).is_object();
    result = run_family(g, family, profile, keyed ? set.at(family) : set);
    summarize(result);
    if (family == "superposition" && !csv_dir.empty()) write_bound_scan_csv(result.at("summary"), csv_dir);
  }
  emit(g, result);
  return result.value("passed", false) ? kExitPass : kExitFail;
}

struct NormArgs {
  std::string file;
  std::optional<std::string> p, q, weight, mode;
  std::optional<int> k_max;
};

Json exponent_value(const std::string& text) {
  if (text == "inf") return "inf";
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    usage_failure("exponent must be a number or inf, got '" + text + "'");
  }
}

int cmd_norm(const Globals& g, const NormArgs& a) {
  Json params = config_section(g, "norm");
  if (a.p) params["p"] = exponent_value(*a.p);
  if (a.q) params["q"] = exponent_value(*a.q);
  if (a.weight) params["weight"] = *a.weight;
  if (a.mode) params["mode"] = *a.mode;
  if (a.k_max) params["k_max"] = *a.k_max;
  Function f;
  check(sx_function_load(a.file.c_str(), &f.p));
  CString rec;
  double value = 0.0;
  check(sx_mod_norm(f.p, params.dump().c_str(), &value, &rec.p));
  Json j = Json::parse(rec.str());
  j["file"] = a.file;
  for (const auto& w : j.at("warnings")) std::cerr << "warning: " << w.get<std::string>() << "\n";
  std::cerr << "norm = " << value << "\n";
  emit(g, j);
  return kExitPass;
}

int cmd_constants(const Globals& g) {
  CString out;
  check(sx_constants_table(&out.p));
  emit(g, Json::parse(out.str()));
  return kExitPass;
}

int cmd_special(const Globals& g, const std::string& which, bool run_check, const std::string& set_text) {
  if (run_check) {
    Json overrides = config_section(g, "special", which);
    if (!set_text.empty()) overrides.merge_patch(parse_object(set_text, "--set"));
    CString out;
    int passed = 0;
    check(sx_special_check(which.c_str(), overrides.dump().c_str(), &out.p, &passed));
    const Json j = Json::parse(out.str());
    summarize(j);
    emit(g, j);
    return passed ? kExitPass : kExitFail;
  }
  // Without --check: a small value table for plotting or inspection.
  Json rows = Json::array();
  if (which == "up") {
    for (int i = 0; i <= 20; ++i) {
      const double x = 0.1 * i;
      double v = 0.0, re = 0.0, im = 0.0;
      check(sx_up_eval(x, SX_UP_CONVOLUTION, &v));
      check(sx_up_fourier(4.0 * i, &re, &im));
      rows.push_back({{"x", x}, {"up", v}, {"xi", 4.0 * i}, {"fourier_re", re}, {"fourier_im", im}});
    }
  } else if (which == "bump") {
    for (int i = 0; i <= 20; ++i) {
      const double t = 0.05 * i;
      double v = 0.0, re = 0.0, im = 0.0;
      check(sx_gevrey_bump(-1.0, t, &v));
      check(sx_gevrey_bump_fourier(-1.0, 10.0 * i, &re, &im));
      rows.push_back({{"t", t}, {"phi", v}, {"xi", 10.0 * i}, {"fourier_re", re}, {"fourier_im", im}});
    }
  } else {
    usage_failure("special expects up or bump");
  }
  emit(g, {{"function", which}, {"values", rows}});
  return kExitPass;
}

int cmd_corpus(const Globals& g, const std::string& dir, std::uint64_t seed, int count, const std::string& profile,
               const std::string& spec_text) {
  Json spec = config_section(g, "corpus");
  if (!spec_text.empty()) spec.merge_patch(parse_object(spec_text, "--spec"));
  if (profile == "quick" && count > 10) {
    std::cerr << "quick profile: count capped at 10\n";
    count = 10;
  }
  CString out;
  check(sx_corpus_generate(dir.c_str(), seed, count, spec.dump().c_str(), &out.p));
  std::cerr << "wrote " << count << " fixtures to " << dir << "\n";
  emit(g, Json::parse(out.str()));
  return kExitPass;
}

int cmd_report_merge(const Globals& g, const std::string& dir) {
  CString out;
  check(sx_report_merge(dir.c_str(), &out.p));
  const Json j = Json::parse(out.str());
  std::cerr << "merged " << j.at("reports").get<int>() << " reports: " << (j.at("passed").get<bool>() ? "PASS" : "FAIL")
            << "\n";
  for (const auto& m : j.at("malformed")) std::cerr << "  malformed: " << m.get<std::string>() << "\n";
  for (const auto& w : j.at("warnings")) std::cerr << "  warning: " << w.get<std::string>() << "\n";
  emit(g, j);
  return j.at("passed").get<bool>() ? kExitPass : kExitFail;
}

void load_config(Globals& g) {
  if (g.config_path.empty()) return;
  std::ifstream is(g.config_path);
  if (!is) usage_failure("cannot read config " + g.config_path);
  try {
    g.config = Json::parse(is);
  } catch (const Json::parse_error& e) {
    usage_failure("config: " + std::string(e.what()));
  }
  if (!g.config.is_object()) usage_failure("config must be a JSON object");
  if (g.workers == 0 && g.config.contains("workers")) g.workers = g.config.at("workers").get<int>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subexp: weighted modulation spaces with subexponential weights"};
  app.set_version_flag("--version", std::string(sx_version()));
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "JSON config file overriding defaults")->check(CLI::ExistingFile);
  app.add_option("-o,--output", g.output_path, "Also write the JSON result to this file");
  app.add_flag("--timing", g.timing, "Print elapsed wall time to stderr");
  app.add_option("--workers", g.workers, "Worker threads (default: SUBEXP_WORKERS or hardware)")
      ->check(CLI::PositiveNumber);

  NormArgs norm;
  auto* c_norm = app.add_subcommand("norm", "Modulation norm of a function file");
  c_norm->add_option("file", norm.file, "Function file")->required();
  c_norm->add_option("--p", norm.p, "Inner exponent (number or inf)");
  c_norm->add_option("--q", norm.q, "Outer exponent (number or inf)");
  c_norm->add_option("--weight", norm.weight, "poly:<s> | gevrey:<s> | loglog | exp:<lambda>");
  c_norm->add_option("--mode", norm.mode, "lattice | continuum")->check(CLI::IsMember({"lattice", "continuum"}));
  c_norm->add_option("--k-max", norm.k_max, "Frequency radius (default: largest the grid supports)");

  std::string family, profile = "full", set_text, csv_dir;
  auto* c_verify = app.add_subcommand("verify", "Run a verification campaign");
  std::vector<std::string> choices(std::begin(kFamilies), std::end(kFamilies));
  choices.push_back("all");
  c_verify->add_option("family", family, "Check family or all")->required()->check(CLI::IsMember(choices));
  c_verify->add_option("--profile", profile, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  c_verify->add_option("--set", set_text, "JSON merge patch over the profile options");
  c_verify->add_option("--csv-dir", csv_dir, "Write bound-scan CSV tables here (superposition)");

  bool table = false;
  auto* c_const = app.add_subcommand("constants", "Explicit constants");
  c_const->add_flag("--table", table, "Print the constants table");

  std::string which, special_set;
  bool run_check = false;
  auto* c_special = app.add_subcommand("special", "Special functions");
  c_special->add_option("which", which, "up | bump")->required()->check(CLI::IsMember({"up", "bump"}));
  c_special->add_flag("--check", run_check, "Run the property checks");
  c_special->add_option("--set", special_set, "JSON merge patch over the check options");

  auto* c_corpus = app.add_subcommand("corpus", "Fixture corpus");
  c_corpus->require_subcommand(1);
  auto* c_gen = c_corpus->add_subcommand("generate", "Write a seeded fixture corpus");
  std::uint64_t seed = 1;
  int count = 10;
  std::string corpus_dir = "corpus", corpus_profile = "full", spec_text;
  c_gen->add_option("--seed", seed, "Corpus seed");
  c_gen->add_option("--count", count, "Number of fixtures")->check(CLI::NonNegativeNumber);
  c_gen->add_option("--out", corpus_dir, "Output directory");
  c_gen->add_option("--profile", corpus_profile, "quick caps the count at 10")
      ->check(CLI::IsMember({"quick", "full"}));
  c_gen->add_option("--spec", spec_text, "JSON corpus spec {n, L, N, band_min, band_max, decay}");

  auto* c_report = app.add_subcommand("report", "Report utilities");
  c_report->require_subcommand(1);
  auto* c_merge = c_report->add_subcommand("merge", "Aggregate report JSON files in a directory");
  std::string report_dir;
  c_merge->add_option("dir", report_dir, "Directory of reports")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kExitPass;
  try {
    load_config(g);
    if (g.workers > 0) setenv("SUBEXP_WORKERS", std::to_string(g.workers).c_str(), 1);
    if (*c_norm) {
      code = cmd_norm(g, norm);
    } else if (*c_verify) {
      code = cmd_verify(g, family, profile, set_text, csv_dir);
    } else if (*c_const) {
      code = cmd_constants(g);
    } else if (*c_special) {
      code = cmd_special(g, which, run_check, special_set);
    } else if (*c_gen) {
      code = cmd_corpus(g, corpus_dir, seed, count, corpus_profile, spec_text);
    } else if (*c_merge) {
      code = cmd_report_merge(g, report_dir);
    }
  } catch (const Failure& f) {
    code = f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kExitFail;
  }
  if (g.timing)
    std::cerr << "elapsed: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
              << " s\n";
  return code;
}
