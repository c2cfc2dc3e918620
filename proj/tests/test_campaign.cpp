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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <unistd.h>

#include "subexp/campaign.hpp"

using namespace subexp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("subexp_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  os << text;
}

Json fake_report(const std::string& id, const std::string& family, bool passed, double margin) {
  VerificationReport r;
  r.kind = "synthetic";
  r.domain = "none";
  r.observe(margin, {0.0});
  r.tolerance = 0.0;
  r.finalize();
  return {{"id", id}, {"family", family}, {"profile", "quick"}, {"passed", passed},
          {"reports", Json::array({to_json(r)})}};
}

}  // namespace

TEST_CASE("corpus generation is deterministic") {
  TempDir a("corpus_a"), b("corpus_b");
  CorpusSpec spec;
  spec.N = 128;
  const Json ma = corpus_generate(a.path.string(), 99, 4, spec);
  const Json mb = corpus_generate(b.path.string(), 99, 4, spec);
  CHECK(ma == mb);
  REQUIRE(ma.at("files").size() == 4);
  for (const auto& f : ma.at("files")) {
    const std::string name = f.at("file").get<std::string>();
    CHECK(slurp(a.path / name) == slurp(b.path / name));
    const double band = f.at("band").get<double>();
    CHECK(band >= spec.band_min);
    CHECK(band <= spec.band_max);
    // Generated fixtures are resolved by the grid.
    const SampledFunction g = load_function((a.path / name).string());
    const NormResult r = mod_norm(g, NormParams{});
    CHECK(r.warnings.empty());
    CHECK(r.truncation_tail <= kTruncationThreshold);
  }
  CHECK(slurp(a.path / "manifest.json") == slurp(b.path / "manifest.json"));
  const Json other = corpus_generate(b.path.string(), 100, 4, spec);
  CHECK(other.at("files")[0].at("seed") != ma.at("files")[0].at("seed"));
}

TEST_CASE("empty corpus writes only the manifest") {
  TempDir d("corpus_empty");
  const Json m = corpus_generate(d.path.string(), 1, 0);
  CHECK(m.at("files").empty());
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(d.path)) ++entries;
  CHECK(entries == 1);
  CHECK(fs::exists(d.path / "manifest.json"));
  CHECK_THROWS_AS(corpus_generate(d.path.string(), 1, -1), InvalidArgument);
}

TEST_CASE("report merge") {
  SUBCASE("empty directory") {
    TempDir d("merge_empty");
    const Json m = report_merge(d.path.string());
    CHECK(m.at("reports") == 0);
    CHECK(m.at("passed") == true);
    CHECK(m.at("families").empty());
  }
  SUBCASE("all passing") {
    TempDir d("merge_pass");
    write(d.path / "a.json", fake_report("verify/weights/quick", "weights", true, 0.5).dump());
    write(d.path / "b.json", fake_report("verify/partition/quick", "partition", true, 0.25).dump());
    const Json m = report_merge(d.path.string());
    CHECK(m.at("reports") == 2);
    CHECK(m.at("passed") == true);
    CHECK(m.at("failing").empty());
    CHECK(m.at("families").at("weights").at("worst_margin").get<double>() == 0.5);
  }
  SUBCASE("one failing") {
    TempDir d("merge_fail");
    write(d.path / "a.json", fake_report("verify/weights/quick", "weights", true, 0.5).dump());
    write(d.path / "b.json", fake_report("verify/algebra/quick", "algebra", false, -1.0).dump());
    const Json m = report_merge(d.path.string());
    CHECK(m.at("passed") == false);
    REQUIRE(m.at("failing").size() == 1);
    CHECK(m.at("failing")[0] == "verify/algebra/quick");
    CHECK(m.at("families").at("algebra").at("worst_check") == "verify/algebra/quick:synthetic");
  }
  SUBCASE("duplicate ids") {
    TempDir d("merge_dup");
    write(d.path / "a.json", fake_report("verify/weights/quick", "weights", true, 0.5).dump());
    write(d.path / "b.json", fake_report("verify/weights/quick", "weights", false, -1.0).dump());
    const Json m = report_merge(d.path.string());
    CHECK(m.at("reports") == 1);
    CHECK(m.at("passed") == true);
    CHECK(m.at("warnings").size() == 1);
  }
  SUBCASE("malformed files") {
    TempDir d("merge_bad");
    write(d.path / "a.json", "{not json");
    write(d.path / "b.json", R"({"id": "x"})");
    write(d.path / "c.json", fake_report("verify/weights/quick", "weights", true, 0.5).dump());
    const Json m = report_merge(d.path.string());
    CHECK(m.at("reports") == 1);
    CHECK(m.at("malformed").size() == 2);
  }
  CHECK_THROWS_AS(report_merge("/nonexistent/subexp/dir"), IoError);
}

TEST_CASE("weights family envelope") {
  const Json j = verify_family("weights", "quick");
  CHECK(j.at("id") == "verify/weights/quick");
  CHECK(j.at("passed") == true);
  CHECK(j.at("summary").at("t0").get<double>() == doctest::Approx(16.445).epsilon(1e-4));
  CHECK(j.at("summary").at("p0").get<double>() == doctest::Approx(0.41025).epsilon(1e-4));
  // Re-running gives the same document.
  CHECK(verify_family("weights", "quick").dump() == j.dump());
}

TEST_CASE("overrides and errors") {
  const Json j = verify_family("partition", "quick", {{"lattice_1d", 20}});
  CHECK(j.at("options").at("lattice_1d") == 20);
  CHECK(j.at("passed") == true);
  CHECK_THROWS_AS(verify_family("nope", "quick"), InvalidArgument);
  CHECK_THROWS_AS(verify_family("weights", "slow"), InvalidArgument);
  CHECK_THROWS_AS(verify_family("weights", "quick", Json::array()), InvalidArgument);
  CHECK(default_options("algebra", "full").at("pairs") == 50);
}

TEST_CASE("special checks") {
  for (const char* which : {"up", "bump"}) {
    const Json j = special_check(which);
    CHECK(j.at("id") == std::string("special/") + which);
    CHECK(j.at("passed") == true);
  }
  CHECK_THROWS_AS(special_check("other"), InvalidArgument);
}

TEST_CASE("environment fingerprint") {
  const Json e = environment_fingerprint();
  for (const char* key : {"compiler", "cplusplus", "fftw", "os", "library_version"}) CHECK(e.contains(key));
}
