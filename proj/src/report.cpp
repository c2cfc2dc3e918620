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

#include "subexp/report.hpp"

#include <cmath>

namespace subexp {

void VerificationReport::merge(const VerificationReport& part) {
  points_checked += part.points_checked;
  if (part.min_margin < min_margin) {
    min_margin = part.min_margin;
    worst_point = part.worst_point;
  }
}

VerificationReport& VerificationReport::finalize() {
  passed = !std::isnan(min_margin) && min_margin >= -tolerance;
  for (auto& c : checks) {
    c.finalize();
    passed = passed && c.passed;
  }
  return *this;
}

namespace {

Json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

double number_from(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

Json to_json(const VerificationReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["params"] = r.params;
  j["domain"] = r.domain;
  j["points_checked"] = r.points_checked;
  j["min_margin"] = number_or_null(r.min_margin);
  j["worst_point"] = r.worst_point;
  j["passed"] = r.passed;
  j["tolerance"] = r.tolerance;
  if (!r.extra.empty()) j["extra"] = r.extra;
  if (!r.checks.empty()) {
    j["checks"] = Json::array();
    for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
  }
  return j;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  r.kind = j.at("kind").get<std::string>();
  r.params = j.value("params", Json::object());
  r.domain = j.value("domain", std::string{});
  r.points_checked = j.value("points_checked", std::size_t{0});
  r.min_margin = number_from(j.at("min_margin"));
  r.worst_point = j.value("worst_point", std::vector<double>{});
  r.passed = j.at("passed").get<bool>();
  r.tolerance = j.value("tolerance", 0.0);
  r.extra = j.value("extra", Json::object());
  if (j.contains("checks")) {
    for (const auto& c : j["checks"]) r.checks.push_back(report_from_json(c));
  }
  return r;
}

}  // namespace subexp
