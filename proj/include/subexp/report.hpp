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

#ifndef SUBEXP_REPORT_HPP
#define SUBEXP_REPORT_HPP

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace subexp {

using Json = nlohmann::ordered_json;

/// Thrown for arguments outside an operation's domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical procedure cannot deliver its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a file cannot be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome of a sweep that checks an inequality (RHS - LHS >= 0) over a domain.
///
/// `passed` is derived: min_margin >= -tolerance. Sub-checks, when present,
/// must all pass as well.
struct VerificationReport {
  std::string kind;
  Json params = Json::object();
  std::string domain;
  std::size_t points_checked = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<double> worst_point;
  double tolerance = 0.0;
  bool passed = true;
  std::vector<VerificationReport> checks;
  Json extra = Json::object();

  // Records one evaluated margin; keeps the first minimum for determinism.
  void observe(double margin, std::vector<double> point) {
    ++points_checked;
    if (margin < min_margin) {
      min_margin = margin;
      worst_point = std::move(point);
    }
  }

  // Merges a partial sweep over a disjoint subdomain (min over minima).
  void merge(const VerificationReport& part);

  // Recomputes `passed` from the margin and the sub-checks.
  VerificationReport& finalize();
};

Json to_json(const VerificationReport& report);
VerificationReport report_from_json(const Json& j);

}  // namespace subexp

#endif  // SUBEXP_REPORT_HPP
