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

#ifndef SUBEXP_CAMPAIGN_HPP
#define SUBEXP_CAMPAIGN_HPP

#include <cstdint>
#include <string>

#include "subexp/modspace.hpp"
#include "subexp/report.hpp"

namespace subexp {

// Families: weights, partition, algebra, subalgebra, superposition, constants.
// `overrides` is merged (JSON merge patch) over the profile defaults of the family.
Json verify_family(const std::string& family, const std::string& profile, const Json& overrides = Json::object());
Json default_options(const std::string& family, const std::string& profile);

// which: "up" or "bump".
Json special_check(const std::string& which, const Json& overrides = Json::object());

struct CorpusSpec {
  int n = 1;
  double L = 3.141592653589793;
  int N = 256;
  double band_min = 2.0;
  double band_max = 8.0;
  double decay = 0.0;
};

CorpusSpec corpus_spec_from_json(const Json& j);

// Writes fixture_XXXX.csv files and manifest.json into `dir`; returns the manifest.
Json corpus_generate(const std::string& dir, std::uint64_t seed, int count, const CorpusSpec& spec = {});

// Aggregates every *.json report in `dir`.
Json report_merge(const std::string& dir);

Json environment_fingerprint();

// Norm of a function file as a JSON record {params, value, truncation_tail, warnings}.
Json norm_record(const SampledFunction& f, const NormParams& params);

}  // namespace subexp

#endif  // SUBEXP_CAMPAIGN_HPP
