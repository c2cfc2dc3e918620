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

#ifndef SUBEXP_PARTITION_HPP
#define SUBEXP_PARTITION_HPP

#include <span>

#include "subexp/report.hpp"

namespace subexp {

// Smooth even step: 1 on [-1/2, 1/2], 0 outside (-1, 1).
double bump_profile(double xi);

// Tensorized window rho over R^n, n in {1, 2}.
struct WindowFunction {
  int n = 1;

  double profile(double xi) const { return bump_profile(xi); }
  double rho(std::span<const double> xi) const;
};

WindowFunction build_window(int n);

// sigma_k in one variable; the normalizing sum enumerates the neighbors j with |xi - j| < 1.
double sigma_1d(int k, double xi);

double sigma_eval(const WindowFunction& w, std::span<const int> k, std::span<const double> xi);

struct PartitionGrid {
  double extent = 3.0;       // cells covered: [-extent, extent] per axis
  int points_per_axis = 10001;
  double fd_step = 1e-3;     // finite-difference step for the derivative check
};

// Sub-checks: sum_to_one, support, lower_bound, derivative_translation.
VerificationReport verify_partition(const WindowFunction& w, const PartitionGrid& grid);

}  // namespace subexp

#endif  // SUBEXP_PARTITION_HPP
