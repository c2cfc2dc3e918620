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

#ifndef SUBEXP_SRC_QUADRATURE_HPP
#define SUBEXP_SRC_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace subexp::detail {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Nodes and weights are computed once per order and cached.
const GaussRule& gauss_legendre(int order);

template <class F>
double gauss_panel(F&& f, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Recursive bisection comparing one 20-point panel with its two halves.
AdaptiveResult adaptive_gauss(const std::function<double(double)>& f, double a, double b, double rel_tol,
                              double abs_tol = 0.0, int max_depth = 40);

}  // namespace subexp::detail

#endif  // SUBEXP_SRC_QUADRATURE_HPP
