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

#include "quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace subexp::detail {

namespace {

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

AdaptiveResult refine(const std::function<double(double)>& f, double a, double b, double whole, double rel_tol,
                      double abs_tol, int depth, const GaussRule& rule) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_panel(f, a, mid, rule);
  const double right = gauss_panel(f, mid, b, rule);
  const double sum = left + right;
  const double err = std::abs(sum - whole);
  if (err <= std::max(abs_tol, rel_tol * std::abs(sum)) || depth == 0 || !std::isfinite(sum)) {
    return {sum, err, err <= std::max(abs_tol, rel_tol * std::abs(sum))};
  }
  const auto l = refine(f, a, mid, left, rel_tol, 0.5 * abs_tol, depth - 1, rule);
  const auto r = refine(f, mid, b, right, rel_tol, 0.5 * abs_tol, depth - 1, rule);
  return {l.value + r.value, l.error + r.error, l.converged && r.converged};
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

AdaptiveResult adaptive_gauss(const std::function<double(double)>& f, double a, double b, double rel_tol,
                              double abs_tol, int max_depth) {
  if (a == b) return {};
  const GaussRule& rule = gauss_legendre(20);
  return refine(f, a, b, gauss_panel(f, a, b, rule), rel_tol, abs_tol, max_depth, rule);
}

}  // namespace subexp::detail
