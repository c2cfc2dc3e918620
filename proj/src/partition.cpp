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

#include "subexp/partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace subexp {

namespace {

double glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = glue(t), b = glue(1.0 - t);
  return a / (a + b);
}

}  // namespace

double bump_profile(double xi) {
  const double a = std::abs(xi);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  return smooth_step(2.0 * (1.0 - a));
}

double WindowFunction::rho(std::span<const double> xi) const {
  double r = 1.0;
  for (double v : xi) r *= bump_profile(v);
  return r;
}

WindowFunction build_window(int n) {
  if (n != 1 && n != 2) throw InvalidArgument("window dimension must be 1 or 2");
  return WindowFunction{n};
}

double sigma_1d(int k, double xi) {
  // Work relative to the cell center so that sigma_k(xi) = sigma_0(xi - k) exactly.
  const double d = xi - static_cast<double>(k);
  const double num = bump_profile(d);
  if (num == 0.0) return 0.0;
  const double lo = std::floor(d) - 1.0;
  double den = 0.0;
  for (int j = 0; j < 4; ++j) den += bump_profile(d - (lo + j));
  return num / den;
}

double sigma_eval(const WindowFunction& w, std::span<const int> k, std::span<const double> xi) {
  if (k.size() != static_cast<std::size_t>(w.n) || xi.size() != static_cast<std::size_t>(w.n))
    throw InvalidArgument("sigma_eval dimension mismatch");
  double r = 1.0;
  for (int i = 0; i < w.n && r != 0.0; ++i) r *= sigma_1d(k[i], xi[i]);
  return r;
}

VerificationReport verify_partition(const WindowFunction& w, const PartitionGrid& grid) {
  if (grid.points_per_axis < 2 || !(grid.extent > 0.0)) throw InvalidArgument("bad partition grid");
  const int n = w.n;
  const int M = grid.points_per_axis;
  const double E = grid.extent;
  const int kmax = static_cast<int>(std::ceil(E)) + 1;

  // 2D sweeps use a coarser per-axis grid so the point count stays comparable.
  const int m_axis = n == 1 ? M : std::max(2, static_cast<int>(std::sqrt(static_cast<double>(M))));
  std::vector<double> axis(m_axis);
  for (int i = 0; i < m_axis; ++i) axis[i] = -E + 2.0 * E * i / (m_axis - 1);

  VerificationReport sum_check, support_check, lower_check, deriv_check;
  sum_check.kind = "sum_to_one";
  sum_check.tolerance = 1e-10;
  support_check.kind = "support";
  support_check.tolerance = 0.0;
  lower_check.kind = "lower_bound";
  lower_check.tolerance = 0.0;
  lower_check.params = {{"bound", std::pow(3.0, -n)}};
  deriv_check.kind = "derivative_translation";
  deriv_check.tolerance = 1e-8;

  std::array<int, 2> k{};
  std::array<double, 2> xi{};
  const auto visit = [&](auto&& body) {
    if (n == 1) {
      for (double a : axis) {
        xi[0] = a;
        body();
      }
    } else {
      for (double a : axis)
        for (double b : axis) {
          xi[0] = a;
          xi[1] = b;
          body();
        }
    }
  };
  const std::span<const double> xs(xi.data(), n);
  const std::span<const int> ks(k.data(), n);
  const auto point = [&] { return std::vector<double>(xi.begin(), xi.begin() + n); };

  visit([&] {
    double total = 0.0;
    const auto each_k = [&](auto&& fn) {
      if (n == 1) {
        for (k[0] = -kmax; k[0] <= kmax; ++k[0]) fn();
      } else {
        for (k[0] = -kmax; k[0] <= kmax; ++k[0])
          for (k[1] = -kmax; k[1] <= kmax; ++k[1]) fn();
      }
    };
    each_k([&] {
      const double s = sigma_eval(w, ks, xs);
      total += s;
      double dist = 0.0;
      for (int i = 0; i < n; ++i) dist = std::max(dist, std::abs(xi[i] - k[i]));
      // sigma_k must lie in [0, 1] and vanish outside the open cube Q_k.
      const double support_margin = dist >= 1.0 ? -std::abs(s) : std::min(s, 1.0 - s);
      support_check.observe(support_margin, point());
      if (dist <= 0.5) lower_check.observe(s - std::pow(3.0, -n), point());
    });
    sum_check.observe(-std::abs(total - 1.0), point());
  });

  // Finite-difference derivatives up to order two, at sigma_0 and at translates.
  const double h = grid.fd_step;
  const std::array<std::array<int, 2>, 3> shifts{{{1, 0}, {-2, 3}, {5, -1}}};
  const auto derivs = [&](std::array<int, 2> kk, std::array<double, 2> at) {
    std::vector<double> out;
    const auto f = [&](double dx, double dy) {
      std::array<double, 2> p{at[0] + dx, at[1] + dy};
      return sigma_eval(w, std::span<const int>(kk.data(), n), std::span<const double>(p.data(), n));
    };
    out.push_back(f(0, 0));
    out.push_back((f(h, 0) - f(-h, 0)) / (2 * h));
    out.push_back((f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / (h * h));
    if (n == 2) {
      out.push_back((f(0, h) - f(0, -h)) / (2 * h));
      out.push_back((f(0, h) - 2 * f(0, 0) + f(0, -h)) / (h * h));
      out.push_back((f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h));
    }
    return out;
  };
  std::vector<double> sup0;
  for (const auto& sh : shifts) {
    std::vector<double> sup_k;
    const auto fine = [&](std::array<double, 2> base, bool is_zero, std::vector<double>& sup) {
      const auto d = derivs(is_zero ? std::array<int, 2>{0, 0} : sh, base);
      if (sup.empty()) sup.assign(d.size(), 0.0);
      for (std::size_t i = 0; i < d.size(); ++i) sup[i] = std::max(sup[i], std::abs(d[i]));
    };
    // Sample the reference cell Q_0 and the shifted copy on matching offsets.
    const int m = n == 1 ? 2001 : 61;
    std::vector<double> zero_sup;
    for (int i = 0; i < m; ++i) {
      const double a = -1.0 + 2.0 * i / (m - 1);
      if (n == 1) {
        fine({a, 0.0}, true, zero_sup);
        fine({a + sh[0], 0.0}, false, sup_k);
      } else {
        for (int j = 0; j < m; ++j) {
          const double b = -1.0 + 2.0 * j / (m - 1);
          fine({a, b}, true, zero_sup);
          fine({a + sh[0], b + sh[1]}, false, sup_k);
        }
      }
    }
    for (std::size_t i = 0; i < sup_k.size(); ++i) {
      const double diff = std::abs(sup_k[i] - zero_sup[i]) / std::max(1.0, zero_sup[i]);
      deriv_check.observe(-diff,
                          {double(sh[0]), n == 2 ? double(sh[1]) : 0.0, double(i)});
    }
    if (sup0.empty()) sup0 = zero_sup;
  }
  deriv_check.extra["sup_abs_derivatives_sigma0"] = sup0;

  VerificationReport report;
  report.kind = "partition";
  report.params = {{"n", n}, {"extent", E}, {"points_per_axis", m_axis}};
  report.domain = "xi in [-" + std::to_string(E) + ", " + std::to_string(E) + "]^" + std::to_string(n);
  for (auto* c : {&sum_check, &support_check, &lower_check, &deriv_check}) {
    c->domain = report.domain;
    c->finalize();
    report.points_checked += c->points_checked;
    report.checks.push_back(*c);
  }
  report.min_margin = 0.0;
  for (const auto& c : report.checks) report.min_margin = std::min(report.min_margin, c.min_margin + c.tolerance);
  return report.finalize();
}

}  // namespace subexp
