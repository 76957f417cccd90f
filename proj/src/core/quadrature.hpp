/*
 * Copyright (C) 2026 The softrgg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SOFTRGG_CORE_QUADRATURE_HPP
#define SOFTRGG_CORE_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace softrgg::quadrature {

/**
 * Adaptive 31-point Gauss-Kronrod integral of f over [a, b], split at the
 * given interior breakpoints (kinks of the integrand). Boost terminates on a
 * relative criterion, so the absolute tolerance is translated through a
 * first-pass L1 estimate.
 */
template <class F>
double integrate(F f, double a, double b, double abs_tol,
                 std::initializer_list<double> breaks = {}) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr unsigned kMaxDepth = 30;

  std::vector<double> nodes{a};
  for (double x : breaks) {
    if (x > a && x < b) {
      nodes.push_back(x);
    }
  }
  std::sort(nodes.begin() + 1, nodes.end());
  nodes.push_back(b);

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double lo = nodes[k];
    const double hi = nodes[k + 1];
    if (!(hi > lo)) {
      continue;
    }
    double err = 0.0;
    double l1 = 0.0;
    GK::integrate(f, lo, hi, 0, 1.0, &err, &l1);
    const double rel = std::max(abs_tol / std::max(l1, abs_tol),
                                64 * std::numeric_limits<double>::epsilon());
    total += GK::integrate(f, lo, hi, kMaxDepth, rel, &err, &l1);
  }
  return total;
}

} // namespace softrgg::quadrature

#endif // SOFTRGG_CORE_QUADRATURE_HPP
