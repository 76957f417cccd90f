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

#ifndef SOFTRGG_CORE_ANALYTICS_HPP
#define SOFTRGG_CORE_ANALYTICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "connection.hpp"
#include "points.hpp"

namespace softrgg {

/**
 * E[W(n, r_n)] for the pure power g(s) = s^-alpha on [r_n, 2n], i.e. half of
 * the double integral of |y - x|^-alpha over {x, y in [-n, n], |y - x| > r_n}.
 * Exact for CappedPower whenever r_n >= 1. Requires 1 <= r_n < 2n.
 */
double mean_exceedances_closed_form(double alpha, const WindowParams &w,
                                    double r_n);

/**
 * The same mean for an arbitrary g, as the one-dimensional integral of
 * (2n - s) g(s) over [r_n, 2n] (adaptive quadrature, absolute tolerance
 * 1e-10). Requires 0 < r_n < 2n.
 */
double mean_exceedances_quadrature(const ConnectionFunction &g,
                                   const WindowParams &w, double r_n);

/**
 * max over x in [-n, n] of the integral of |y - x|^-alpha over
 * y in [-n, n] with |y - x| > r_n. Requires 1 <= r_n < 2n.
 */
double max_tail_integral(double alpha, const WindowParams &w, double r_n);

struct MeanExceedanceReport {
  double closed_form = 0.0;
  double quadrature = 0.0;
  double limit_value = 0.0;      // -ln(r) / 2
  double abs_gap_to_limit = 0.0; // of the authoritative value
  /// False when g is not CappedPower (or r_n < 1): the closed form is then
  /// only the asymptotic equivalent and the quadrature is authoritative.
  bool closed_form_exact = false;
};

MeanExceedanceReport mean_exceedance_report(const ConnectionFunction &g,
                                            const WindowParams &w, double r_n,
                                            double r);

/// Exponent of the total-variation rate: 1 - alpha (alpha > 1) or
/// -alpha/2 (alpha <= 1).
double tv_rate_exponent(double alpha);

struct TvBoundReport {
  std::int64_t n = 0;
  double r_n = 0.0;
  double mean = 0.0;
  double max_tail_integral = 0.0;
  double i_n = 0.0;        // double integral, 2 * mean
  double frak_bound = 0.0; // 2 * max_tail_integral * i_n, an upper bound
  double tv_bound = 0.0;   // min(1, 1/mean) * frak_bound
  double rate_exponent = 0.0;
  double rate_constant = 0.0; // tv_bound / n^rate at the reference n
  double rate_cap = 0.0;      // rate_constant * n^rate
};

/// Total-variation bound at (alpha, n, r), with the rate envelope anchored
/// at `reference` (defaults to w itself).
TvBoundReport tv_bound_report(double alpha, const WindowParams &w, double r,
                              std::optional<WindowParams> reference = {});

/// tv_bound_report over a list of n, anchoring the envelope at the smallest.
std::vector<TvBoundReport> tv_bound_sweep(double alpha, double r,
                                          std::span<const std::int64_t> ns);

} // namespace softrgg

#endif // SOFTRGG_CORE_ANALYTICS_HPP
