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

#ifndef SOFTRGG_CORE_REGIMES_HPP
#define SOFTRGG_CORE_REGIMES_HPP

#include <optional>
#include <string_view>

#include "points.hpp"

namespace softrgg {

enum class Regime {
  SuperCritical, // alpha > 2
  Critical2,     // alpha == 2
  Intermediate,  // 1 < alpha < 2
  Critical1,     // alpha == 1
  SubCritical,   // alpha < 1
};

std::string_view to_string(Regime regime) noexcept;

/// Decay exponent together with its regime. Boundaries are classified by
/// exact comparison: only alpha == 2.0 is Critical2.
class RegimeSpec {
public:
  explicit RegimeSpec(double alpha);

  double alpha() const noexcept { return alpha_; }
  Regime regime() const noexcept { return regime_; }

private:
  double alpha_;
  Regime regime_;
};

enum class LawKind { Uniform01, Frechet, ZStar, WeibullTwo, ZStarStar };

std::string_view to_string(LawKind kind) noexcept;

/// Named limit distribution; `beta` is the Frechet shape and unused otherwise.
struct LimitLaw {
  LawKind kind = LawKind::Uniform01;
  double beta = 0.0;

  static LimitLaw uniform01() noexcept { return {LawKind::Uniform01, 0.0}; }
  static LimitLaw frechet(double beta);
  static LimitLaw z_star() noexcept { return {LawKind::ZStar, 0.0}; }
  static LimitLaw weibull_two() noexcept { return {LawKind::WeibullTwo, 0.0}; }
  static LimitLaw z_star_star() noexcept { return {LawKind::ZStarStar, 0.0}; }

  double cdf(double z) const noexcept;

  friend bool operator==(const LimitLaw &, const LimitLaw &) = default;
};

inline double limit_cdf(const LimitLaw &law, double z) noexcept {
  return law.cdf(z);
}

/// h(x) = (x/2) exp((2 - x)/x) on (0, 2]; strictly decreasing onto [1, inf).
double h_eval(double x);

/// Same as log(h(x)), finite wherever x is in (0, 2].
double log_h(double x);

/// Unique x in (0, 2] with h(x) = y, for y >= 1, by bisection.
double h_inverse(double y);

/// Regime-dependent threshold r_n. Throws InfeasibleError when n is too
/// small for (alpha, r), i.e. the bracketed base is non-positive or r_n
/// falls outside (0, 2n).
double threshold_r_n(const RegimeSpec &spec, const WindowParams &w, double r);

/// The regime transform f_n(e*), which maps the threshold r_n to sqrt(r).
double transform_f_n(const RegimeSpec &spec, const WindowParams &w,
                     double e_star);

/**
 * Scaled longest edge with its limit law. For alpha <= 1 the primary value
 * is the linearized Weibull statistic; `alt` carries the exact-power Weibull
 * statistic (alpha < 1) or the power statistic (e* / 2n)^sqrt(n) (alpha == 1).
 */
struct ScaledStatistic {
  double value = 0.0;
  LimitLaw law;
  std::optional<double> alt_value;
  std::optional<LimitLaw> alt_law;
};

ScaledStatistic scaled_statistic(const RegimeSpec &spec, const WindowParams &w,
                                 double e_star);

} // namespace softrgg

#endif // SOFTRGG_CORE_REGIMES_HPP
