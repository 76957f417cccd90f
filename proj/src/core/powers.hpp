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

#ifndef SOFTRGG_CORE_POWERS_HPP
#define SOFTRGG_CORE_POWERS_HPP

#include <cmath>

namespace softrgg::powers {

/// Width of the band around a removable singularity in which series are used.
inline constexpr double kSeriesBand = 1e-6;

/**
 * (hi^e - lo^e) / e for hi, lo > 0, continuous through e = 0 where it equals
 * ln(hi / lo). Inside |e| < kSeriesBand a three-term expansion in e replaces
 * the direct quotient.
 */
inline double divided_difference(double hi, double lo, double e) noexcept {
  const double l = std::log(hi / lo);
  if (e == 0.0) {
    return l;
  }
  if (std::fabs(e) < kSeriesBand) {
    const double el = e * l;
    return std::pow(lo, e) * l * (1.0 + el / 2.0 + el * el / 6.0);
  }
  return std::pow(lo, e) * std::expm1(e * l) / e;
}

} // namespace softrgg::powers

#endif // SOFTRGG_CORE_POWERS_HPP
