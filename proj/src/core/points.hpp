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

#ifndef SOFTRGG_CORE_POINTS_HPP
#define SOFTRGG_CORE_POINTS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "random.hpp"

namespace softrgg {

/// Half-length of the observation window [-n, n]; n >= 1.
class WindowParams {
public:
  explicit WindowParams(std::int64_t n);

  std::int64_t n() const noexcept { return n_; }
  double half_length() const noexcept { return static_cast<double>(n_); }
  double length() const noexcept { return 2.0 * static_cast<double>(n_); }

  friend bool operator==(const WindowParams &, const WindowParams &) = default;

private:
  std::int64_t n_;
};

/// Strictly increasing positions inside [-n, n].
class PointConfiguration {
public:
  /// Validates the window bounds and strict monotonicity; throws DomainError.
  PointConfiguration(WindowParams window, std::vector<double> positions);

  const WindowParams &window() const noexcept { return window_; }
  std::span<const double> positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }
  double operator[](std::size_t i) const noexcept { return positions_[i]; }

private:
  WindowParams window_;
  std::vector<double> positions_;
};

/**
 * Unit-intensity Poisson configuration on [-n, n]: a Poisson(2n) count of
 * independent uniform positions, returned sorted. A floating-point tie
 * triggers a redraw from a derived sub-stream.
 */
PointConfiguration sample_point_configuration(WindowParams window,
                                              const SeedSpec &seed);

} // namespace softrgg

#endif // SOFTRGG_CORE_POINTS_HPP
