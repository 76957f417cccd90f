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

#include "points.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"

namespace softrgg {

WindowParams::WindowParams(std::int64_t n) : n_(n) {
  if (n < 1) {
    throw DomainError("window half-length n must be >= 1, got " +
                      std::to_string(n));
  }
}

PointConfiguration::PointConfiguration(WindowParams window,
                                       std::vector<double> positions)
    : window_(window), positions_(std::move(positions)) {
  const double n = window_.half_length();
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    const double p = positions_[i];
    if (!(p >= -n && p <= n)) {
      throw DomainError("position " + std::to_string(p) +
                        " outside the window");
    }
    if (i > 0 && !(positions_[i - 1] < p)) {
      throw DomainError("positions must be strictly increasing");
    }
  }
}

PointConfiguration sample_point_configuration(WindowParams window,
                                              const SeedSpec &seed) {
  const std::uint64_t root = rng::derive(rng::stream_key(seed), rng::kTagPoints);
  const double n = window.half_length();
  const double len = window.length();

  std::vector<double> positions;
  for (std::uint64_t attempt = 0;; ++attempt) {
    rng::CounterStream stream(rng::derive(root, attempt));
    const std::uint64_t count = rng::poisson(len, stream);
    positions.resize(count);
    for (auto &p : positions) {
      p = -n + len * stream.uniform();
    }
    std::stable_sort(positions.begin(), positions.end());
    if (std::adjacent_find(positions.begin(), positions.end()) ==
        positions.end()) {
      break;
    }
  }
  return PointConfiguration(window, std::move(positions));
}

} // namespace softrgg
