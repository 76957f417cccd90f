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

#include "random.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace softrgg {
namespace rng {

namespace {

std::uint64_t poisson_inversion(double mean, CounterStream &stream) {
  const double u = stream.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  // The cap only matters if u lands within rounding of 1.
  while (u >= cdf && k < 1000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// W. Hormann, "The transformed rejection method for generating Poisson
// random variables", Insurance: Mathematics and Economics 12 (1993).
std::uint64_t poisson_ptrs(double mean, CounterStream &stream) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = stream.uniform() - 0.5;
    const double v = stream.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) {
      return static_cast<std::uint64_t>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

} // namespace

std::uint64_t poisson(double mean, CounterStream &stream) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("poisson: mean must be finite and non-negative");
  }
  if (mean == 0.0) {
    return 0;
  }
  return mean < 30.0 ? poisson_inversion(mean, stream)
                     : poisson_ptrs(mean, stream);
}

} // namespace rng

double pair_uniform(const SeedSpec &s, std::size_t i, std::size_t j) {
  if (i == j) {
    throw DomainError("pair_uniform: i == j (no self-loops)");
  }
  const rng::PairKeys keys(s);
  const std::size_t lo = std::min(i, j);
  const std::size_t hi = std::max(i, j);
  return rng::to_unit(rng::PairKeys::hash(keys.row(lo), hi));
}

} // namespace softrgg
