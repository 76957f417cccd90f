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

#ifndef SOFTRGG_CORE_RANDOM_HPP
#define SOFTRGG_CORE_RANDOM_HPP

#include <cstddef>
#include <cstdint>

namespace softrgg {

/**
 * Identifies every random draw of one replication. All randomness in the
 * library is a pure function of this pair, so any replication can be
 * recomputed in isolation and in any order.
 */
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeedSpec &, const SeedSpec &) = default;
};

namespace rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Top 53 bits mapped onto [0, 1).
constexpr double to_unit(std::uint64_t h) noexcept {
  return static_cast<double>(h >> 11) * 0x1p-53;
}

/// Child key for a named purpose (points, pairs, rejection attempts...).
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t tag) noexcept {
  return mix64(key ^ mix64(tag * kGolden + 0x6a09e667f3bcc909ULL));
}

/// Root key of one replication.
constexpr std::uint64_t stream_key(const SeedSpec &s) noexcept {
  return mix64(mix64(s.master_seed ^ 0xa0761d6478bd642fULL) +
               (s.stream_id + 1) * kGolden);
}

// Sub-stream tags.
inline constexpr std::uint64_t kTagPoints = 1;
inline constexpr std::uint64_t kTagPairs = 2;

/**
 * Counter-based uniform stream: the k-th value is mix64(key + k * golden),
 * i.e. a SplitMix64 sequence started at `key`. Cheap to copy and to
 * reposition; two streams with different keys are independent for all
 * practical purposes.
 */
class CounterStream {
public:
  explicit constexpr CounterStream(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  /// Uniform on [0, 1).
  constexpr double uniform() noexcept { return to_unit(next_u64()); }

  constexpr std::uint64_t draws() const noexcept { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/**
 * Keyed generator of the per-pair edge uniforms of one replication.
 * The value for the unordered pair {i, j} depends only on the seed and on
 * (min(i, j), max(i, j)).
 */
class PairKeys {
public:
  explicit constexpr PairKeys(const SeedSpec &s) noexcept
      : base_(derive(stream_key(s), kTagPairs)) {}

  constexpr std::uint64_t row(std::size_t lo) const noexcept {
    return mix64(base_ + (static_cast<std::uint64_t>(lo) + 1) * kGolden);
  }

  /// Raw 64-bit hash for (lo, hi) given the precomputed row key of lo.
  static constexpr std::uint64_t hash(std::uint64_t row_key,
                                      std::size_t hi) noexcept {
    return mix64(row_key + (static_cast<std::uint64_t>(hi) + 1) * kGolden);
  }

private:
  std::uint64_t base_;
};

/// Draw from Poisson(mean) consuming uniforms from `stream`.
/// Inversion below mean 30, Hormann's PTRS transformed rejection above.
std::uint64_t poisson(double mean, CounterStream &stream);

} // namespace rng

/**
 * Edge uniform for the unordered index pair {i, j} of the replication `s`.
 * Symmetric in (i, j). Throws DomainError when i == j.
 */
double pair_uniform(const SeedSpec &s, std::size_t i, std::size_t j);

} // namespace softrgg

#endif // SOFTRGG_CORE_RANDOM_HPP
