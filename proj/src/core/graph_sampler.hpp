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

#ifndef SOFTRGG_CORE_GRAPH_SAMPLER_HPP
#define SOFTRGG_CORE_GRAPH_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "connection.hpp"
#include "points.hpp"
#include "random.hpp"

namespace softrgg {

// The edge set is never stored. Pair {i, j} (sorted-order indices) is an
// edge iff pair_uniform(s, i, j) < g(positions[j] - positions[i]); every
// algorithm below decides pairs with exactly this predicate, so they agree
// bit for bit on the same seed.

struct EdgeEndpoints {
  std::size_t lo = 0;
  std::size_t hi = 0;

  friend bool operator==(const EdgeEndpoints &, const EdgeEndpoints &) = default;
};

struct LongestEdgeResult {
  std::optional<double> length;
  std::optional<EdgeEndpoints> endpoints;
  std::uint64_t pairs_examined = 0;
};

struct ExceedanceCount {
  double threshold = 0.0;
  std::uint64_t count = 0;
};

/// Fused result of one pass: the longest edge and W at one threshold.
struct EdgeScan {
  LongestEdgeResult longest;
  ExceedanceCount exceedances;
};

/// Size guard of the quadratic oracle.
inline constexpr std::size_t kNaiveMaxPoints = 10000;

/**
 * Enumerates index pairs (i < j) of a sorted position list in non-increasing
 * order of positions[j] - positions[i], ties by smaller i first among the
 * pairs currently queued.
 *
 * Each pair has a single parent in the expansion tree: (i, j) yields
 * (i, j - 1), and the row heads (i, K - 1) additionally yield (i + 1, K - 1).
 * Children never exceed their parent's distance, so the heap never holds
 * more than K entries and needs no visited set.
 */
class LargestFirstPairs {
public:
  struct Pair {
    std::size_t i;
    std::size_t j;
    double distance;
  };

  explicit LargestFirstPairs(std::span<const double> positions);

  bool empty() const noexcept { return heap_.empty(); }
  double top_distance() const noexcept { return heap_.front().distance; }
  Pair pop();

private:
  void push(std::size_t i, std::size_t j);

  std::span<const double> pos_;
  std::vector<Pair> heap_;
};

/// Longest realized edge by largest-first enumeration, stopping at the first
/// realized pair (after draining exact distance ties).
LongestEdgeResult longest_edge_lazy(const PointConfiguration &pc,
                                    const ConnectionFunction &g,
                                    const SeedSpec &s);

/// Brute-force oracle over all K(K-1)/2 pairs. Throws SizeError when
/// K > kNaiveMaxPoints.
LongestEdgeResult longest_edge_naive(const PointConfiguration &pc,
                                     const ConnectionFunction &g,
                                     const SeedSpec &s);

/// W(n, r): realized edges longer than r, visiting only pairs at distance
/// > r in largest-first order. Requires 0 < r < 2n.
ExceedanceCount count_exceedances(const PointConfiguration &pc,
                                  const ConnectionFunction &g,
                                  const SeedSpec &s, double r);

/**
 * Blocked row scan computing the longest edge and the exceedance count at
 * r in one pass. Rows are swept from the far end in blocks; a block is
 * rejected with integer comparisons when no pair uniform falls below the
 * block's largest connection probability. Results equal longest_edge_lazy
 * and count_exceedances exactly. Requires 0 < r < 2n.
 */
EdgeScan scan_edges(const PointConfiguration &pc, const ConnectionFunction &g,
                    const SeedSpec &s, double r);

/// Longest edge only, via the blocked scan.
LongestEdgeResult longest_edge_scan(const PointConfiguration &pc,
                                    const ConnectionFunction &g,
                                    const SeedSpec &s);

} // namespace softrgg

#endif // SOFTRGG_CORE_GRAPH_SAMPLER_HPP
