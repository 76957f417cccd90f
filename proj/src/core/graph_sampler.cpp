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

#include "graph_sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "error.hpp"

namespace softrgg {

namespace {

inline bool connects(double u, const ConnectionFunction &g, double d) noexcept {
  return u < g(d);
}

class BestEdge {
public:
  void offer(double d, std::size_t i, std::size_t j) noexcept {
    if (!found_ || d > d_ || (d == d_ && i < i_)) {
      found_ = true;
      d_ = d;
      i_ = i;
      j_ = j;
    }
  }

  bool found() const noexcept { return found_; }
  double distance() const noexcept { return d_; }

  LongestEdgeResult result(std::uint64_t examined) const {
    LongestEdgeResult out;
    out.pairs_examined = examined;
    if (found_) {
      out.length = d_;
      out.endpoints = EdgeEndpoints{i_, j_};
    }
    return out;
  }

private:
  bool found_ = false;
  double d_ = 0.0;
  std::size_t i_ = 0;
  std::size_t j_ = 0;
};

void require_threshold(const PointConfiguration &pc, double r) {
  if (!(r > 0.0) || !(r < pc.window().length())) {
    throw DomainError("exceedance threshold must lie in (0, 2n), got " +
                      std::to_string(r));
  }
}

// u < p  <=>  (h >> 11) < ceil(p * 2^53) for the 53-bit mantissa draw.
inline std::uint64_t unit_threshold(double p) noexcept {
  return static_cast<std::uint64_t>(std::ceil(p * 0x1p53));
}

constexpr std::size_t kBlock = 32;

// Upper bounds on unit_threshold(g(d)) for block rejection. Distances are
// binned by their top 19 IEEE bits (128 bins per octave, monotone in d) and
// each bin uses g at its lower edge, which is >= g(d) since g is
// non-increasing in |d|. Bins are filled on first use.
class BlockBounds {
public:
  BlockBounds(const ConnectionFunction &g, double max_distance)
      : g_(g), b_min_(bin(kFloor)),
        cache_(max_distance >= kFloor ? bin(max_distance) - b_min_ + 1 : 0,
               kUnset) {}

  std::uint64_t operator()(double d) {
    const std::uint64_t b = bin(d);
    if (b < b_min_ || b - b_min_ >= cache_.size()) {
      return unit_threshold(g_(d));
    }
    std::uint64_t &slot = cache_[b - b_min_];
    if (slot == kUnset) {
      slot = unit_threshold(g_(std::bit_cast<double>(b << kShift)));
    }
    return slot;
  }

private:
  static constexpr int kShift = 45;
  static constexpr double kFloor = 0x1p-10;
  static constexpr std::uint64_t kUnset = ~std::uint64_t{0};

  static std::uint64_t bin(double d) noexcept {
    return std::bit_cast<std::uint64_t>(d) >> kShift;
  }

  const ConnectionFunction &g_;
  std::uint64_t b_min_;
  std::vector<std::uint64_t> cache_;
};

// Pairs (lo + k), k < count, whose 53-bit draw lies below `bound`. Kept
// branch-free so the compiler vectorizes the hash.
inline std::uint64_t block_hits(std::uint64_t row_key, std::size_t lo,
                                std::size_t count,
                                std::uint64_t bound) noexcept {
  std::uint64_t hits = 0;
  for (std::size_t k = 0; k < count; ++k) {
    hits += (rng::PairKeys::hash(row_key, lo + k) >> 11) < bound ? 1 : 0;
  }
  return hits;
}

// Visits j = j_hi, j_hi - 1, ..., j_lo of row i (j_lo > i) and calls
// on_edge(j, d) for each realized edge; on_edge returns false to end the row.
// Returns the number of pairs decided.
template <class OnEdge>
std::uint64_t scan_row(std::span<const double> pos, const ConnectionFunction &g,
                       BlockBounds &bounds, std::uint64_t row_key,
                       std::size_t i, std::size_t j_hi, std::size_t j_lo,
                       OnEdge &&on_edge) {
  std::uint64_t examined = 0;
  const double xi = pos[i];
  std::size_t top = j_hi + 1; // exclusive
  while (top > j_lo) {
    const std::size_t lo = top - j_lo > kBlock ? top - kBlock : j_lo;
    const std::uint64_t bound = bounds(pos[lo] - xi);
    if (block_hits(row_key, lo, top - lo, bound) != 0) {
      for (std::size_t k = top; k-- > lo;) {
        const double d = pos[k] - xi;
        if (connects(rng::to_unit(rng::PairKeys::hash(row_key, k)), g, d)) {
          if (!on_edge(k, d)) {
            return examined + (top - k);
          }
        }
      }
    }
    examined += top - lo;
    top = lo;
  }
  return examined;
}

// Longest-edge sweep over rows, restricted per row to j <= row_limit[i].
// Later rows only look at pairs strictly longer than the current best.
void sweep_longest(std::span<const double> pos, const ConnectionFunction &g,
                   BlockBounds &bounds, const rng::PairKeys &keys,
                   std::span<const std::size_t> row_limit, BestEdge &best,
                   std::uint64_t &examined) {
  const std::size_t k = pos.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (best.found() && !(pos[k - 1] - pos[i] > best.distance())) {
      break;
    }
    const std::size_t j_hi = row_limit[i];
    if (j_hi <= i) {
      continue;
    }
    std::size_t j_lo = i + 1;
    if (best.found()) {
      const double cut = best.distance();
      const double xi = pos[i];
      auto it = std::partition_point(
          pos.begin() + static_cast<std::ptrdiff_t>(i + 1),
          pos.begin() + static_cast<std::ptrdiff_t>(j_hi + 1),
          [xi, cut](double x) { return !(x - xi > cut); });
      j_lo = static_cast<std::size_t>(it - pos.begin());
      if (j_lo > j_hi) {
        continue;
      }
    }
    examined += scan_row(pos, g, bounds, keys.row(i), i, j_hi, j_lo,
                         [&](std::size_t j, double d) {
                           best.offer(d, i, j);
                           return false;
                         });
  }
}

} // namespace

LargestFirstPairs::LargestFirstPairs(std::span<const double> positions)
    : pos_(positions) {
  const std::size_t k = pos_.size();
  if (k >= 2) {
    heap_.reserve(k);
    push(0, k - 1);
  }
}

namespace {
struct LowerPriority {
  bool operator()(const LargestFirstPairs::Pair &a,
                  const LargestFirstPairs::Pair &b) const noexcept {
    return a.distance < b.distance || (a.distance == b.distance && a.i > b.i);
  }
};
} // namespace

void LargestFirstPairs::push(std::size_t i, std::size_t j) {
  heap_.push_back(Pair{i, j, pos_[j] - pos_[i]});
  std::push_heap(heap_.begin(), heap_.end(), LowerPriority{});
}

LargestFirstPairs::Pair LargestFirstPairs::pop() {
  std::pop_heap(heap_.begin(), heap_.end(), LowerPriority{});
  const Pair p = heap_.back();
  heap_.pop_back();
  const std::size_t last = pos_.size() - 1;
  if (p.j - 1 > p.i) {
    push(p.i, p.j - 1);
  }
  if (p.j == last && p.i + 1 < last) {
    push(p.i + 1, last);
  }
  return p;
}

LongestEdgeResult longest_edge_lazy(const PointConfiguration &pc,
                                    const ConnectionFunction &g,
                                    const SeedSpec &s) {
  const rng::PairKeys keys(s);
  LargestFirstPairs pairs(pc.positions());
  BestEdge best;
  std::uint64_t examined = 0;
  while (!pairs.empty()) {
    if (best.found() && pairs.top_distance() != best.distance()) {
      break;
    }
    const auto p = pairs.pop();
    ++examined;
    const double u = rng::to_unit(rng::PairKeys::hash(keys.row(p.i), p.j));
    if (connects(u, g, p.distance)) {
      best.offer(p.distance, p.i, p.j);
    }
  }
  return best.result(examined);
}

LongestEdgeResult longest_edge_naive(const PointConfiguration &pc,
                                     const ConnectionFunction &g,
                                     const SeedSpec &s) {
  const std::size_t k = pc.size();
  if (k > kNaiveMaxPoints) {
    throw SizeError("longest_edge_naive: " + std::to_string(k) +
                    " points exceed the guard of " +
                    std::to_string(kNaiveMaxPoints));
  }
  const rng::PairKeys keys(s);
  const auto pos = pc.positions();
  BestEdge best;
  std::uint64_t examined = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t row = keys.row(i);
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = pos[j] - pos[i];
      ++examined;
      if (connects(rng::to_unit(rng::PairKeys::hash(row, j)), g, d)) {
        best.offer(d, i, j);
      }
    }
  }
  return best.result(examined);
}

ExceedanceCount count_exceedances(const PointConfiguration &pc,
                                  const ConnectionFunction &g,
                                  const SeedSpec &s, double r) {
  require_threshold(pc, r);
  const rng::PairKeys keys(s);
  LargestFirstPairs pairs(pc.positions());
  ExceedanceCount out{r, 0};
  while (!pairs.empty() && pairs.top_distance() > r) {
    const auto p = pairs.pop();
    const double u = rng::to_unit(rng::PairKeys::hash(keys.row(p.i), p.j));
    if (connects(u, g, p.distance)) {
      ++out.count;
    }
  }
  return out;
}

EdgeScan scan_edges(const PointConfiguration &pc, const ConnectionFunction &g,
                    const SeedSpec &s, double r) {
  require_threshold(pc, r);
  EdgeScan out;
  out.exceedances.threshold = r;
  const std::size_t k = pc.size();
  if (k < 2) {
    return out;
  }
  const auto pos = pc.positions();
  const rng::PairKeys keys(s);
  BlockBounds bounds(g, pos[k - 1] - pos[0]);
  BestEdge best;
  std::uint64_t examined = 0;

  // Pass 1: every pair longer than r. first_far[i] is the smallest j with
  // pos[j] - pos[i] > r (k when none); it is non-decreasing in i.
  std::vector<std::size_t> first_far(k);
  std::size_t jf = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    jf = std::max(jf, i + 1);
    while (jf < k && !(pos[jf] - pos[i] > r)) {
      ++jf;
    }
    first_far[i] = jf;
    if (jf < k) {
      examined += scan_row(pos, g, bounds, keys.row(i), i, k - 1, jf,
                           [&](std::size_t j, double d) {
                             ++out.exceedances.count;
                             best.offer(d, i, j);
                             return true;
                           });
    }
  }
  first_far[k - 1] = k;

  // Pass 2: no edge beyond r, so the longest edge (if any) is at most r.
  if (!best.found()) {
    std::vector<std::size_t> row_limit(k);
    for (std::size_t i = 0; i < k; ++i) {
      row_limit[i] = first_far[i] - 1;
    }
    sweep_longest(pos, g, bounds, keys, row_limit, best, examined);
  }
  out.longest = best.result(examined);
  return out;
}

LongestEdgeResult longest_edge_scan(const PointConfiguration &pc,
                                    const ConnectionFunction &g,
                                    const SeedSpec &s) {
  const std::size_t k = pc.size();
  if (k < 2) {
    return {};
  }
  const rng::PairKeys keys(s);
  BestEdge best;
  std::uint64_t examined = 0;
  const auto pos = pc.positions();
  BlockBounds bounds(g, pos[k - 1] - pos[0]);
  std::vector<std::size_t> row_limit(k, k - 1);
  sweep_longest(pos, g, bounds, keys, row_limit, best, examined);
  return best.result(examined);
}

} // namespace softrgg
