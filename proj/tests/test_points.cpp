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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "error.hpp"
#include "points.hpp"
#include "random.hpp"

using namespace softrgg;

namespace {

// Kolmogorov-Smirnov distance to Uniform[0,1), computed locally so the
// check does not depend on the library's own implementation.
double ks_uniform(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const double m = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    d = std::max({d, (i + 1) / m - v[i], v[i] - i / m});
  }
  return d;
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(const std::vector<double> &v) {
  Moments m;
  for (const double x : v) {
    m.mean += x;
  }
  m.mean /= static_cast<double>(v.size());
  for (const double x : v) {
    m.var += (x - m.mean) * (x - m.mean);
  }
  m.var /= static_cast<double>(v.size() - 1);
  return m;
}

} // namespace

TEST_CASE("window rejects n < 1", "[points]") {
  CHECK_THROWS_AS(WindowParams(0), DomainError);
  CHECK_THROWS_AS(WindowParams(-3), DomainError);
  const WindowParams w(7);
  CHECK(w.half_length() == 7.0);
  CHECK(w.length() == 14.0);
}

TEST_CASE("configuration validates bounds and order", "[points]") {
  const WindowParams w(2);
  CHECK_NOTHROW(PointConfiguration(w, {-2.0, 0.0, 2.0}));
  CHECK_NOTHROW(PointConfiguration(w, {}));
  CHECK_THROWS_AS(PointConfiguration(w, {-2.5, 0.0}), DomainError);
  CHECK_THROWS_AS(PointConfiguration(w, {0.0, 2.0000001}), DomainError);
  CHECK_THROWS_AS(PointConfiguration(w, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(PointConfiguration(w, {1.0, 0.5}), DomainError);
}

TEST_CASE("sampling is a pure function of the seed", "[points]") {
  const WindowParams w(300);
  const SeedSpec s{99, 4};
  const auto a = sample_point_configuration(w, s);
  const auto b = sample_point_configuration(w, s);
  REQUIRE(a.size() == b.size());
  CHECK(std::equal(a.positions().begin(), a.positions().end(),
                   b.positions().begin()));
  const auto c = sample_point_configuration(w, SeedSpec{99, 5});
  CHECK_FALSE((c.size() == a.size() &&
               std::equal(a.positions().begin(), a.positions().end(),
                          c.positions().begin())));
}

TEST_CASE("sampled positions are sorted, distinct and inside the window",
          "[points]") {
  for (std::uint64_t id = 0; id < 200; ++id) {
    const WindowParams w(1 + static_cast<std::int64_t>(id % 37));
    const auto pc = sample_point_configuration(w, SeedSpec{1, id});
    const auto pos = pc.positions();
    for (std::size_t i = 0; i < pos.size(); ++i) {
      REQUIRE(pos[i] >= -w.half_length());
      REQUIRE(pos[i] <= w.half_length());
      if (i > 0) {
        REQUIRE(pos[i - 1] < pos[i]);
      }
    }
  }
}

TEST_CASE("mean count is 2n for n = 1", "[points]") {
  constexpr int kSeeds = 20000;
  std::vector<double> counts;
  for (int k = 0; k < kSeeds; ++k) {
    counts.push_back(static_cast<double>(
        sample_point_configuration(WindowParams(1),
                                   SeedSpec{7, static_cast<std::uint64_t>(k)})
            .size()));
  }
  const Moments m = moments(counts);
  CHECK(std::fabs(m.mean - 2.0) < 4.0 * std::sqrt(2.0 / kSeeds));
}

TEST_CASE("count mean and variance match Poisson(2n) at n = 1000",
          "[points]") {
  constexpr int kSeeds = 10000;
  std::vector<double> counts;
  for (int k = 0; k < kSeeds; ++k) {
    counts.push_back(static_cast<double>(
        sample_point_configuration(WindowParams(1000),
                                   SeedSpec{11, static_cast<std::uint64_t>(k)})
            .size()));
  }
  const Moments m = moments(counts);
  // Standard error of the mean sqrt(2000/M); of the variance about
  // 2000 * sqrt(2/M) for a Poisson law of this size.
  CHECK(std::fabs(m.mean - 2000.0) < 4.0 * std::sqrt(2000.0 / kSeeds));
  CHECK(std::fabs(m.var - 2000.0) < 0.05 * 2000.0);
  CHECK(std::fabs(m.var - 2000.0) <
        4.0 * 2000.0 * std::sqrt(2.0 / kSeeds));
}

TEST_CASE("Poisson sampler moments on both sides of the method switch",
          "[points]") {
  for (const double mean : {0.3, 4.0, 29.5, 30.5, 75.0, 1e4}) {
    rng::CounterStream st(rng::derive(1234, static_cast<std::uint64_t>(mean)));
    constexpr int kDraws = 40000;
    std::vector<double> v;
    v.reserve(kDraws);
    for (int k = 0; k < kDraws; ++k) {
      v.push_back(static_cast<double>(rng::poisson(mean, st)));
    }
    const Moments m = moments(v);
    INFO("mean " << mean);
    CHECK(std::fabs(m.mean - mean) < 4.0 * std::sqrt(mean / kDraws));
    CHECK(std::fabs(m.var - mean) <
          4.0 * std::sqrt((2.0 * mean * mean + mean) / kDraws));
  }
}

TEST_CASE("Poisson sampler pmf at small mean", "[points]") {
  // Chi-square against the exact pmf of Poisson(3) on cells 0..9, 10+.
  constexpr double kMean = 3.0;
  constexpr int kDraws = 100000;
  rng::CounterStream st(rng::derive(77, 3));
  std::vector<double> observed(11, 0.0);
  for (int k = 0; k < kDraws; ++k) {
    observed[std::min<std::uint64_t>(rng::poisson(kMean, st), 10)] += 1.0;
  }
  double chi2 = 0.0;
  double tail = 1.0;
  double pk = std::exp(-kMean);
  for (int k = 0; k < 10; ++k) {
    const double expected = pk * kDraws;
    chi2 += (observed[k] - expected) * (observed[k] - expected) / expected;
    tail -= pk;
    pk *= kMean / (k + 1);
  }
  chi2 += (observed[10] - tail * kDraws) * (observed[10] - tail * kDraws) /
          (tail * kDraws);
  // 10 degrees of freedom; the 0.999 quantile is 29.59.
  CHECK(chi2 < 29.59);
}

TEST_CASE("pair uniforms are symmetric and keyed", "[points]") {
  const SeedSpec s{5, 17};
  CHECK(pair_uniform(s, 3, 7) == pair_uniform(s, 7, 3));
  CHECK_THROWS_AS(pair_uniform(s, 4, 4), DomainError);
  CHECK(pair_uniform(SeedSpec{5, 17}, 3, 7) !=
        pair_uniform(SeedSpec{6, 17}, 3, 7));
  CHECK(pair_uniform(SeedSpec{5, 17}, 3, 7) !=
        pair_uniform(SeedSpec{5, 18}, 3, 7));
  const double u = pair_uniform(s, 0, 1);
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}

TEST_CASE("pair uniforms over 10^6 distinct pairs look uniform", "[points]") {
  const SeedSpec s{2026, 0};
  std::vector<double> v;
  v.reserve(1000000);
  for (std::size_t i = 0; v.size() < 1000000; ++i) {
    for (std::size_t j = i + 1; j < i + 1001 && v.size() < 1000000; ++j) {
      v.push_back(pair_uniform(s, i, j));
    }
  }
  CHECK(ks_uniform(std::move(v)) < 0.002);
}
