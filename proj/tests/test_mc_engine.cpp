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
#include <thread>
#include <vector>

#include "analytics.hpp"
#include "error.hpp"
#include "mc_engine.hpp"
#include "regimes.hpp"

using namespace softrgg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.alpha = 1.5;
  cfg.n = 60;
  cfg.r = 0.5;
  cfg.replications = 400;
  cfg.master_seed = 8;
  return cfg;
}

unsigned hardware_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace

TEST_CASE("single replication with no edges", "[mc_engine]") {
  ExperimentConfig cfg = small_config();
  cfg.replications = 1;
  cfg.connection_form = ConnectionForm::AlwaysZero;
  const auto out = run_experiment(cfg);
  REQUIRE(out.size() == 1);
  CHECK(out[0].stream_id == 0);
  CHECK_FALSE(out[0].e_star);
  CHECK_FALSE(out[0].f_n_value);
  CHECK_FALSE(out[0].scaled_value);
  CHECK(out[0].w_count == 0);
}

TEST_CASE("results do not depend on the worker count", "[mc_engine]") {
  for (const auto form : {ConnectionForm::CappedPower, ConnectionForm::ExpForm}) {
    ExperimentConfig cfg = small_config();
    cfg.connection_form = form;
    cfg.workers = 1;
    const auto one = run_experiment(cfg);
    cfg.workers = 8;
    const auto eight = run_experiment(cfg);
    CHECK(one == eight);
    for (std::size_t i = 0; i < one.size(); ++i) {
      REQUIRE(one[i].stream_id == i);
    }
  }
}

TEST_CASE("records satisfy the experiment invariants", "[mc_engine]") {
  for (const double a : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    ExperimentConfig cfg = small_config();
    cfg.alpha = a;
    const double r_n =
        threshold_r_n(RegimeSpec(a), WindowParams(cfg.n), cfg.r);
    for (const auto &rec : run_experiment(cfg)) {
      REQUIRE(rec.f_n_value.has_value() == rec.e_star.has_value());
      REQUIRE(rec.scaled_value.has_value() == rec.e_star.has_value());
      REQUIRE(rec.scaled_alt_value.has_value() ==
              (rec.e_star.has_value() && a <= 1.0));
      if (!rec.e_star) {
        REQUIRE(rec.w_count == 0);
        continue;
      }
      REQUIRE(rec.point_count >= 2);
      REQUIRE(*rec.f_n_value > 0.0);
      REQUIRE(*rec.f_n_value <= 1.0);
      // W = 0 exactly when the longest edge does not exceed r_n, and the
      // transform orders the same way against sqrt(r).
      REQUIRE((rec.w_count == 0) == (*rec.e_star <= r_n));
      const double f_at_r_n =
          transform_f_n(RegimeSpec(a), WindowParams(cfg.n), r_n);
      if (*rec.e_star <= r_n) {
        REQUIRE(*rec.f_n_value <= f_at_r_n * (1.0 + 1e-12));
      } else {
        REQUIRE(*rec.f_n_value >= f_at_r_n * (1.0 - 1e-12));
      }
    }
  }
}

TEST_CASE("mean exceedance count agrees with the analytic mean",
          "[mc_engine]") {
  ExperimentConfig cfg;
  cfg.alpha = 3.0;
  cfg.n = 2000;
  cfg.r = 0.5;
  cfg.replications = 5000;
  cfg.master_seed = 31;
  cfg.workers = hardware_workers();
  const auto rep = verdict(cfg, run_experiment(cfg));
  INFO("mean_w " << rep.mean_w << " analytic " << rep.analytic_mean);
  CHECK(std::fabs(rep.mean_w - rep.analytic_mean) <=
        4.0 * std::sqrt(rep.analytic_mean / 5000.0));
}

TEST_CASE("always-one longest edge follows the Poisson range law",
          "[mc_engine]") {
  // With every pair connected e* is the range of the points. The pair
  // (min, max) = (a, b) has density exp(-(L - (b - a))), so with L = 2n
  // P(K >= 2, range <= t) = (L - t + 1) e^{-(L - t)} - (L + 1) e^{-L}.
  ExperimentConfig cfg;
  cfg.alpha = 3.0;
  cfg.n = 2;
  cfg.r = 0.5;
  cfg.replications = 100000;
  cfg.master_seed = 5;
  cfg.connection_form = ConnectionForm::AlwaysOne;
  cfg.workers = hardware_workers();
  const auto out = run_experiment(cfg);
  const double L = 4.0;
  for (const double t : {0.5, 1.0, 2.0, 3.0, 3.9, 4.0}) {
    const double p = (L - t + 1.0) * std::exp(-(L - t)) -
                     (L + 1.0) * std::exp(-L);
    std::uint64_t hits = 0;
    for (const auto &rec : out) {
      hits += rec.e_star && *rec.e_star <= t ? 1 : 0;
    }
    const double est = static_cast<double>(hits) / 100000.0;
    INFO("t " << t << " p " << p << " est " << est);
    CHECK(std::fabs(est - p) <= 4.0 * std::sqrt(p * (1.0 - p) / 100000.0));
  }
}

TEST_CASE("ks distance examples", "[mc_engine]") {
  const std::vector<double> two = {0.25, 0.75};
  CHECK_THAT(ks_distance(two, LimitLaw::uniform01()), WithinAbs(0.25, 1e-15));
  const std::vector<double> one = {0.5};
  CHECK_THAT(ks_distance(one, LimitLaw::uniform01()), WithinAbs(0.5, 1e-15));
  std::vector<double> q;
  for (int i = 1; i <= 999; ++i) {
    q.push_back(i / 1000.0);
  }
  CHECK(ks_distance(q, LimitLaw::uniform01()) <= 1.0 / 1000.0 + 1e-15);
  const std::vector<double> frechet_median = {1.0 / std::sqrt(std::log(2.0))};
  CHECK_THAT(ks_distance(frechet_median, LimitLaw::frechet(2.0)),
             WithinAbs(0.5, 1e-12));
  CHECK_THROWS_AS(ks_distance(std::vector<double>{}, LimitLaw::uniform01()),
                  DomainError);
}

TEST_CASE("tv to Poisson examples", "[mc_engine]") {
  const std::vector<std::uint64_t> zeros(100, 0);
  for (const double lambda : {0.1, 0.7, 3.0}) {
    CHECK_THAT(tv_to_poisson(zeros, lambda),
               WithinAbs(1.0 - std::exp(-lambda), 1e-14));
  }
  CHECK(tv_to_poisson(zeros, 0.0) == 0.0);
  const std::vector<std::uint64_t> ones(10, 1);
  CHECK(tv_to_poisson(ones, 0.0) == 1.0);

  // Frequencies proportional to the Poisson(2) pmf, rounded to M = 10^6.
  std::vector<std::uint64_t> counts;
  double pk = std::exp(-2.0);
  for (std::uint64_t k = 0; k < 20; ++k) {
    counts.insert(counts.end(),
                  static_cast<std::size_t>(std::llround(pk * 1e6)), k);
    pk *= 2.0 / static_cast<double>(k + 1);
  }
  CHECK(tv_to_poisson(counts, 2.0) < 1e-5);
  CHECK_THROWS_AS(tv_to_poisson(std::vector<std::uint64_t>{}, 1.0),
                  DomainError);
  CHECK_THROWS_AS(tv_to_poisson(ones, -1.0), DomainError);
}

TEST_CASE("wilson interval examples", "[mc_engine]") {
  const auto half = wilson_interval(50, 100);
  CHECK(half.estimate == 0.5);
  CHECK_THAT(half.lo, WithinAbs(0.40383, 5e-6));
  CHECK_THAT(half.hi, WithinAbs(0.59617, 5e-6));
  const auto none = wilson_interval(0, 20);
  CHECK(none.lo == 0.0);
  CHECK(none.hi > 0.0);
  const auto all = wilson_interval(20, 20);
  CHECK(all.hi == 1.0);
  CHECK(all.lo < 1.0);
  CHECK_THROWS_AS(wilson_interval(3, 2), DomainError);
  CHECK_THROWS_AS(wilson_interval(0, 0), DomainError);
}

TEST_CASE("verdict summarizes the records", "[mc_engine]") {
  for (const double a : {0.5, 1.0, 2.0, 3.0}) {
    ExperimentConfig cfg = small_config();
    cfg.alpha = a;
    cfg.n = 200;
    const auto out = run_experiment(cfg);
    const auto rep = verdict(cfg, out);
    std::uint64_t absent = 0;
    std::uint64_t zero = 0;
    double w_sum = 0.0;
    for (const auto &rec : out) {
      absent += rec.e_star ? 0 : 1;
      zero += rec.w_count == 0 ? 1 : 0;
      w_sum += static_cast<double>(rec.w_count);
    }
    INFO("alpha " << a);
    CHECK(rep.replications == cfg.replications);
    CHECK(rep.absent_e_star == absent);
    CHECK(rep.empirical_prob_below_threshold.estimate ==
          static_cast<double>(zero) / static_cast<double>(cfg.replications));
    CHECK_THAT(rep.mean_w, WithinRel(w_sum / cfg.replications, 1e-14));
    CHECK(rep.target_sqrt_r == std::sqrt(cfg.r));
    CHECK(rep.r_n == threshold_r_n(RegimeSpec(a), WindowParams(cfg.n), cfg.r));
    CHECK(rep.ks_to_uniform);
    CHECK(rep.ks_to_limit_law);
    CHECK(rep.limit_law_alt.has_value() == (a == 1.0 || a < 1.0));
    CHECK(rep.analytic_tv_bound);
    CHECK(rep.analytic_mean ==
          mean_exceedances_closed_form(a, WindowParams(cfg.n), rep.r_n));
  }
}

TEST_CASE("accumulator merge is order independent", "[mc_engine]") {
  ExperimentConfig cfg = small_config();
  const auto out = run_experiment(cfg);
  ReplicationAccumulator a;
  ReplicationAccumulator b;
  for (std::size_t i = 0; i < out.size(); ++i) {
    (i % 3 == 0 ? a : b).add(out[i]);
  }
  ReplicationAccumulator ab = a;
  ab.merge(b);
  ReplicationAccumulator ba = b;
  ba.merge(a);
  const auto direct = verdict(cfg, out);
  for (const auto *acc : {&ab, &ba}) {
    const auto rep = verdict(cfg, *acc);
    CHECK(rep.replications == direct.replications);
    CHECK(rep.absent_e_star == direct.absent_e_star);
    CHECK(rep.empirical_prob_below_threshold.estimate ==
          direct.empirical_prob_below_threshold.estimate);
    CHECK(rep.ks_to_uniform == direct.ks_to_uniform);
    CHECK(rep.ks_to_limit_law == direct.ks_to_limit_law);
    CHECK(rep.tv_to_poisson == direct.tv_to_poisson);
    CHECK(rep.mean_w == direct.mean_w);
  }
  CHECK(ab.w_counts() == ba.w_counts());
}

TEST_CASE("experiment configuration validation", "[mc_engine]") {
  const auto bad = [](auto mutate) {
    ExperimentConfig cfg = small_config();
    mutate(cfg);
    return cfg;
  };
  CHECK_THROWS_AS(run_experiment(bad([](auto &c) { c.alpha = 0.0; })),
                  DomainError);
  CHECK_THROWS_AS(run_experiment(bad([](auto &c) { c.n = 0; })), DomainError);
  CHECK_THROWS_AS(run_experiment(bad([](auto &c) { c.r = 1.0; })),
                  DomainError);
  CHECK_THROWS_AS(run_experiment(bad([](auto &c) { c.replications = 0; })),
                  DomainError);
  CHECK_THROWS_AS(run_experiment(bad([](auto &c) { c.workers = 0; })),
                  DomainError);
  CHECK_THROWS_AS(run_experiment(bad([](auto &c) {
                    c.connection_form = ConnectionForm::HardThreshold;
                    c.radius = -1.0;
                  })),
                  DomainError);
  CHECK_THROWS_AS(run_experiment(bad([](auto &c) {
                    c.alpha = 1.5;
                    c.n = 2;
                    c.r = 1e-4;
                  })),
                  InfeasibleError);
}
