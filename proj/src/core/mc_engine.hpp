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

#ifndef SOFTRGG_CORE_MC_ENGINE_HPP
#define SOFTRGG_CORE_MC_ENGINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "connection.hpp"
#include "regimes.hpp"

namespace softrgg {

struct ExperimentConfig {
  double alpha = 3.0;
  std::int64_t n = 1000;
  double r = 0.5;
  std::uint64_t replications = 1000;
  std::uint64_t master_seed = 0;
  ConnectionForm connection_form = ConnectionForm::CappedPower;
  double radius = 1.0; // HardThreshold only
  unsigned workers = 1;

  /// Throws DomainError on an invalid field.
  void validate() const;
};

/// Connection function selected by the configuration.
ConnectionFunction make_connection(const ExperimentConfig &cfg);

struct ReplicationResult {
  std::uint64_t stream_id = 0;
  std::uint64_t point_count = 0;
  std::optional<double> e_star;
  std::uint64_t w_count = 0;
  std::optional<double> f_n_value;
  std::optional<double> scaled_value;
  std::optional<double> scaled_alt_value;

  friend bool operator==(const ReplicationResult &,
                         const ReplicationResult &) = default;
};

/// One replication; a pure function of (cfg, stream_id). r_n is passed in
/// so sweeps do not recompute it per replication.
ReplicationResult run_replication(const ExperimentConfig &cfg, double r_n,
                                  std::uint64_t stream_id);

/**
 * Runs cfg.replications replications on cfg.workers threads. The output is
 * ordered by stream_id and identical for any worker count. Throws
 * InfeasibleError when r_n cannot be formed; no partial results escape.
 */
std::vector<ReplicationResult> run_experiment(const ExperimentConfig &cfg);

/// sup |F_emp - F_law| evaluated on both sides of every order statistic.
/// Throws DomainError on an empty sample.
double ks_distance(std::span<const double> samples, const LimitLaw &law);

/// Half the l1 distance between the empirical pmf of `counts` and
/// Poisson(mean), including the Poisson mass beyond the largest count.
double tv_to_poisson(std::span<const std::uint64_t> counts, double mean);

struct ProportionInterval {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval at 95%.
ProportionInterval wilson_interval(std::uint64_t successes,
                                   std::uint64_t trials);

/**
 * Order-independent streaming aggregate of replication records (a
 * commutative monoid under merge). Sample vectors are capped by keeping
 * the records with the smallest stream-id hash, so the retained subset does
 * not depend on arrival order.
 */
class ReplicationAccumulator {
public:
  static constexpr std::size_t kSampleCap = 1'000'000;

  void add(const ReplicationResult &rec);
  void merge(const ReplicationAccumulator &other);

  std::uint64_t replications() const noexcept { return replications_; }
  std::uint64_t below_threshold() const noexcept { return w_zero_; }
  std::uint64_t absent() const noexcept { return absent_; }
  double mean_w() const noexcept;
  std::vector<std::uint64_t> w_counts() const;
  std::vector<double> f_n_values() const { return values(f_n_); }
  std::vector<double> scaled_values() const { return values(scaled_); }
  std::vector<double> scaled_alt_values() const { return values(scaled_alt_); }

private:
  using Keyed = std::vector<std::pair<std::uint64_t, double>>;
  static void push(Keyed &dst, std::uint64_t key, double v);
  static void trim(Keyed &dst);
  static std::vector<double> values(const Keyed &src);

  std::uint64_t replications_ = 0;
  std::uint64_t w_zero_ = 0;
  std::uint64_t absent_ = 0;
  long double w_sum_ = 0.0L;
  std::map<std::uint64_t, std::uint64_t> w_histogram_;
  Keyed f_n_;
  Keyed scaled_;
  Keyed scaled_alt_;
};

struct VerdictReport {
  double alpha = 0.0;
  std::int64_t n = 0;
  double r = 0.0;
  double r_n = 0.0;
  std::uint64_t replications = 0;
  std::uint64_t absent_e_star = 0;
  ProportionInterval empirical_prob_below_threshold;
  double target_sqrt_r = 0.0;
  std::optional<double> ks_to_uniform;
  std::optional<double> ks_to_limit_law;
  LimitLaw limit_law;
  std::optional<double> ks_to_limit_law_alt;
  std::optional<LimitLaw> limit_law_alt;
  double tv_to_poisson = 0.0;
  double analytic_mean = 0.0;
  std::optional<double> analytic_tv_bound; // pure-power bound, r_n >= 1 only
  double mean_w = 0.0;
};

VerdictReport verdict(const ExperimentConfig &cfg,
                      std::span<const ReplicationResult> results);

VerdictReport verdict(const ExperimentConfig &cfg,
                      const ReplicationAccumulator &acc);

} // namespace softrgg

#endif // SOFTRGG_CORE_MC_ENGINE_HPP
