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

#include "mc_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "analytics.hpp"
#include "error.hpp"
#include "graph_sampler.hpp"
#include "points.hpp"
#include "random.hpp"

namespace softrgg {

void ExperimentConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be a positive finite number");
  }
  if (n < 1) {
    throw DomainError("n must be >= 1");
  }
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("r must lie in (0, 1)");
  }
  if (replications < 1) {
    throw DomainError("replications must be >= 1");
  }
  if (workers < 1) {
    throw DomainError("workers must be >= 1");
  }
}

ConnectionFunction make_connection(const ExperimentConfig &cfg) {
  switch (cfg.connection_form) {
  case ConnectionForm::CappedPower:
    return ConnectionFunction::capped_power(cfg.alpha);
  case ConnectionForm::ExpForm:
    return ConnectionFunction::exp_form(cfg.alpha);
  case ConnectionForm::HardThreshold:
    return ConnectionFunction::hard_threshold(cfg.radius);
  case ConnectionForm::AlwaysOne:
    return ConnectionFunction::always_one();
  case ConnectionForm::AlwaysZero:
    return ConnectionFunction::always_zero();
  }
  throw DomainError("unknown connection form");
}

ReplicationResult run_replication(const ExperimentConfig &cfg, double r_n,
                                  std::uint64_t stream_id) {
  const WindowParams w(cfg.n);
  const RegimeSpec spec(cfg.alpha);
  const ConnectionFunction g = make_connection(cfg);
  const SeedSpec seed{cfg.master_seed, stream_id};

  const PointConfiguration pc = sample_point_configuration(w, seed);
  const EdgeScan scan = scan_edges(pc, g, seed, r_n);

  ReplicationResult rec;
  rec.stream_id = stream_id;
  rec.point_count = pc.size();
  rec.w_count = scan.exceedances.count;
  if (scan.longest.length) {
    const double e = *scan.longest.length;
    rec.e_star = e;
    rec.f_n_value = transform_f_n(spec, w, e);
    const ScaledStatistic st = scaled_statistic(spec, w, e);
    rec.scaled_value = st.value;
    rec.scaled_alt_value = st.alt_value;
  }
  return rec;
}

std::vector<ReplicationResult> run_experiment(const ExperimentConfig &cfg) {
  cfg.validate();
  const double r_n =
      threshold_r_n(RegimeSpec(cfg.alpha), WindowParams(cfg.n), cfg.r);

  std::vector<ReplicationResult> out(cfg.replications);
  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(cfg.workers, cfg.replications));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    try {
      for (;;) {
        const std::uint64_t id = next.fetch_add(1, std::memory_order_relaxed);
        if (id >= cfg.replications) {
          return;
        }
        out[id] = run_replication(cfg, r_n, id);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) {
        failure = std::current_exception();
      }
      next.store(cfg.replications);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back(work);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return out;
}

double ks_distance(std::span<const double> samples, const LimitLaw &law) {
  if (samples.empty()) {
    throw DomainError("ks_distance: empty sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = law.cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / m - f;
    const double below = f - static_cast<double>(i) / m;
    d = std::max({d, above, below});
  }
  return d;
}

double tv_to_poisson(std::span<const std::uint64_t> counts, double mean) {
  if (counts.empty()) {
    throw DomainError("tv_to_poisson: empty sample");
  }
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("tv_to_poisson: mean must be finite and >= 0");
  }
  const std::uint64_t k_max = *std::max_element(counts.begin(), counts.end());
  std::vector<double> freq(k_max + 1, 0.0);
  for (const std::uint64_t c : counts) {
    freq[c] += 1.0;
  }
  const double m = static_cast<double>(counts.size());
  double l1 = 0.0;
  double mass = 0.0;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    double pk = 0.0;
    if (mean == 0.0) {
      pk = k == 0 ? 1.0 : 0.0;
    } else {
      const double kd = static_cast<double>(k);
      pk = std::exp(-mean + kd * std::log(mean) - std::lgamma(kd + 1.0));
    }
    mass += pk;
    l1 += std::fabs(freq[k] / m - pk);
  }
  l1 += std::max(0.0, 1.0 - mass);
  return 0.5 * l1;
}

ProportionInterval wilson_interval(std::uint64_t successes,
                                   std::uint64_t trials) {
  if (trials == 0 || successes > trials) {
    throw DomainError("wilson_interval: need 0 <= successes <= trials, "
                      "trials > 0");
  }
  constexpr double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {p, std::max(0.0, std::min(p, center - half)),
          std::min(1.0, std::max(p, center + half))};
}

void ReplicationAccumulator::push(Keyed &dst, std::uint64_t key, double v) {
  dst.emplace_back(key, v);
  if (dst.size() >= 2 * kSampleCap) {
    trim(dst);
  }
}

void ReplicationAccumulator::trim(Keyed &dst) {
  if (dst.size() <= kSampleCap) {
    return;
  }
  std::nth_element(dst.begin(), dst.begin() + kSampleCap, dst.end());
  dst.resize(kSampleCap);
}

std::vector<double> ReplicationAccumulator::values(const Keyed &src) {
  Keyed copy = src;
  trim(copy);
  std::vector<double> out;
  out.reserve(copy.size());
  for (const auto &kv : copy) {
    out.push_back(kv.second);
  }
  return out;
}

void ReplicationAccumulator::add(const ReplicationResult &rec) {
  ++replications_;
  if (rec.w_count == 0) {
    ++w_zero_;
  }
  if (!rec.e_star) {
    ++absent_;
  }
  w_sum_ += rec.w_count;
  ++w_histogram_[rec.w_count];
  const std::uint64_t key = rng::mix64(rec.stream_id ^ 0x5851f42d4c957f2dULL);
  if (rec.f_n_value) {
    push(f_n_, key, *rec.f_n_value);
  }
  if (rec.scaled_value) {
    push(scaled_, key, *rec.scaled_value);
  }
  if (rec.scaled_alt_value) {
    push(scaled_alt_, key, *rec.scaled_alt_value);
  }
}

void ReplicationAccumulator::merge(const ReplicationAccumulator &other) {
  replications_ += other.replications_;
  w_zero_ += other.w_zero_;
  absent_ += other.absent_;
  w_sum_ += other.w_sum_;
  for (const auto &[k, c] : other.w_histogram_) {
    w_histogram_[k] += c;
  }
  for (const auto &kv : other.f_n_) {
    push(f_n_, kv.first, kv.second);
  }
  for (const auto &kv : other.scaled_) {
    push(scaled_, kv.first, kv.second);
  }
  for (const auto &kv : other.scaled_alt_) {
    push(scaled_alt_, kv.first, kv.second);
  }
}

double ReplicationAccumulator::mean_w() const noexcept {
  return replications_ == 0
             ? 0.0
             : static_cast<double>(w_sum_ / static_cast<long double>(replications_));
}

std::vector<std::uint64_t> ReplicationAccumulator::w_counts() const {
  std::vector<std::uint64_t> out;
  out.reserve(replications_);
  for (const auto &[k, c] : w_histogram_) {
    out.insert(out.end(), c, k);
  }
  return out;
}

VerdictReport verdict(const ExperimentConfig &cfg,
                      std::span<const ReplicationResult> results) {
  ReplicationAccumulator acc;
  for (const auto &rec : results) {
    acc.add(rec);
  }
  return verdict(cfg, acc);
}

VerdictReport verdict(const ExperimentConfig &cfg,
                      const ReplicationAccumulator &acc) {
  cfg.validate();
  if (acc.replications() == 0) {
    throw DomainError("verdict: no replications");
  }
  const WindowParams w(cfg.n);
  const RegimeSpec spec(cfg.alpha);
  const ConnectionFunction g = make_connection(cfg);

  VerdictReport rep;
  rep.alpha = cfg.alpha;
  rep.n = cfg.n;
  rep.r = cfg.r;
  rep.r_n = threshold_r_n(spec, w, cfg.r);
  rep.replications = acc.replications();
  rep.absent_e_star = acc.absent();
  rep.empirical_prob_below_threshold =
      wilson_interval(acc.below_threshold(), acc.replications());
  rep.target_sqrt_r = std::sqrt(cfg.r);

  const auto f_values = acc.f_n_values();
  if (!f_values.empty()) {
    rep.ks_to_uniform = ks_distance(f_values, LimitLaw::uniform01());
  }
  const ScaledStatistic probe = scaled_statistic(spec, w, w.length());
  rep.limit_law = probe.law;
  const auto scaled = acc.scaled_values();
  if (!scaled.empty()) {
    rep.ks_to_limit_law = ks_distance(scaled, probe.law);
  }
  if (probe.alt_law) {
    rep.limit_law_alt = probe.alt_law;
    const auto alt = acc.scaled_alt_values();
    if (!alt.empty()) {
      rep.ks_to_limit_law_alt = ks_distance(alt, *probe.alt_law);
    }
  }

  const bool exact_closed_form =
      g.form() == ConnectionForm::CappedPower && rep.r_n >= 1.0;
  rep.analytic_mean = exact_closed_form
                          ? mean_exceedances_closed_form(cfg.alpha, w, rep.r_n)
                          : mean_exceedances_quadrature(g, w, rep.r_n);
  const auto counts = acc.w_counts();
  rep.tv_to_poisson = tv_to_poisson(counts, rep.analytic_mean);
  if (g.has_power_tail() && rep.r_n >= 1.0) {
    rep.analytic_tv_bound = tv_bound_report(cfg.alpha, w, cfg.r).tv_bound;
  }
  rep.mean_w = acc.mean_w();
  return rep;
}

} // namespace softrgg
