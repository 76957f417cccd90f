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

#include "softrgg/softrgg.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "analytics.hpp"
#include "connection.hpp"
#include "error.hpp"
#include "graph_sampler.hpp"
#include "io.hpp"
#include "mc_engine.hpp"
#include "points.hpp"
#include "random.hpp"
#include "regimes.hpp"
#include "verification.hpp"

#ifndef SOFTRGG_VERSION_STRING
#define SOFTRGG_VERSION_STRING "0.0.0"
#endif

struct srgg_points {
  softrgg::PointConfiguration pc;
};

struct srgg_experiment {
  softrgg::ExperimentConfig cfg;
  std::vector<softrgg::ReplicationResult> results;
  std::optional<softrgg::VerdictReport> verdict; // computed on first request
};

struct srgg_report {
  std::vector<softrgg::verification::CriterionResult> results;
};

namespace {

thread_local std::string last_error;

srgg_status fail(srgg_status status, const char *what) {
  last_error = what;
  return status;
}

template <class F> srgg_status guarded(F &&body) noexcept {
  try {
    last_error.clear();
    body();
    return SRGG_OK;
  } catch (const softrgg::InfeasibleError &e) {
    return fail(SRGG_ERR_INFEASIBLE, e.what());
  } catch (const softrgg::DomainError &e) {
    return fail(SRGG_ERR_DOMAIN, e.what());
  } catch (const softrgg::SizeError &e) {
    return fail(SRGG_ERR_SIZE, e.what());
  } catch (const softrgg::IoError &e) {
    return fail(SRGG_ERR_IO, e.what());
  } catch (const std::bad_alloc &) {
    return fail(SRGG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(SRGG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SRGG_ERR_INTERNAL, "unknown exception");
  }
}

softrgg::ConnectionForm to_form(int form) {
  if (form < SRGG_CAPPED_POWER || form > SRGG_ALWAYS_ZERO) {
    throw softrgg::DomainError("unknown connection form " +
                               std::to_string(form));
  }
  return static_cast<softrgg::ConnectionForm>(form);
}

softrgg::ConnectionFunction to_connection(const srgg_connection &g) {
  switch (to_form(g.form)) {
  case softrgg::ConnectionForm::CappedPower:
    return softrgg::ConnectionFunction::capped_power(g.alpha);
  case softrgg::ConnectionForm::ExpForm:
    return softrgg::ConnectionFunction::exp_form(g.alpha);
  case softrgg::ConnectionForm::HardThreshold:
    return softrgg::ConnectionFunction::hard_threshold(g.radius);
  case softrgg::ConnectionForm::AlwaysOne:
    return softrgg::ConnectionFunction::always_one();
  case softrgg::ConnectionForm::AlwaysZero:
    return softrgg::ConnectionFunction::always_zero();
  }
  throw softrgg::DomainError("unknown connection form");
}

softrgg::ExperimentConfig to_config(const srgg_config &c) {
  softrgg::ExperimentConfig cfg;
  cfg.alpha = c.alpha;
  cfg.n = c.n;
  cfg.r = c.r;
  cfg.replications = c.replications;
  cfg.master_seed = c.master_seed;
  cfg.connection_form = to_form(c.form);
  cfg.radius = c.radius;
  cfg.workers = c.workers;
  cfg.validate();
  return cfg;
}

srgg_law to_c(const softrgg::LimitLaw &law) {
  return {static_cast<int>(law.kind), law.beta};
}

softrgg::LimitLaw from_c(const srgg_law &law) {
  if (law.kind < SRGG_LAW_UNIFORM01 || law.kind > SRGG_LAW_Z_STAR_STAR) {
    throw softrgg::DomainError("unknown limit law " + std::to_string(law.kind));
  }
  const auto kind = static_cast<softrgg::LawKind>(law.kind);
  if (kind == softrgg::LawKind::Frechet) {
    return softrgg::LimitLaw::frechet(law.beta);
  }
  return {kind, 0.0};
}

template <class T> void set_opt(const std::optional<T> &v, int &has, T &out) {
  has = v.has_value() ? 1 : 0;
  out = v.value_or(T{});
}

const softrgg::VerdictReport &verdict_of(const srgg_experiment &exp) {
  if (!exp.verdict) {
    const_cast<srgg_experiment &>(exp).verdict =
        softrgg::verdict(exp.cfg, exp.results);
  }
  return *exp.verdict;
}

} // namespace

extern "C" {

const char *srgg_version(void) { return SOFTRGG_VERSION_STRING; }

const char *srgg_last_error(void) { return last_error.c_str(); }

const char *srgg_status_name(srgg_status status) {
  switch (status) {
  case SRGG_OK:
    return "ok";
  case SRGG_ERR_DOMAIN:
    return "domain error";
  case SRGG_ERR_INFEASIBLE:
    return "infeasible configuration";
  case SRGG_ERR_SIZE:
    return "size guard exceeded";
  case SRGG_ERR_IO:
    return "i/o error";
  case SRGG_ERR_NULL:
    return "null argument";
  case SRGG_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *srgg_form_name(int form) {
  if (form < SRGG_CAPPED_POWER || form > SRGG_ALWAYS_ZERO) {
    return "unknown";
  }
  return softrgg::to_string(static_cast<softrgg::ConnectionForm>(form)).data();
}

srgg_status srgg_form_from_name(const char *name, int *form) {
  if (!name || !form) {
    return fail(SRGG_ERR_NULL, "srgg_form_from_name: NULL argument");
  }
  const auto f = softrgg::parse_connection_form(name);
  if (!f) {
    return fail(SRGG_ERR_DOMAIN,
                (std::string("unknown connection form: ") + name).c_str());
  }
  *form = static_cast<int>(*f);
  return SRGG_OK;
}

srgg_status srgg_connection_eval(const srgg_connection *g, double d,
                                 double *out) {
  if (!g || !out) {
    return fail(SRGG_ERR_NULL, "srgg_connection_eval: NULL argument");
  }
  return guarded([&] { *out = softrgg::evaluate(to_connection(*g), d); });
}

srgg_status srgg_tail_integral(const srgg_connection *g, double a, double b,
                               double *out) {
  if (!g || !out) {
    return fail(SRGG_ERR_NULL, "srgg_tail_integral: NULL argument");
  }
  return guarded([&] { *out = softrgg::tail_integral(to_connection(*g), a, b); });
}

srgg_status srgg_regime_of(double alpha, int *regime) {
  if (!regime) {
    return fail(SRGG_ERR_NULL, "srgg_regime_of: NULL argument");
  }
  return guarded([&] {
    *regime = static_cast<int>(softrgg::RegimeSpec(alpha).regime());
  });
}

const char *srgg_regime_name(int regime) {
  if (regime < SRGG_SUPERCRITICAL || regime > SRGG_SUBCRITICAL) {
    return "unknown";
  }
  return softrgg::to_string(static_cast<softrgg::Regime>(regime)).data();
}

const char *srgg_law_name(int kind) {
  if (kind < SRGG_LAW_UNIFORM01 || kind > SRGG_LAW_Z_STAR_STAR) {
    return "unknown";
  }
  return softrgg::to_string(static_cast<softrgg::LawKind>(kind)).data();
}

srgg_status srgg_h_eval(double x, double *out) {
  if (!out) {
    return fail(SRGG_ERR_NULL, "srgg_h_eval: NULL argument");
  }
  return guarded([&] { *out = softrgg::h_eval(x); });
}

srgg_status srgg_h_inverse(double y, double *out) {
  if (!out) {
    return fail(SRGG_ERR_NULL, "srgg_h_inverse: NULL argument");
  }
  return guarded([&] { *out = softrgg::h_inverse(y); });
}

srgg_status srgg_threshold_r_n(double alpha, int64_t n, double r,
                               double *out) {
  if (!out) {
    return fail(SRGG_ERR_NULL, "srgg_threshold_r_n: NULL argument");
  }
  return guarded([&] {
    *out = softrgg::threshold_r_n(softrgg::RegimeSpec(alpha),
                                  softrgg::WindowParams(n), r);
  });
}

srgg_status srgg_transform_f_n(double alpha, int64_t n, double e_star,
                               double *out) {
  if (!out) {
    return fail(SRGG_ERR_NULL, "srgg_transform_f_n: NULL argument");
  }
  return guarded([&] {
    *out = softrgg::transform_f_n(softrgg::RegimeSpec(alpha),
                                  softrgg::WindowParams(n), e_star);
  });
}

srgg_status srgg_scaled_statistic(double alpha, int64_t n, double e_star,
                                  srgg_scaled *out) {
  if (!out) {
    return fail(SRGG_ERR_NULL, "srgg_scaled_statistic: NULL argument");
  }
  return guarded([&] {
    const auto st = softrgg::scaled_statistic(softrgg::RegimeSpec(alpha),
                                              softrgg::WindowParams(n), e_star);
    srgg_scaled s{};
    s.value = st.value;
    s.law = to_c(st.law);
    s.has_alt = st.alt_value ? 1 : 0;
    s.alt_value = st.alt_value.value_or(0.0);
    s.alt_law = st.alt_law ? to_c(*st.alt_law) : srgg_law{0, 0.0};
    *out = s;
  });
}

srgg_status srgg_limit_cdf(const srgg_law *law, double z, double *out) {
  if (!law || !out) {
    return fail(SRGG_ERR_NULL, "srgg_limit_cdf: NULL argument");
  }
  return guarded([&] { *out = softrgg::limit_cdf(from_c(*law), z); });
}

srgg_status srgg_points_sample(int64_t n, uint64_t master_seed,
                               uint64_t stream_id, srgg_points **out) {
  if (!out) {
    return fail(SRGG_ERR_NULL, "srgg_points_sample: NULL argument");
  }
  *out = nullptr;
  return guarded([&] {
    *out = new srgg_points{softrgg::sample_point_configuration(
        softrgg::WindowParams(n), softrgg::SeedSpec{master_seed, stream_id})};
  });
}

srgg_status srgg_points_from_array(int64_t n, const double *positions,
                                   size_t count, srgg_points **out) {
  if (!out || (!positions && count > 0)) {
    return fail(SRGG_ERR_NULL, "srgg_points_from_array: NULL argument");
  }
  *out = nullptr;
  return guarded([&] {
    std::vector<double> pos(positions, positions + count);
    *out = new srgg_points{
        softrgg::PointConfiguration(softrgg::WindowParams(n), std::move(pos))};
  });
}

void srgg_points_free(srgg_points *points) { delete points; }

size_t srgg_points_size(const srgg_points *points) {
  return points ? points->pc.size() : 0;
}

const double *srgg_points_data(const srgg_points *points) {
  return points ? points->pc.positions().data() : nullptr;
}

srgg_status srgg_pair_uniform(uint64_t master_seed, uint64_t stream_id,
                              size_t i, size_t j, double *out) {
  if (!out) {
    return fail(SRGG_ERR_NULL, "srgg_pair_uniform: NULL argument");
  }
  return guarded([&] {
    *out = softrgg::pair_uniform(softrgg::SeedSpec{master_seed, stream_id}, i,
                                 j);
  });
}

srgg_status srgg_longest_edge(const srgg_points *points,
                              const srgg_connection *g, uint64_t master_seed,
                              uint64_t stream_id, int algorithm,
                              srgg_edge_result *out) {
  if (!points || !g || !out) {
    return fail(SRGG_ERR_NULL, "srgg_longest_edge: NULL argument");
  }
  return guarded([&] {
    const auto conn = to_connection(*g);
    const softrgg::SeedSpec seed{master_seed, stream_id};
    softrgg::LongestEdgeResult res;
    switch (algorithm) {
    case SRGG_ALGO_LAZY:
      res = softrgg::longest_edge_lazy(points->pc, conn, seed);
      break;
    case SRGG_ALGO_NAIVE:
      res = softrgg::longest_edge_naive(points->pc, conn, seed);
      break;
    case SRGG_ALGO_SCAN:
      res = softrgg::longest_edge_scan(points->pc, conn, seed);
      break;
    default:
      throw softrgg::DomainError("unknown algorithm " +
                                 std::to_string(algorithm));
    }
    srgg_edge_result e{};
    e.found = res.length ? 1 : 0;
    e.length = res.length.value_or(0.0);
    if (res.endpoints) {
      e.lo = res.endpoints->lo;
      e.hi = res.endpoints->hi;
    }
    e.pairs_examined = res.pairs_examined;
    *out = e;
  });
}

srgg_status srgg_count_exceedances(const srgg_points *points,
                                   const srgg_connection *g,
                                   uint64_t master_seed, uint64_t stream_id,
                                   double r, uint64_t *count) {
  if (!points || !g || !count) {
    return fail(SRGG_ERR_NULL, "srgg_count_exceedances: NULL argument");
  }
  return guarded([&] {
    *count = softrgg::count_exceedances(points->pc, to_connection(*g),
                                        softrgg::SeedSpec{master_seed,
                                                          stream_id},
                                        r)
                 .count;
  });
}

srgg_status srgg_mean_closed_form(double alpha, int64_t n, double r_n,
                                  double *out) {
  if (!out) {
    return fail(SRGG_ERR_NULL, "srgg_mean_closed_form: NULL argument");
  }
  return guarded([&] {
    *out = softrgg::mean_exceedances_closed_form(alpha,
                                                 softrgg::WindowParams(n), r_n);
  });
}

srgg_status srgg_mean_quadrature(const srgg_connection *g, int64_t n,
                                 double r_n, double *out) {
  if (!g || !out) {
    return fail(SRGG_ERR_NULL, "srgg_mean_quadrature: NULL argument");
  }
  return guarded([&] {
    *out = softrgg::mean_exceedances_quadrature(
        to_connection(*g), softrgg::WindowParams(n), r_n);
  });
}

srgg_status srgg_max_tail_integral(double alpha, int64_t n, double r_n,
                                   double *out) {
  if (!out) {
    return fail(SRGG_ERR_NULL, "srgg_max_tail_integral: NULL argument");
  }
  return guarded([&] {
    *out = softrgg::max_tail_integral(alpha, softrgg::WindowParams(n), r_n);
  });
}

srgg_status srgg_tv_bound_report(double alpha, int64_t n, double r,
                                 int64_t reference_n, srgg_tv_bound *out) {
  if (!out) {
    return fail(SRGG_ERR_NULL, "srgg_tv_bound_report: NULL argument");
  }
  return guarded([&] {
    std::optional<softrgg::WindowParams> ref;
    if (reference_n != 0) {
      ref = softrgg::WindowParams(reference_n);
    }
    const auto rep =
        softrgg::tv_bound_report(alpha, softrgg::WindowParams(n), r, ref);
    *out = srgg_tv_bound{rep.n,          rep.r_n,
                         rep.mean,       rep.max_tail_integral,
                         rep.i_n,        rep.frak_bound,
                         rep.tv_bound,   rep.rate_exponent,
                         rep.rate_constant, rep.rate_cap};
  });
}

void srgg_config_default(srgg_config *cfg) {
  if (!cfg) {
    return;
  }
  const softrgg::ExperimentConfig d;
  *cfg = srgg_config{d.alpha,       d.n,
                     d.r,           d.replications,
                     d.master_seed, static_cast<int>(d.connection_form),
                     d.radius,      d.workers};
}

srgg_status srgg_config_json(const srgg_config *cfg, char *buf,
                             size_t capacity, size_t *needed) {
  if (!cfg || !needed) {
    return fail(SRGG_ERR_NULL, "srgg_config_json: NULL argument");
  }
  return guarded([&] {
    const std::string json = softrgg::io::config_json(to_config(*cfg)).str();
    *needed = json.size() + 1;
    if (buf) {
      if (capacity < json.size() + 1) {
        throw softrgg::SizeError("srgg_config_json: buffer too small");
      }
      std::memcpy(buf, json.c_str(), json.size() + 1);
    }
  });
}

srgg_status srgg_experiment_run(const srgg_config *cfg, srgg_experiment **out) {
  if (!cfg || !out) {
    return fail(SRGG_ERR_NULL, "srgg_experiment_run: NULL argument");
  }
  *out = nullptr;
  return guarded([&] {
    auto exp = std::make_unique<srgg_experiment>();
    exp->cfg = to_config(*cfg);
    exp->results = softrgg::run_experiment(exp->cfg);
    *out = exp.release();
  });
}

void srgg_experiment_free(srgg_experiment *exp) { delete exp; }

size_t srgg_experiment_size(const srgg_experiment *exp) {
  return exp ? exp->results.size() : 0;
}

srgg_status srgg_experiment_record(const srgg_experiment *exp, size_t index,
                                   srgg_record *out) {
  if (!exp || !out) {
    return fail(SRGG_ERR_NULL, "srgg_experiment_record: NULL argument");
  }
  if (index >= exp->results.size()) {
    return fail(SRGG_ERR_DOMAIN, "srgg_experiment_record: index out of range");
  }
  const auto &rec = exp->results[index];
  srgg_record r{};
  r.stream_id = rec.stream_id;
  r.point_count = rec.point_count;
  r.w_count = rec.w_count;
  set_opt(rec.e_star, r.has_e_star, r.e_star);
  set_opt(rec.f_n_value, r.has_f_n, r.f_n_value);
  set_opt(rec.scaled_value, r.has_scaled, r.scaled_value);
  set_opt(rec.scaled_alt_value, r.has_scaled_alt, r.scaled_alt_value);
  *out = r;
  return SRGG_OK;
}

srgg_status srgg_experiment_verdict(const srgg_experiment *exp,
                                    srgg_verdict *out) {
  if (!exp || !out) {
    return fail(SRGG_ERR_NULL, "srgg_experiment_verdict: NULL argument");
  }
  return guarded([&] {
    const auto &v = verdict_of(*exp);
    srgg_verdict c{};
    c.alpha = v.alpha;
    c.n = v.n;
    c.r = v.r;
    c.r_n = v.r_n;
    c.replications = v.replications;
    c.absent_e_star = v.absent_e_star;
    c.prob_below = v.empirical_prob_below_threshold.estimate;
    c.wilson_lo = v.empirical_prob_below_threshold.lo;
    c.wilson_hi = v.empirical_prob_below_threshold.hi;
    c.target_sqrt_r = v.target_sqrt_r;
    set_opt(v.ks_to_uniform, c.has_ks_uniform, c.ks_uniform);
    set_opt(v.ks_to_limit_law, c.has_ks_limit, c.ks_limit);
    c.limit_law = to_c(v.limit_law);
    set_opt(v.ks_to_limit_law_alt, c.has_ks_limit_alt, c.ks_limit_alt);
    c.tv_to_poisson = v.tv_to_poisson;
    c.analytic_mean = v.analytic_mean;
    set_opt(v.analytic_tv_bound, c.has_tv_bound, c.tv_bound);
    c.mean_w = v.mean_w;
    *out = c;
  });
}

srgg_status srgg_experiment_write_jsonl(const srgg_experiment *exp,
                                        const char *path) {
  if (!exp || !path) {
    return fail(SRGG_ERR_NULL, "srgg_experiment_write_jsonl: NULL argument");
  }
  return guarded([&] { softrgg::io::write_jsonl(path, exp->results); });
}

srgg_status srgg_experiment_write_verdict(const srgg_experiment *exp,
                                          const char *path) {
  if (!exp || !path) {
    return fail(SRGG_ERR_NULL, "srgg_experiment_write_verdict: NULL argument");
  }
  return guarded([&] {
    softrgg::io::write_file(
        path, softrgg::io::verdict_json(exp->cfg, verdict_of(*exp)) + "\n");
  });
}

srgg_status srgg_file_sha256(const char *path, char *hex) {
  if (!path || !hex) {
    return fail(SRGG_ERR_NULL, "srgg_file_sha256: NULL argument");
  }
  return guarded([&] {
    const std::string digest = softrgg::io::sha256_file(path);
    std::memcpy(hex, digest.c_str(), digest.size() + 1);
  });
}

srgg_status srgg_suite_criteria(const char *suite, int *ids, size_t capacity,
                                size_t *count) {
  if (!suite || !count || (!ids && capacity > 0)) {
    return fail(SRGG_ERR_NULL, "srgg_suite_criteria: NULL argument");
  }
  const auto s = softrgg::verification::parse_suite(suite);
  if (!s) {
    return fail(SRGG_ERR_DOMAIN,
                (std::string("unknown suite: ") + suite).c_str());
  }
  const auto list = softrgg::verification::suite_criteria(*s);
  *count = list.size();
  for (size_t i = 0; i < list.size() && i < capacity; ++i) {
    ids[i] = list[i];
  }
  return SRGG_OK;
}

srgg_status srgg_verify(const int *criteria, size_t count, int fast,
                        unsigned workers, uint64_t master_seed,
                        srgg_criterion_fn on_result, void *user,
                        srgg_report **out) {
  if (!out || (!criteria && count > 0)) {
    return fail(SRGG_ERR_NULL, "srgg_verify: NULL argument");
  }
  *out = nullptr;
  return guarded([&] {
    softrgg::verification::VerifyOptions opt;
    opt.fast = fast != 0;
    opt.workers = workers == 0 ? 1 : workers;
    opt.master_seed = master_seed;
    softrgg::verification::Verifier verifier(opt);
    auto report = std::make_unique<srgg_report>();
    for (size_t k = 0; k < count; ++k) {
      auto res = verifier.run(criteria[k]);
      if (on_result) {
        const std::string text = softrgg::verification::format_result(res);
        on_result(res.id, res.pass ? 1 : 0, text.c_str(), user);
      }
      report->results.push_back(std::move(res));
    }
    *out = report.release();
  });
}

void srgg_report_free(srgg_report *report) { delete report; }

size_t srgg_report_size(const srgg_report *report) {
  return report ? report->results.size() : 0;
}

srgg_status srgg_report_entry(const srgg_report *report, size_t index,
                              int *criterion, int *pass, double *seconds) {
  if (!report) {
    return fail(SRGG_ERR_NULL, "srgg_report_entry: NULL argument");
  }
  if (index >= report->results.size()) {
    return fail(SRGG_ERR_DOMAIN, "srgg_report_entry: index out of range");
  }
  const auto &r = report->results[index];
  if (criterion) {
    *criterion = r.id;
  }
  if (pass) {
    *pass = r.pass ? 1 : 0;
  }
  if (seconds) {
    *seconds = r.seconds;
  }
  return SRGG_OK;
}

int srgg_report_all_passed(const srgg_report *report) {
  if (!report) {
    return 0;
  }
  for (const auto &r : report->results) {
    if (!r.pass) {
      return 0;
    }
  }
  return 1;
}

} // extern "C"
