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

/*
 * C interface to the softrgg library.
 *
 * Every fallible call returns an srgg_status; on failure a description is
 * available from srgg_last_error() on the calling thread until its next
 * call into the library. Objects behind opaque handles must be released
 * with their matching *_free function (which accepts NULL).
 */

#ifndef SOFTRGG_SOFTRGG_H
#define SOFTRGG_SOFTRGG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(SOFTRGG_BUILDING)
#define SOFTRGG_API __declspec(dllexport)
#else
#define SOFTRGG_API __declspec(dllimport)
#endif
#else
#define SOFTRGG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum srgg_status {
  SRGG_OK = 0,
  SRGG_ERR_DOMAIN = 1,     /* argument outside the operation's domain */
  SRGG_ERR_INFEASIBLE = 2, /* n too small for (alpha, r) */
  SRGG_ERR_SIZE = 3,       /* size guard exceeded */
  SRGG_ERR_IO = 4,
  SRGG_ERR_NULL = 5,       /* required pointer argument was NULL */
  SRGG_ERR_INTERNAL = 6
} srgg_status;

SOFTRGG_API const char *srgg_version(void);
SOFTRGG_API const char *srgg_last_error(void);
SOFTRGG_API const char *srgg_status_name(srgg_status status);

/* ---------------------------------------------------------------------- */
/* Connection functions                                                   */

typedef enum srgg_form {
  SRGG_CAPPED_POWER = 0, /* min(1, |x|^-alpha) */
  SRGG_EXP_FORM = 1,     /* 1 - exp(-|x|^-alpha) */
  SRGG_HARD_THRESHOLD = 2,
  SRGG_ALWAYS_ONE = 3,
  SRGG_ALWAYS_ZERO = 4
} srgg_form;

typedef struct srgg_connection {
  int form;      /* srgg_form */
  double alpha;  /* power-law forms */
  double radius; /* SRGG_HARD_THRESHOLD */
} srgg_connection;

SOFTRGG_API const char *srgg_form_name(int form);
SOFTRGG_API srgg_status srgg_form_from_name(const char *name, int *form);
SOFTRGG_API srgg_status srgg_connection_eval(const srgg_connection *g,
                                             double d, double *out);
/* Integral of g over [a, b], 1 <= a <= b. */
SOFTRGG_API srgg_status srgg_tail_integral(const srgg_connection *g, double a,
                                           double b, double *out);

/* ---------------------------------------------------------------------- */
/* Regimes, thresholds and limit laws                                     */

typedef enum srgg_regime {
  SRGG_SUPERCRITICAL = 0, /* alpha > 2 */
  SRGG_CRITICAL2 = 1,     /* alpha == 2 */
  SRGG_INTERMEDIATE = 2,  /* 1 < alpha < 2 */
  SRGG_CRITICAL1 = 3,     /* alpha == 1 */
  SRGG_SUBCRITICAL = 4    /* alpha < 1 */
} srgg_regime;

typedef enum srgg_law_kind {
  SRGG_LAW_UNIFORM01 = 0,
  SRGG_LAW_FRECHET = 1,
  SRGG_LAW_Z_STAR = 2,
  SRGG_LAW_WEIBULL2 = 3,
  SRGG_LAW_Z_STAR_STAR = 4
} srgg_law_kind;

typedef struct srgg_law {
  int kind;    /* srgg_law_kind */
  double beta; /* Frechet shape */
} srgg_law;

typedef struct srgg_scaled {
  double value;
  srgg_law law;
  int has_alt; /* alpha <= 1 */
  double alt_value;
  srgg_law alt_law;
} srgg_scaled;

SOFTRGG_API srgg_status srgg_regime_of(double alpha, int *regime);
SOFTRGG_API const char *srgg_regime_name(int regime);
SOFTRGG_API const char *srgg_law_name(int kind);
SOFTRGG_API srgg_status srgg_h_eval(double x, double *out);
SOFTRGG_API srgg_status srgg_h_inverse(double y, double *out);
SOFTRGG_API srgg_status srgg_threshold_r_n(double alpha, int64_t n, double r,
                                           double *out);
SOFTRGG_API srgg_status srgg_transform_f_n(double alpha, int64_t n,
                                           double e_star, double *out);
SOFTRGG_API srgg_status srgg_scaled_statistic(double alpha, int64_t n,
                                              double e_star, srgg_scaled *out);
SOFTRGG_API srgg_status srgg_limit_cdf(const srgg_law *law, double z,
                                       double *out);

/* ---------------------------------------------------------------------- */
/* Point configurations and the graph sampler                             */

typedef struct srgg_points srgg_points;

SOFTRGG_API srgg_status srgg_points_sample(int64_t n, uint64_t master_seed,
                                           uint64_t stream_id,
                                           srgg_points **out);
/* Copies `count` strictly increasing positions inside [-n, n]. */
SOFTRGG_API srgg_status srgg_points_from_array(int64_t n,
                                               const double *positions,
                                               size_t count, srgg_points **out);
SOFTRGG_API void srgg_points_free(srgg_points *points);
SOFTRGG_API size_t srgg_points_size(const srgg_points *points);
SOFTRGG_API const double *srgg_points_data(const srgg_points *points);

SOFTRGG_API srgg_status srgg_pair_uniform(uint64_t master_seed,
                                          uint64_t stream_id, size_t i,
                                          size_t j, double *out);

typedef enum srgg_algorithm {
  SRGG_ALGO_LAZY = 0,  /* largest-first heap enumeration */
  SRGG_ALGO_NAIVE = 1, /* all pairs, K <= 10^4 */
  SRGG_ALGO_SCAN = 2   /* blocked row scan */
} srgg_algorithm;

typedef struct srgg_edge_result {
  int found;
  double length;
  size_t lo; /* sorted-order endpoint indices, lo < hi */
  size_t hi;
  uint64_t pairs_examined;
} srgg_edge_result;

SOFTRGG_API srgg_status srgg_longest_edge(const srgg_points *points,
                                          const srgg_connection *g,
                                          uint64_t master_seed,
                                          uint64_t stream_id, int algorithm,
                                          srgg_edge_result *out);
SOFTRGG_API srgg_status srgg_count_exceedances(const srgg_points *points,
                                               const srgg_connection *g,
                                               uint64_t master_seed,
                                               uint64_t stream_id, double r,
                                               uint64_t *count);

/* ---------------------------------------------------------------------- */
/* Analytics                                                              */

SOFTRGG_API srgg_status srgg_mean_closed_form(double alpha, int64_t n,
                                              double r_n, double *out);
SOFTRGG_API srgg_status srgg_mean_quadrature(const srgg_connection *g,
                                             int64_t n, double r_n,
                                             double *out);
SOFTRGG_API srgg_status srgg_max_tail_integral(double alpha, int64_t n,
                                               double r_n, double *out);

typedef struct srgg_tv_bound {
  int64_t n;
  double r_n;
  double mean;
  double max_tail_integral;
  double i_n;
  double frak_bound;
  double tv_bound;
  double rate_exponent;
  double rate_constant;
  double rate_cap;
} srgg_tv_bound;

/* reference_n anchors the rate envelope; 0 means n itself. */
SOFTRGG_API srgg_status srgg_tv_bound_report(double alpha, int64_t n, double r,
                                             int64_t reference_n,
                                             srgg_tv_bound *out);

/* ---------------------------------------------------------------------- */
/* Monte Carlo experiments                                                */

typedef struct srgg_config {
  double alpha;
  int64_t n;
  double r;
  uint64_t replications;
  uint64_t master_seed;
  int form;      /* srgg_form */
  double radius; /* SRGG_HARD_THRESHOLD */
  unsigned workers;
} srgg_config;

typedef struct srgg_record {
  uint64_t stream_id;
  uint64_t point_count;
  int has_e_star;
  double e_star;
  uint64_t w_count;
  int has_f_n;
  double f_n_value;
  int has_scaled;
  double scaled_value;
  int has_scaled_alt;
  double scaled_alt_value;
} srgg_record;

typedef struct srgg_verdict {
  double alpha;
  int64_t n;
  double r;
  double r_n;
  uint64_t replications;
  uint64_t absent_e_star;
  double prob_below;
  double wilson_lo;
  double wilson_hi;
  double target_sqrt_r;
  int has_ks_uniform;
  double ks_uniform;
  int has_ks_limit;
  double ks_limit;
  srgg_law limit_law;
  int has_ks_limit_alt;
  double ks_limit_alt;
  double tv_to_poisson;
  double analytic_mean;
  int has_tv_bound;
  double tv_bound;
  double mean_w;
} srgg_verdict;

typedef struct srgg_experiment srgg_experiment;

SOFTRGG_API void srgg_config_default(srgg_config *cfg);
/* The configuration as a JSON object, NUL-terminated. `needed` receives the
 * size including the terminator; buf may be NULL to query it. */
SOFTRGG_API srgg_status srgg_config_json(const srgg_config *cfg, char *buf,
                                         size_t capacity, size_t *needed);

SOFTRGG_API srgg_status srgg_experiment_run(const srgg_config *cfg,
                                            srgg_experiment **out);
SOFTRGG_API void srgg_experiment_free(srgg_experiment *exp);
SOFTRGG_API size_t srgg_experiment_size(const srgg_experiment *exp);
SOFTRGG_API srgg_status srgg_experiment_record(const srgg_experiment *exp,
                                               size_t index, srgg_record *out);
SOFTRGG_API srgg_status srgg_experiment_verdict(const srgg_experiment *exp,
                                                srgg_verdict *out);
SOFTRGG_API srgg_status srgg_experiment_write_jsonl(const srgg_experiment *exp,
                                                    const char *path);
SOFTRGG_API srgg_status
srgg_experiment_write_verdict(const srgg_experiment *exp, const char *path);

/* Lower-case hex SHA-256 of a file; `hex` must hold 65 bytes. */
SOFTRGG_API srgg_status srgg_file_sha256(const char *path, char *hex);

/* ---------------------------------------------------------------------- */
/* Acceptance criteria                                                    */

typedef struct srgg_report srgg_report;

/* Called after each criterion with its formatted report text. */
typedef void (*srgg_criterion_fn)(int criterion, int pass, const char *text,
                                  void *user);

/* Criterion ids of a suite (analytics, corollary, ks, poisson, all).
 * Writes at most `capacity` ids and sets *count to the suite size. */
SOFTRGG_API srgg_status srgg_suite_criteria(const char *suite, int *ids,
                                            size_t capacity, size_t *count);
SOFTRGG_API srgg_status srgg_verify(const int *criteria, size_t count,
                                    int fast, unsigned workers,
                                    uint64_t master_seed,
                                    srgg_criterion_fn on_result, void *user,
                                    srgg_report **out);
SOFTRGG_API void srgg_report_free(srgg_report *report);
SOFTRGG_API size_t srgg_report_size(const srgg_report *report);
SOFTRGG_API srgg_status srgg_report_entry(const srgg_report *report,
                                          size_t index, int *criterion,
                                          int *pass, double *seconds);
SOFTRGG_API int srgg_report_all_passed(const srgg_report *report);

#ifdef __cplusplus
}
#endif

#endif /* SOFTRGG_SOFTRGG_H */
