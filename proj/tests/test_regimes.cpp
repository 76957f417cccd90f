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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "error.hpp"
#include "points.hpp"
#include "regimes.hpp"

using namespace softrgg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kE = std::exp(1.0);

// Thresholds written directly from the closed formulas with std::pow, no
// log-space assembly. c_r for alpha == 2 is supplied by the caller.
double r_n_oracle(double a, double n, double r, double c_r = 0.0) {
  const double nl = -std::log(r);
  if (a > 2.0) {
    return std::pow(2.0 * n, 1.0 / (a - 1.0)) *
           std::pow((1.0 - a) / 2.0 * std::log(r), 1.0 / (1.0 - a));
  }
  if (a == 2.0) {
    return c_r * n;
  }
  if (a > 1.0) {
    return std::pow(std::pow(2.0 * n, 2.0 - a) -
                        (2.0 - a) * std::pow(2.0, 1.0 - a / 2.0) *
                            std::sqrt(nl) * std::pow(n, 1.0 - a / 2.0),
                    1.0 / (2.0 - a));
  }
  if (a == 1.0) {
    const double g_r = std::exp(-std::sqrt(8.0 * nl));
    return 2.0 * n * std::pow(g_r, 1.0 / (4.0 * std::sqrt(n)));
  }
  return std::pow(std::pow(2.0 * n, 1.0 - a) -
                      (1.0 - a) * std::pow(2.0, -a / 2.0) * std::sqrt(nl) *
                          std::pow(n, -a / 2.0),
                  1.0 / (1.0 - a));
}

double f_n_oracle(double a, double n, double e) {
  if (a > 2.0) {
    return std::exp(2.0 * n / (1.0 - a) * std::pow(e, 1.0 - a));
  }
  if (a == 2.0) {
    const double x = e / n;
    return 1.0 / (x / 2.0 * std::exp((2.0 - x) / x));
  }
  if (a > 1.0) {
    const double d = std::pow(e, 2.0 - a) - std::pow(2.0 * n, 2.0 - a);
    return std::exp(-std::pow(2.0 * n, a - 2.0) * d * d /
                    (2.0 * (2.0 - a) * (2.0 - a)));
  }
  if (a == 1.0) {
    const double l = std::log(e / (2.0 * n));
    return std::exp(-n * l * l);
  }
  const double d = std::pow(e, 1.0 - a) - std::pow(2.0 * n, 1.0 - a);
  return std::exp(-std::pow(2.0 * n, a) * d * d /
                  (2.0 * (1.0 - a) * (1.0 - a)));
}

const std::vector<double> kAlphas = {0.25, 0.5, 0.9, 1.0, 1.2,
                                     1.5, 1.8, 2.0, 2.5, 3.0, 4.0};

} // namespace

TEST_CASE("regime classification uses exact comparison", "[regimes]") {
  CHECK(RegimeSpec(3.0).regime() == Regime::SuperCritical);
  CHECK(RegimeSpec(std::nextafter(2.0, 3.0)).regime() ==
        Regime::SuperCritical);
  CHECK(RegimeSpec(2.0).regime() == Regime::Critical2);
  CHECK(RegimeSpec(std::nextafter(2.0, 1.0)).regime() == Regime::Intermediate);
  CHECK(RegimeSpec(std::nextafter(1.0, 2.0)).regime() == Regime::Intermediate);
  CHECK(RegimeSpec(1.0).regime() == Regime::Critical1);
  CHECK(RegimeSpec(std::nextafter(1.0, 0.0)).regime() == Regime::SubCritical);
  CHECK(RegimeSpec(0.01).regime() == Regime::SubCritical);
  CHECK_THROWS_AS(RegimeSpec(0.0), DomainError);
  CHECK_THROWS_AS(RegimeSpec(-2.0), DomainError);
  CHECK_THROWS_AS(RegimeSpec(NAN), DomainError);
}

TEST_CASE("h examples", "[regimes]") {
  CHECK_THAT(h_eval(2.0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(h_eval(1.0), WithinRel(kE / 2.0, 1e-15));
  CHECK_THAT(h_eval(0.1), WithinRel(0.05 * std::exp(19.0), 1e-13));
  CHECK(std::isfinite(log_h(1e-3)));
  CHECK_THAT(log_h(1e-3), WithinRel(std::log(5e-4) + 1999.0, 1e-13));
  CHECK_THROWS_AS(h_eval(0.0), DomainError);
  CHECK_THROWS_AS(h_eval(2.0001), DomainError);
}

TEST_CASE("h is strictly decreasing", "[regimes]") {
  double prev = std::numeric_limits<double>::infinity();
  for (double x = 0.01; x <= 2.0; x += 0.001) {
    const double v = h_eval(x);
    REQUIRE(v < prev);
    prev = v;
  }
}

TEST_CASE("h inverse examples and round trip", "[regimes]") {
  CHECK_THAT(h_inverse(1.0), WithinAbs(2.0, 1e-13));
  CHECK_THAT(h_inverse(kE / 2.0), WithinAbs(1.0, 1e-12));
  CHECK_THROWS_AS(h_inverse(0.999), DomainError);
  CHECK_THROWS_AS(h_inverse(INFINITY), DomainError);

  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> logy(0.0, std::log(1e6));
  for (int k = 0; k < 1000; ++k) {
    const double y = std::exp(logy(gen));
    REQUIRE_THAT(h_eval(h_inverse(y)), WithinRel(y, 1e-10));
  }
  CHECK_THAT(h_eval(h_inverse(1e300)), WithinRel(1e300, 1e-10));
}

TEST_CASE("threshold examples", "[regimes]") {
  CHECK_THAT(threshold_r_n(RegimeSpec(3.0), WindowParams(50), std::exp(-2.0)),
             WithinRel(10.0 / std::sqrt(2.0), 1e-12));
  CHECK_THAT(threshold_r_n(RegimeSpec(2.0), WindowParams(100),
                           4.0 / (kE * kE)),
             WithinRel(100.0, 1e-11));
  CHECK_THAT(threshold_r_n(RegimeSpec(1.0), WindowParams(100),
                           std::exp(-1.0 / 8.0)),
             WithinRel(200.0 * std::exp(-1.0 / 40.0), 1e-13));
  CHECK_THAT(threshold_r_n(RegimeSpec(1.0), WindowParams(100),
                           std::exp(-1.0 / 8.0)),
             WithinAbs(195.0620, 1e-4));
}

TEST_CASE("thresholds match the direct power formulas", "[regimes]") {
  for (const double a : kAlphas) {
    for (const std::int64_t n : {100, 1000, 10000}) {
      for (const double r : {0.05, 0.3, 0.5, 0.9}) {
        const RegimeSpec spec(a);
        const WindowParams w(n);
        const double c_r = a == 2.0 ? h_inverse(1.0 / std::sqrt(r)) : 0.0;
        const double oracle = r_n_oracle(a, static_cast<double>(n), r, c_r);
        INFO("alpha " << a << " n " << n << " r " << r);
        if (!(oracle > 0.0 && oracle < 2.0 * n)) {
          CHECK_THROWS_AS(threshold_r_n(spec, w, r), InfeasibleError);
          continue;
        }
        CHECK_THAT(threshold_r_n(spec, w, r), WithinRel(oracle, 1e-10));
      }
    }
  }
}

TEST_CASE("infeasible thresholds", "[regimes]") {
  CHECK_THROWS_AS(threshold_r_n(RegimeSpec(1.5), WindowParams(2), 1e-4),
                  InfeasibleError);
  CHECK_THROWS_AS(threshold_r_n(RegimeSpec(0.5), WindowParams(1), 1e-6),
                  InfeasibleError);
  // A small window with r close to 1 still has a positive bracketed base.
  const double r_n = threshold_r_n(RegimeSpec(1.5), WindowParams(2), 0.99);
  CHECK(r_n > 0.0);
  CHECK(r_n < 4.0);
  CHECK_THROWS_AS(threshold_r_n(RegimeSpec(3.0), WindowParams(10), 0.0),
                  DomainError);
  CHECK_THROWS_AS(threshold_r_n(RegimeSpec(3.0), WindowParams(10), 1.0),
                  DomainError);
}

TEST_CASE("transform examples", "[regimes]") {
  CHECK_THAT(transform_f_n(RegimeSpec(1.0), WindowParams(37), 74.0),
             WithinAbs(1.0, 1e-15));
  CHECK_THAT(transform_f_n(RegimeSpec(3.0), WindowParams(50), 10.0),
             WithinRel(std::exp(-0.5), 1e-14));
  CHECK_THAT(transform_f_n(RegimeSpec(2.0), WindowParams(100), 100.0),
             WithinRel(2.0 / kE, 1e-14));
  CHECK(transform_f_n(RegimeSpec(3.0), WindowParams(50), 1e-9) == 0.0);
  CHECK_THROWS_AS(transform_f_n(RegimeSpec(3.0), WindowParams(50), 0.0),
                  DomainError);
  CHECK_THROWS_AS(transform_f_n(RegimeSpec(3.0), WindowParams(50), 100.001),
                  DomainError);
}

TEST_CASE("transforms match the direct formulas", "[regimes]") {
  for (const double a : kAlphas) {
    for (const std::int64_t n : {10, 1000}) {
      const double two_n = 2.0 * n;
      for (double e = 0.05 * two_n; e <= two_n; e += 0.05 * two_n) {
        const double oracle = f_n_oracle(a, static_cast<double>(n), e);
        if (oracle < 1e-250) {
          continue;
        }
        INFO("alpha " << a << " n " << n << " e " << e);
        REQUIRE_THAT(transform_f_n(RegimeSpec(a), WindowParams(n), e),
                     WithinRel(oracle, 1e-9));
      }
    }
  }
}

TEST_CASE("threshold maps to sqrt(r) under the transform", "[regimes]") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int k = 0; k < 5000; ++k) {
    const double a = k % 5 == 0   ? std::vector{0.5, 1.0, 1.5, 2.0, 3.0}[k / 5 % 5]
                                  : 4.0 * unit(gen) + 1e-3;
    const auto n = static_cast<std::int64_t>(std::exp(std::log(1e4) * unit(gen)));
    const double r = 1e-6 + (1.0 - 2e-6) * unit(gen);
    const RegimeSpec spec(a);
    const WindowParams w(std::max<std::int64_t>(n, 1));
    double r_n = 0.0;
    try {
      r_n = threshold_r_n(spec, w, r);
    } catch (const InfeasibleError &) {
      continue;
    }
    INFO("alpha " << a << " n " << w.n() << " r " << r);
    REQUIRE_THAT(transform_f_n(spec, w, r_n), WithinRel(std::sqrt(r), 1e-9));
    ++checked;
  }
  CHECK(checked > 3000);
}

TEST_CASE("transforms are strictly increasing", "[regimes]") {
  for (const double a : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const WindowParams w(200);
    double prev = -1.0;
    for (double e = 40.0; e <= 400.0; e += 0.05) {
      const double v = transform_f_n(RegimeSpec(a), w, e);
      INFO("alpha " << a << " e " << e);
      // Deep in the lower tail the value underflows through the subnormals.
      if (prev > 1e-300) {
        REQUIRE(v > prev);
      } else {
        REQUIRE(v >= prev);
      }
      prev = v;
    }
  }
}

TEST_CASE("scaled statistic examples", "[regimes]") {
  for (const double a : {0.3, 1.0}) {
    const auto st = scaled_statistic(RegimeSpec(a), WindowParams(64), 128.0);
    CHECK(st.value == 0.0);
    CHECK(st.law == LimitLaw::weibull_two());
    CHECK(st.law.cdf(st.value) == 1.0);
  }
  const auto fr =
      scaled_statistic(RegimeSpec(3.0), WindowParams(50), std::sqrt(50.0));
  CHECK_THAT(fr.value, WithinRel(1.0, 1e-14));
  CHECK(fr.law == LimitLaw::frechet(2.0));
  CHECK_THAT(fr.law.cdf(fr.value), WithinRel(std::exp(-1.0), 1e-13));

  const std::int64_t n = 400;
  const double e = 2.0 * n * std::exp(-1.0 / std::sqrt(400.0));
  const auto c1 = scaled_statistic(RegimeSpec(1.0), WindowParams(n), e);
  REQUIRE(c1.alt_value);
  REQUIRE(c1.alt_law);
  CHECK(*c1.alt_law == LimitLaw::z_star_star());
  CHECK_THAT(*c1.alt_value, WithinRel(std::exp(-1.0), 1e-13));
  CHECK_THAT(c1.alt_law->cdf(*c1.alt_value), WithinRel(std::exp(-1.0), 1e-12));

  const auto c2 = scaled_statistic(RegimeSpec(2.0), WindowParams(10), 5.0);
  CHECK(c2.value == 0.25);
  CHECK(c2.law == LimitLaw::z_star());
  CHECK_FALSE(c2.alt_value);
}

TEST_CASE("scaled statistics match the direct formulas", "[regimes]") {
  const double n = 300.0;
  const WindowParams w(300);
  const double e = 412.5;
  {
    const double a = 2.5;
    CHECK_THAT(scaled_statistic(RegimeSpec(a), w, e).value,
               WithinRel(std::pow(2.0 * n / (a - 1.0), 1.0 / (1.0 - a)) * e,
                         1e-13));
  }
  {
    const double a = 1.4;
    const double expected = std::pow(2.0, -0.5) / (2.0 - a) *
                            std::pow(2.0 * n, a / 2.0 - 1.0) *
                            (std::pow(e, 2.0 - a) - std::pow(2.0 * n, 2.0 - a));
    const auto st = scaled_statistic(RegimeSpec(a), w, e);
    CHECK_THAT(st.value, WithinRel(expected, 1e-12));
    CHECK(st.law == LimitLaw::weibull_two());
  }
  {
    const double a = 0.6;
    const auto st = scaled_statistic(RegimeSpec(a), w, e);
    CHECK_THAT(st.value, WithinRel(std::pow(2.0, -0.5) *
                                       std::pow(2.0 * n, -a / 2.0) *
                                       (e - 2.0 * n),
                                   1e-13));
    REQUIRE(st.alt_value);
    CHECK(*st.alt_law == LimitLaw::weibull_two());
    // Exact-power variant sharing the Weibull limit; agrees with the
    // linearization to first order in (e - 2n).
    CHECK(*st.alt_value < 0.0);
  }
}

TEST_CASE("limit law examples", "[regimes]") {
  CHECK(LimitLaw::z_star().cdf(1.0) == 1.0);
  CHECK_THAT(LimitLaw::weibull_two().cdf(-1.0),
             WithinRel(std::exp(-1.0), 1e-15));
  CHECK_THAT(LimitLaw::z_star().cdf(0.5), WithinRel(2.0 * std::exp(-1.0), 1e-15));
  CHECK(LimitLaw::weibull_two().cdf(0.1) == 1.0);
  CHECK(LimitLaw::uniform01().cdf(-0.5) == 0.0);
  CHECK(LimitLaw::uniform01().cdf(0.25) == 0.25);
  CHECK(LimitLaw::uniform01().cdf(3.0) == 1.0);
  CHECK(LimitLaw::frechet(2.0).cdf(0.0) == 0.0);
  CHECK(LimitLaw::z_star_star().cdf(2.0) == 1.0);
  CHECK_THROWS_AS(LimitLaw::frechet(0.0), DomainError);
}

TEST_CASE("limit laws are valid distribution functions", "[regimes]") {
  for (const auto &law :
       {LimitLaw::uniform01(), LimitLaw::frechet(0.5), LimitLaw::frechet(2.0),
        LimitLaw::z_star(), LimitLaw::weibull_two(),
        LimitLaw::z_star_star()}) {
    INFO(to_string(law.kind));
    double prev = 0.0;
    for (int k = 0; k <= 10000; ++k) {
      const double z = -10.0 + 20.0 * k / 10000.0;
      const double v = law.cdf(z);
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
      REQUIRE(v >= prev);
      prev = v;
    }
    CHECK(law.cdf(-1e300) <= 1e-12);
    if (law.kind != LawKind::WeibullTwo) {
      // Laws supported on [0, inf).
      CHECK(law.cdf(1e-300) <= 1e-12);
    }
    CHECK(law.cdf(1e300) >= 1.0 - 1e-12);
  }
}

TEST_CASE("threshold is continuous in alpha away from 1 and 2",
          "[regimes]") {
  const WindowParams w(5000);
  const double r = 0.5;
  for (const auto &[lo, hi] : std::vector<std::pair<double, double>>{
           {0.2, 0.98}, {1.02, 1.98}, {2.2, 4.0}}) {
    double prev = threshold_r_n(RegimeSpec(lo), w, r);
    for (double a = lo + 1e-4; a <= hi; a += 1e-4) {
      const double v = threshold_r_n(RegimeSpec(a), w, r);
      INFO("alpha " << a);
      REQUIRE(std::fabs(v - prev) < 2e-3 * prev);
      prev = v;
    }
  }
}
