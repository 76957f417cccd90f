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

#include "regimes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"

namespace softrgg {

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
  case Regime::SuperCritical:
    return "supercritical";
  case Regime::Critical2:
    return "critical2";
  case Regime::Intermediate:
    return "intermediate";
  case Regime::Critical1:
    return "critical1";
  case Regime::SubCritical:
    return "subcritical";
  }
  return "unknown";
}

std::string_view to_string(LawKind kind) noexcept {
  switch (kind) {
  case LawKind::Uniform01:
    return "uniform01";
  case LawKind::Frechet:
    return "frechet";
  case LawKind::ZStar:
    return "z_star";
  case LawKind::WeibullTwo:
    return "weibull2";
  case LawKind::ZStarStar:
    return "z_star_star";
  }
  return "unknown";
}

RegimeSpec::RegimeSpec(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be a positive finite number");
  }
  if (alpha > 2.0) {
    regime_ = Regime::SuperCritical;
  } else if (alpha == 2.0) {
    regime_ = Regime::Critical2;
  } else if (alpha > 1.0) {
    regime_ = Regime::Intermediate;
  } else if (alpha == 1.0) {
    regime_ = Regime::Critical1;
  } else {
    regime_ = Regime::SubCritical;
  }
}

LimitLaw LimitLaw::frechet(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("Frechet shape must be positive");
  }
  return {LawKind::Frechet, beta};
}

double LimitLaw::cdf(double z) const noexcept {
  switch (kind) {
  case LawKind::Uniform01:
    return z <= 0.0 ? 0.0 : (z >= 1.0 ? 1.0 : z);
  case LawKind::Frechet:
    return z > 0.0 ? std::exp(-std::pow(z, -beta)) : 0.0;
  case LawKind::ZStar:
    if (z <= 0.0) {
      return 0.0;
    }
    return z < 1.0 ? std::exp(-std::log(z) + (z - 1.0) / z) : 1.0;
  case LawKind::WeibullTwo:
    return z <= 0.0 ? std::exp(-z * z) : 1.0;
  case LawKind::ZStarStar: {
    if (z <= 0.0) {
      return 0.0;
    }
    if (z >= 1.0) {
      return 1.0;
    }
    const double l = std::log(z);
    return std::exp(-l * l);
  }
  }
  return 0.0;
}

double log_h(double x) {
  if (!(x > 0.0) || !(x <= 2.0)) {
    throw DomainError("h is defined on (0, 2], got " + std::to_string(x));
  }
  return std::log(x / 2.0) + (2.0 - x) / x;
}

double h_eval(double x) { return std::exp(log_h(x)); }

double h_inverse(double y) {
  if (!(y >= 1.0) || !std::isfinite(y)) {
    throw DomainError("h_inverse requires finite y >= 1, got " +
                      std::to_string(y));
  }
  const double target = std::log(y);
  double lo = 0.2;
  for (int k = 0; k < 1100 && !(log_h(lo) > target); ++k) {
    lo *= 0.5;
  }
  double hi = 2.0;
  if (!(log_h(hi) < target)) {
    return hi;
  }
  // log_h(lo) > target > log_h(hi); bisect to the last representable split.
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) {
      break;
    }
    if (log_h(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

void require_r(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("r must lie in (0, 1), got " + std::to_string(r));
  }
}

[[noreturn]] void too_small(const RegimeSpec &spec, const WindowParams &w,
                            double r) {
  throw InfeasibleError("n too small for (alpha, r): alpha=" +
                        std::to_string(spec.alpha()) +
                        " n=" + std::to_string(w.n()) +
                        " r=" + std::to_string(r));
}

// ln r_n for the two "power minus correction" branches:
// r_n = ((2n)^e - e * c)^(1/e)  =>  ln r_n = ln 2n + log1p(-e c / (2n)^e) / e
double log_power_branch(double log2n, double e, double correction, bool &ok) {
  const double x = e * correction * std::exp(-e * log2n);
  ok = x < 1.0;
  return log2n + std::log1p(-x) / e;
}

void require_e_star(const WindowParams &w, double e_star) {
  if (!(e_star > 0.0) || !(e_star <= w.length())) {
    throw DomainError("e_star must lie in (0, 2n], got " +
                      std::to_string(e_star));
  }
}

} // namespace

double threshold_r_n(const RegimeSpec &spec, const WindowParams &w, double r) {
  require_r(r);
  const double a = spec.alpha();
  const double n = w.half_length();
  const double log2n = std::log(w.length());
  const double neg_log_r = -std::log(r);

  double r_n = 0.0;
  switch (spec.regime()) {
  case Regime::SuperCritical:
    r_n = std::exp(log2n / (a - 1.0) +
                   std::log((a - 1.0) / 2.0 * neg_log_r) / (1.0 - a));
    break;
  case Regime::Critical2:
    r_n = h_inverse(1.0 / std::sqrt(r)) * n;
    break;
  case Regime::Intermediate: {
    const double c = std::pow(2.0, 1.0 - a / 2.0) * std::sqrt(neg_log_r) *
                     std::pow(n, 1.0 - a / 2.0);
    bool ok = false;
    const double log_rn = log_power_branch(log2n, 2.0 - a, c, ok);
    if (!ok) {
      too_small(spec, w, r);
    }
    r_n = std::exp(log_rn);
    break;
  }
  case Regime::Critical1: {
    const double log_g_r = -std::sqrt(8.0 * neg_log_r);
    r_n = w.length() * std::exp(log_g_r / (4.0 * std::sqrt(n)));
    break;
  }
  case Regime::SubCritical: {
    const double c = std::pow(2.0, -a / 2.0) * std::sqrt(neg_log_r) *
                     std::pow(n, -a / 2.0);
    bool ok = false;
    const double log_rn = log_power_branch(log2n, 1.0 - a, c, ok);
    if (!ok) {
      too_small(spec, w, r);
    }
    r_n = std::exp(log_rn);
    break;
  }
  }
  if (!(r_n > 0.0 && r_n < w.length()) || !std::isfinite(r_n)) {
    too_small(spec, w, r);
  }
  return r_n;
}

double transform_f_n(const RegimeSpec &spec, const WindowParams &w,
                     double e_star) {
  require_e_star(w, e_star);
  const double a = spec.alpha();
  const double two_n = w.length();
  const double log2n = std::log(two_n);
  const double rel = std::log(e_star / two_n); // <= 0

  double log_f = 0.0;
  switch (spec.regime()) {
  case Regime::SuperCritical:
    log_f = -std::exp(log2n - std::log(a - 1.0) + (1.0 - a) * std::log(e_star));
    break;
  case Regime::Critical2:
    log_f = -log_h(e_star / w.half_length());
    break;
  case Regime::Intermediate: {
    const double e = 2.0 - a;
    const double t = std::expm1(e * rel);
    log_f = -std::exp(e * log2n) * t * t / (2.0 * e * e);
    break;
  }
  case Regime::Critical1:
    log_f = -w.half_length() * rel * rel;
    break;
  case Regime::SubCritical: {
    const double e = 1.0 - a;
    const double t = std::expm1(e * rel);
    log_f = -std::exp((2.0 - a) * log2n) * t * t / (2.0 * e * e);
    break;
  }
  }
  return std::exp(log_f);
}

ScaledStatistic scaled_statistic(const RegimeSpec &spec, const WindowParams &w,
                                 double e_star) {
  require_e_star(w, e_star);
  const double a = spec.alpha();
  const double two_n = w.length();
  const double log2n = std::log(two_n);
  const double rel = std::log(e_star / two_n);
  constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

  ScaledStatistic out;
  switch (spec.regime()) {
  case Regime::SuperCritical:
    out.value = std::exp((log2n - std::log(a - 1.0)) / (1.0 - a)) * e_star;
    out.law = LimitLaw::frechet(a - 1.0);
    break;
  case Regime::Critical2:
    out.value = e_star / two_n;
    out.law = LimitLaw::z_star();
    break;
  case Regime::Intermediate: {
    const double e = 2.0 - a;
    out.value =
        kInvSqrt2 * std::exp((1.0 - a / 2.0) * log2n) * std::expm1(e * rel) / e;
    out.law = LimitLaw::weibull_two();
    break;
  }
  case Regime::Critical1:
  case Regime::SubCritical:
    out.value = kInvSqrt2 * std::exp(-a / 2.0 * log2n) * (e_star - two_n);
    out.law = LimitLaw::weibull_two();
    if (spec.regime() == Regime::Critical1) {
      out.alt_value = std::exp(std::sqrt(w.half_length()) * rel);
      out.alt_law = LimitLaw::z_star_star();
    } else {
      const double e = 1.0 - a;
      out.alt_value = kInvSqrt2 * std::exp((1.0 - a / 2.0) * log2n) *
                      std::expm1(e * rel) / e;
      out.alt_law = LimitLaw::weibull_two();
    }
    break;
  }
  return out;
}

} // namespace softrgg
