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

#include "analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "powers.hpp"
#include "quadrature.hpp"
#include "regimes.hpp"

namespace softrgg {

namespace {

void require_power_region(const WindowParams &w, double r_n) {
  if (!(r_n >= 1.0) || !(r_n < w.length())) {
    throw DomainError("r_n must lie in [1, 2n), got " + std::to_string(r_n));
  }
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be a positive finite number");
  }
}

// Integral of s^-alpha over [r_n, hi]; zero when hi <= r_n.
double inner_tail(double alpha, double hi, double r_n) {
  return hi > r_n ? powers::divided_difference(hi, r_n, 1.0 - alpha) : 0.0;
}

} // namespace

double mean_exceedances_closed_form(double alpha, const WindowParams &w,
                                    double r_n) {
  require_alpha(alpha);
  require_power_region(w, r_n);
  const double two_n = w.length();
  if (alpha == 2.0) {
    return (two_n - r_n) / r_n - std::log(two_n / r_n);
  }
  if (alpha == 1.0) {
    return -two_n * std::log(r_n / two_n) + r_n - two_n;
  }
  // (1/2) I(n) = 2n (2n^(1-a) - r_n^(1-a))/(1-a) - (2n^(2-a) - r_n^(2-a))/(2-a)
  return two_n * powers::divided_difference(two_n, r_n, 1.0 - alpha) -
         powers::divided_difference(two_n, r_n, 2.0 - alpha);
}

double mean_exceedances_quadrature(const ConnectionFunction &g,
                                   const WindowParams &w, double r_n) {
  const double two_n = w.length();
  if (!(r_n > 0.0) || !(r_n < two_n)) {
    throw DomainError("r_n must lie in (0, 2n), got " + std::to_string(r_n));
  }
  if (g.form() == ConnectionForm::AlwaysZero) {
    return 0.0;
  }
  const auto integrand = [&g, two_n](double s) { return (two_n - s) * g(s); };
  return quadrature::integrate(integrand, r_n, two_n, 1e-10,
                               {1.0, g.radius()});
}

double max_tail_integral(double alpha, const WindowParams &w, double r_n) {
  require_alpha(alpha);
  require_power_region(w, r_n);
  const double n = w.half_length();
  const auto at = [&](double x) {
    return inner_tail(alpha, n + x, r_n) + inner_tail(alpha, n - x, r_n);
  };

  constexpr int kGrid = 1000;
  double best_x = n;
  double best = at(n);
  for (int k = 0; k < kGrid; ++k) {
    const double x = n * k / kGrid;
    const double v = at(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }

  // Golden-section refinement in the grid cell pair around the best node.
  const double step = n / kGrid;
  double lo = std::max(0.0, best_x - step);
  double hi = std::min(n, best_x + step);
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = at(c);
  double fd = at(d);
  while (hi - lo > 1e-10 * std::max(1.0, n)) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = at(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = at(d);
    }
  }
  return std::max({best, fc, fd});
}

MeanExceedanceReport mean_exceedance_report(const ConnectionFunction &g,
                                            const WindowParams &w, double r_n,
                                            double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("r must lie in (0, 1)");
  }
  MeanExceedanceReport out;
  out.quadrature = mean_exceedances_quadrature(g, w, r_n);
  out.limit_value = -0.5 * std::log(r);
  const bool power_region = r_n >= 1.0 && g.has_power_tail();
  if (power_region) {
    out.closed_form = mean_exceedances_closed_form(g.alpha(), w, r_n);
  }
  out.closed_form_exact =
      power_region && g.form() == ConnectionForm::CappedPower;
  const double authoritative =
      out.closed_form_exact ? out.closed_form : out.quadrature;
  out.abs_gap_to_limit = std::fabs(authoritative - out.limit_value);
  return out;
}

double tv_rate_exponent(double alpha) {
  require_alpha(alpha);
  return alpha > 1.0 ? 1.0 - alpha : -alpha / 2.0;
}

TvBoundReport tv_bound_report(double alpha, const WindowParams &w, double r,
                              std::optional<WindowParams> reference) {
  const RegimeSpec spec(alpha);
  const auto bound_at = [&](const WindowParams &win) {
    TvBoundReport rep;
    rep.n = win.n();
    rep.r_n = threshold_r_n(spec, win, r);
    rep.mean = mean_exceedances_closed_form(alpha, win, rep.r_n);
    rep.max_tail_integral = max_tail_integral(alpha, win, rep.r_n);
    rep.i_n = 2.0 * rep.mean;
    rep.frak_bound = 2.0 * rep.max_tail_integral * rep.i_n;
    rep.tv_bound = std::min(1.0, 1.0 / rep.mean) * rep.frak_bound;
    rep.rate_exponent = tv_rate_exponent(alpha);
    return rep;
  };

  TvBoundReport out = bound_at(w);
  const TvBoundReport anchor =
      reference && !(*reference == w) ? bound_at(*reference) : out;
  out.rate_constant = anchor.tv_bound /
                      std::pow(static_cast<double>(anchor.n), out.rate_exponent);
  out.rate_cap = out.rate_constant *
                 std::pow(static_cast<double>(out.n), out.rate_exponent);
  return out;
}

std::vector<TvBoundReport> tv_bound_sweep(double alpha, double r,
                                          std::span<const std::int64_t> ns) {
  std::vector<TvBoundReport> out;
  if (ns.empty()) {
    return out;
  }
  const WindowParams reference(*std::min_element(ns.begin(), ns.end()));
  out.reserve(ns.size());
  for (const std::int64_t n : ns) {
    out.push_back(tv_bound_report(alpha, WindowParams(n), r, reference));
  }
  return out;
}

} // namespace softrgg
