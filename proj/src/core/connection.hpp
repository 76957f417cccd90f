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

#ifndef SOFTRGG_CORE_CONNECTION_HPP
#define SOFTRGG_CORE_CONNECTION_HPP

#include <cmath>
#include <optional>
#include <string_view>

namespace softrgg {

enum class ConnectionForm {
  CappedPower,   // min(1, |x|^-alpha)
  ExpForm,       // 1 - exp(-|x|^-alpha)
  HardThreshold, // 1{|x| <= radius}, Gilbert graph fixture
  AlwaysOne,
  AlwaysZero,
};

std::string_view to_string(ConnectionForm form) noexcept;

/// Inverse of to_string; empty for an unknown name.
std::optional<ConnectionForm> parse_connection_form(std::string_view name);

/**
 * Symmetric connection function g. Every form is non-increasing in |x|,
 * which the graph sampler relies on for block rejection. g(0) = 1 for the
 * power-law forms.
 */
class ConnectionFunction {
public:
  static ConnectionFunction capped_power(double alpha);
  static ConnectionFunction exp_form(double alpha);
  static ConnectionFunction hard_threshold(double radius);
  static ConnectionFunction always_one() noexcept;
  static ConnectionFunction always_zero() noexcept;

  ConnectionForm form() const noexcept { return form_; }
  /// Decay exponent; 0 for the forms without a tail.
  double alpha() const noexcept { return alpha_; }
  double radius() const noexcept { return radius_; }
  bool has_power_tail() const noexcept {
    return form_ == ConnectionForm::CappedPower ||
           form_ == ConnectionForm::ExpForm;
  }

  double operator()(double d) const noexcept {
    const double x = std::fabs(d);
    switch (form_) {
    case ConnectionForm::CappedPower:
      return x <= 1.0 ? 1.0 : std::pow(x, -alpha_);
    case ConnectionForm::ExpForm:
      return x == 0.0 ? 1.0 : -std::expm1(-std::pow(x, -alpha_));
    case ConnectionForm::HardThreshold:
      return x <= radius_ ? 1.0 : 0.0;
    case ConnectionForm::AlwaysOne:
      return 1.0;
    case ConnectionForm::AlwaysZero:
      return 0.0;
    }
    return 0.0;
  }

private:
  ConnectionFunction(ConnectionForm form, double alpha, double radius) noexcept
      : form_(form), alpha_(alpha), radius_(radius) {}

  ConnectionForm form_;
  double alpha_;
  double radius_;
};

inline double evaluate(const ConnectionFunction &g, double d) noexcept {
  return g(d);
}

/**
 * Integral of g over [a, b] with 1 <= a <= b. Exact antiderivative for
 * CappedPower (the cap never binds there); adaptive quadrature to absolute
 * tolerance 1e-12 for ExpForm.
 */
double tail_integral(const ConnectionFunction &g, double a, double b);

} // namespace softrgg

#endif // SOFTRGG_CORE_CONNECTION_HPP
