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

#include "connection.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"
#include "powers.hpp"
#include "quadrature.hpp"

namespace softrgg {

std::string_view to_string(ConnectionForm form) noexcept {
  switch (form) {
  case ConnectionForm::CappedPower:
    return "capped-power";
  case ConnectionForm::ExpForm:
    return "exp-form";
  case ConnectionForm::HardThreshold:
    return "hard-threshold";
  case ConnectionForm::AlwaysOne:
    return "always-one";
  case ConnectionForm::AlwaysZero:
    return "always-zero";
  }
  return "unknown";
}

std::optional<ConnectionForm> parse_connection_form(std::string_view name) {
  for (const ConnectionForm f :
       {ConnectionForm::CappedPower, ConnectionForm::ExpForm,
        ConnectionForm::HardThreshold, ConnectionForm::AlwaysOne,
        ConnectionForm::AlwaysZero}) {
    if (to_string(f) == name) {
      return f;
    }
  }
  return std::nullopt;
}

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be a positive finite number");
  }
}

} // namespace

ConnectionFunction ConnectionFunction::capped_power(double alpha) {
  require_alpha(alpha);
  return {ConnectionForm::CappedPower, alpha, 0.0};
}

ConnectionFunction ConnectionFunction::exp_form(double alpha) {
  require_alpha(alpha);
  return {ConnectionForm::ExpForm, alpha, 0.0};
}

ConnectionFunction ConnectionFunction::hard_threshold(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("hard threshold radius must be positive and finite");
  }
  return {ConnectionForm::HardThreshold, 0.0, radius};
}

ConnectionFunction ConnectionFunction::always_one() noexcept {
  return {ConnectionForm::AlwaysOne, 0.0, 0.0};
}

ConnectionFunction ConnectionFunction::always_zero() noexcept {
  return {ConnectionForm::AlwaysZero, 0.0, 0.0};
}

double tail_integral(const ConnectionFunction &g, double a, double b) {
  if (!(a >= 1.0) || !(a <= b) || !std::isfinite(b)) {
    throw DomainError("tail_integral requires 1 <= a <= b, got [" +
                      std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  switch (g.form()) {
  case ConnectionForm::CappedPower:
    return powers::divided_difference(b, a, 1.0 - g.alpha());
  case ConnectionForm::ExpForm:
    return quadrature::integrate([&g](double s) { return g(s); }, a, b,
                                 1e-12);
  case ConnectionForm::HardThreshold:
    return std::max(0.0, std::min(b, g.radius()) - a);
  case ConnectionForm::AlwaysOne:
    return b - a;
  case ConnectionForm::AlwaysZero:
    return 0.0;
  }
  return 0.0;
}

} // namespace softrgg
