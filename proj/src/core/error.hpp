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

#ifndef SOFTRGG_CORE_ERROR_HPP
#define SOFTRGG_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace softrgg {

/// An argument lies outside the domain of the operation.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string &what) : std::domain_error(what) {}
};

/// The threshold r_n cannot be formed for (alpha, n, r): n is too small.
class InfeasibleError : public std::runtime_error {
public:
  explicit InfeasibleError(const std::string &what)
      : std::runtime_error(what) {}
};

/// An input exceeds a guard on problem size (quadratic algorithms).
class SizeError : public std::length_error {
public:
  explicit SizeError(const std::string &what) : std::length_error(what) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace softrgg

#endif // SOFTRGG_CORE_ERROR_HPP
