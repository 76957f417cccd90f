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

#ifndef SOFTRGG_CORE_VERIFICATION_HPP
#define SOFTRGG_CORE_VERIFICATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mc_engine.hpp"

namespace softrgg::verification {

/// One measured quantity against its pinned tolerance.
struct Check {
  std::string label;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string relation = "<="; // how measured compares to tolerance
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<Check> checks;
  double seconds = 0.0;
};

enum class Suite { Analytics, Corollary, Ks, Poisson, All };

std::optional<Suite> parse_suite(std::string_view name);
std::vector<int> suite_criteria(Suite suite);

inline constexpr int kCriterionCount = 10;
inline constexpr std::uint64_t kDefaultSeed = 20261014;

struct VerifyOptions {
  bool fast = false; // n and M scaled down 4x for the simulation criteria
  unsigned workers = 1;
  std::uint64_t master_seed = kDefaultSeed;
};

/**
 * Runs acceptance criteria 1..10. Simulated replications are cached per
 * (alpha, n) and reused as prefixes, so criteria sharing a configuration
 * share the same realizations.
 */
class Verifier {
public:
  explicit Verifier(VerifyOptions options) : options_(options) {}

  /// Throws DomainError for an id outside 1..kCriterionCount.
  CriterionResult run(int id);

private:
  std::span<const ReplicationResult> replications(double alpha,
                                                  std::int64_t n,
                                                  std::uint64_t m);
  ExperimentConfig config(double alpha, std::int64_t n, std::uint64_t m) const;

  CriterionResult threshold_identity();
  CriterionResult h_round_trip();
  CriterionResult analytics_grid();
  CriterionResult mean_limit();
  CriterionResult corollary();
  CriterionResult uniform_ks();
  CriterionResult scaled_laws();
  CriterionResult poisson_approximation();
  CriterionResult algorithm_coupling();
  CriterionResult determinism();

  VerifyOptions options_;
  std::map<std::tuple<double, std::int64_t>, std::vector<ReplicationResult>>
      cache_;
};

/// "[PASS] 3 name (1.2 s)" followed by one indented line per check.
std::string format_result(const CriterionResult &result);

} // namespace softrgg::verification

#endif // SOFTRGG_CORE_VERIFICATION_HPP
