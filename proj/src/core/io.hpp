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

#ifndef SOFTRGG_CORE_IO_HPP
#define SOFTRGG_CORE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mc_engine.hpp"

namespace softrgg::io {

/// 17 significant digits ("%.17g"); "null" for non-finite values.
std::string format_double(double v);

/// Appends JSON members in insertion order. Doubles use format_double.
class JsonObject {
public:
  JsonObject &number(std::string_view key, double v);
  JsonObject &number(std::string_view key, const std::optional<double> &v);
  JsonObject &integer(std::string_view key, std::int64_t v);
  JsonObject &unsigned_integer(std::string_view key, std::uint64_t v);
  JsonObject &string(std::string_view key, std::string_view v);
  JsonObject &boolean(std::string_view key, bool v);
  JsonObject &null(std::string_view key);
  JsonObject &object(std::string_view key, const JsonObject &v);

  std::string str() const { return "{" + body_ + "}"; }

private:
  void key(std::string_view k);
  std::string body_;
};

std::string quote(std::string_view s);

JsonObject config_json(const ExperimentConfig &cfg);
JsonObject law_json(const LimitLaw &law);

/// One results.jsonl line, without the trailing newline.
std::string record_json(const ReplicationResult &rec);

std::string verdict_json(const ExperimentConfig &cfg, const VerdictReport &v);

/// Writes `data` to `path`, replacing it. Throws IoError.
void write_file(const std::filesystem::path &path, std::string_view data);

/// One record_json line per result, in order.
void write_jsonl(const std::filesystem::path &path,
                 std::span<const ReplicationResult> results);

std::string sha256_hex(std::string_view data);

/// Hex SHA-256 of a file's bytes. Throws IoError.
std::string sha256_file(const std::filesystem::path &path);

} // namespace softrgg::io

#endif // SOFTRGG_CORE_IO_HPP
