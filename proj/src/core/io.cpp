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

#include "io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

#include <openssl/evp.h>

#include "error.hpp"

namespace softrgg::io {

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    return "null";
  }
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
    case '"':
      out += "\\\"";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\t':
      out += "\\t";
      break;
    default:
      if (static_cast<unsigned char>(c) < 0x20) {
        std::array<char, 8> esc{};
        std::snprintf(esc.data(), esc.size(), "\\u%04x", c);
        out += esc.data();
      } else {
        out += c;
      }
    }
  }
  out += '"';
  return out;
}

void JsonObject::key(std::string_view k) {
  if (!body_.empty()) {
    body_ += ',';
  }
  body_ += quote(k);
  body_ += ':';
}

JsonObject &JsonObject::number(std::string_view k, double v) {
  key(k);
  body_ += format_double(v);
  return *this;
}

JsonObject &JsonObject::number(std::string_view k,
                               const std::optional<double> &v) {
  return v ? number(k, *v) : null(k);
}

JsonObject &JsonObject::integer(std::string_view k, std::int64_t v) {
  key(k);
  body_ += std::to_string(v);
  return *this;
}

JsonObject &JsonObject::unsigned_integer(std::string_view k, std::uint64_t v) {
  key(k);
  body_ += std::to_string(v);
  return *this;
}

JsonObject &JsonObject::string(std::string_view k, std::string_view v) {
  key(k);
  body_ += quote(v);
  return *this;
}

JsonObject &JsonObject::boolean(std::string_view k, bool v) {
  key(k);
  body_ += v ? "true" : "false";
  return *this;
}

JsonObject &JsonObject::null(std::string_view k) {
  key(k);
  body_ += "null";
  return *this;
}

JsonObject &JsonObject::object(std::string_view k, const JsonObject &v) {
  key(k);
  body_ += v.str();
  return *this;
}

JsonObject config_json(const ExperimentConfig &cfg) {
  JsonObject o;
  o.number("alpha", cfg.alpha)
      .integer("n", cfg.n)
      .number("r", cfg.r)
      .unsigned_integer("replications", cfg.replications)
      .unsigned_integer("master_seed", cfg.master_seed)
      .string("connection_form", to_string(cfg.connection_form));
  if (cfg.connection_form == ConnectionForm::HardThreshold) {
    o.number("radius", cfg.radius);
  }
  o.unsigned_integer("workers", cfg.workers);
  return o;
}

JsonObject law_json(const LimitLaw &law) {
  JsonObject o;
  o.string("kind", to_string(law.kind));
  if (law.kind == LawKind::Frechet) {
    o.number("beta", law.beta);
  }
  return o;
}

std::string record_json(const ReplicationResult &rec) {
  JsonObject o;
  o.unsigned_integer("stream_id", rec.stream_id)
      .unsigned_integer("point_count", rec.point_count)
      .number("e_star", rec.e_star)
      .unsigned_integer("w_count", rec.w_count)
      .number("f_n_value", rec.f_n_value)
      .number("scaled_value", rec.scaled_value)
      .number("scaled_alt_value", rec.scaled_alt_value);
  return o.str();
}

std::string verdict_json(const ExperimentConfig &cfg, const VerdictReport &v) {
  const auto &p = v.empirical_prob_below_threshold;
  JsonObject prob;
  prob.number("estimate", p.estimate)
      .number("wilson_lo", p.lo)
      .number("wilson_hi", p.hi)
      .number("half_width", 0.5 * (p.hi - p.lo));

  JsonObject o;
  o.number("alpha", v.alpha)
      .integer("n", v.n)
      .number("r", v.r)
      .string("regime", to_string(RegimeSpec(v.alpha).regime()))
      .string("connection_form", to_string(cfg.connection_form))
      .number("r_n", v.r_n)
      .unsigned_integer("replications", v.replications)
      .unsigned_integer("absent_e_star", v.absent_e_star)
      .object("empirical_prob_below_threshold", prob)
      .number("target_sqrt_r", v.target_sqrt_r)
      .number("ks_to_uniform", v.ks_to_uniform)
      .object("limit_law", law_json(v.limit_law))
      .number("ks_to_limit_law", v.ks_to_limit_law);
  if (v.limit_law_alt) {
    o.object("limit_law_alt", law_json(*v.limit_law_alt));
  } else {
    o.null("limit_law_alt");
  }
  o.number("ks_to_limit_law_alt", v.ks_to_limit_law_alt)
      .number("tv_to_poisson", v.tv_to_poisson)
      .number("analytic_mean", v.analytic_mean)
      .number("analytic_tv_bound", v.analytic_tv_bound)
      .number("mean_w", v.mean_w);
  return o.str();
}

void write_file(const std::filesystem::path &path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

void write_jsonl(const std::filesystem::path &path,
                 std::span<const ReplicationResult> results) {
  std::string data;
  data.reserve(results.size() * 160);
  for (const auto &rec : results) {
    data += record_json(rec);
    data += '\n';
  }
  write_file(path, data);
}

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX *ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};

class Sha256 {
public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw IoError("sha256: digest initialisation failed");
    }
  }

  void update(const char *data, std::size_t size) {
    if (EVP_DigestUpdate(ctx_.get(), data, size) != 1) {
      throw IoError("sha256: digest update failed");
    }
  }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), md.data(), &len) != 1) {
      throw IoError("sha256: digest finalisation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
      out += kHex[md[i] >> 4];
      out += kHex[md[i] & 0xf];
    }
    return out;
  }

private:
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx_;
};

} // namespace

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got > 0) {
      h.update(buf.data(), got);
    }
  }
  if (in.bad()) {
    throw IoError("read failed: " + path.string());
  }
  return h.hex();
}

} // namespace softrgg::io
