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

// softrgg command-line front end. Talks to the library only through the C
// interface in softrgg/softrgg.h.

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "softrgg/softrgg.h"

namespace fs = std::filesystem;

namespace {

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kInfeasible = 3,
  kVerifyFailed = 4,
};

// Library failure carrying the status that selects the exit code.
struct Failure {
  srgg_status status;
  std::string message;
};

void check(srgg_status status, const char *what) {
  if (status != SRGG_OK) {
    throw Failure{status, std::string(what) + ": " + srgg_last_error()};
  }
}

int exit_code(srgg_status status) {
  switch (status) {
  case SRGG_ERR_INFEASIBLE:
    return kInfeasible;
  case SRGG_ERR_DOMAIN:
    return kUsage;
  default:
    return kInternal;
  }
}

struct ExperimentDeleter {
  void operator()(srgg_experiment *e) const noexcept {
    srgg_experiment_free(e);
  }
};
using Experiment = std::unique_ptr<srgg_experiment, ExperimentDeleter>;

struct ReportDeleter {
  void operator()(srgg_report *r) const noexcept { srgg_report_free(r); }
};

std::string num(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// SOFTRGG_WORKERS, when set to a positive integer, wins over --workers.
unsigned resolve_workers(unsigned flag) {
  if (const char *env = std::getenv("SOFTRGG_WORKERS")) {
    char *end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<unsigned>(v);
    }
    std::cerr << "warning: ignoring invalid SOFTRGG_WORKERS=" << env << "\n";
  }
  return flag;
}

std::string config_json(const srgg_config &cfg) {
  size_t needed = 0;
  check(srgg_config_json(&cfg, nullptr, 0, &needed), "config");
  std::string buf(needed, '\0');
  check(srgg_config_json(&cfg, buf.data(), buf.size(), &needed), "config");
  buf.resize(needed - 1);
  return buf;
}

std::string quoted(const std::string &s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out + "\"";
}

struct Output {
  std::string name;
  fs::path path;
};

void write_manifest(const fs::path &dir, const std::string &command,
                    const std::string &config, const std::string &started,
                    const std::vector<Output> &outputs) {
  std::string files;
  for (const auto &o : outputs) {
    std::array<char, 65> hex{};
    check(srgg_file_sha256(o.path.string().c_str(), hex.data()), "digest");
    if (!files.empty()) {
      files += ",";
    }
    files += quoted(o.name) + ":{\"sha256\":" + quoted(hex.data()) +
             ",\"bytes\":" + std::to_string(fs::file_size(o.path)) + "}";
  }
  const std::string manifest =
      "{\"tool_version\":" + quoted(srgg_version()) +
      ",\"command\":" + quoted(command) + ",\"config\":" + config +
      ",\"started\":" + quoted(started) + ",\"finished\":" +
      quoted(utc_now()) + ",\"outputs\":{" + files + "}}\n";
  std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  out << manifest;
  if (!out) {
    throw Failure{SRGG_ERR_IO, "cannot write " + (dir / "manifest.json").string()};
  }
}

Experiment run(const srgg_config &cfg) {
  srgg_experiment *raw = nullptr;
  check(srgg_experiment_run(&cfg, &raw), "simulate");
  return Experiment(raw);
}

struct SimulateArgs {
  double alpha = 0.0;
  std::int64_t n = 0;
  double r = 0.0;
  std::uint64_t reps = 1000;
  std::uint64_t seed = 0;
  std::string form = "capped-power";
  unsigned workers = default_workers();
  std::string out = ".";
};

srgg_config make_config(const SimulateArgs &a) {
  srgg_config cfg;
  srgg_config_default(&cfg);
  cfg.alpha = a.alpha;
  cfg.n = a.n;
  cfg.r = a.r;
  cfg.replications = a.reps;
  cfg.master_seed = a.seed;
  check(srgg_form_from_name(a.form.c_str(), &cfg.form), "--form");
  cfg.workers = resolve_workers(a.workers);
  return cfg;
}

int cmd_simulate(const SimulateArgs &a) {
  const std::string started = utc_now();
  const srgg_config cfg = make_config(a);
  const fs::path dir(a.out);
  fs::create_directories(dir);
  const Experiment exp = run(cfg);
  const fs::path results = dir / "results.jsonl";
  const fs::path verdict = dir / "verdict.json";
  check(srgg_experiment_write_jsonl(exp.get(), results.string().c_str()),
        "results.jsonl");
  check(srgg_experiment_write_verdict(exp.get(), verdict.string().c_str()),
        "verdict.json");
  write_manifest(dir, "simulate", config_json(cfg), started,
                 {{"results.jsonl", results}, {"verdict.json", verdict}});

  srgg_verdict v{};
  check(srgg_experiment_verdict(exp.get(), &v), "verdict");
  std::printf("r_n=%.10g  P(e* <= r_n)=%.4f [%.4f, %.4f]  sqrt(r)=%.4f  "
              "mean_w=%.4f  analytic_mean=%.4f\n",
              v.r_n, v.prob_below, v.wilson_lo, v.wilson_hi, v.target_sqrt_r,
              v.mean_w, v.analytic_mean);
  return kOk;
}

struct ThresholdArgs {
  std::vector<double> alpha;
  std::vector<std::int64_t> n;
  std::vector<double> r;
};

int cmd_thresholds(const ThresholdArgs &a) {
  std::printf("alpha,n,r,regime,r_n,f_n(r_n),sqrt_r\n");
  int code = kOk;
  for (const double alpha : a.alpha) {
    for (const std::int64_t n : a.n) {
      for (const double r : a.r) {
        int regime = 0;
        double r_n = 0.0;
        double f = 0.0;
        srgg_status st = srgg_regime_of(alpha, &regime);
        if (st == SRGG_OK) {
          st = srgg_threshold_r_n(alpha, n, r, &r_n);
        }
        if (st == SRGG_OK) {
          st = srgg_transform_f_n(alpha, n, r_n, &f);
        }
        if (st != SRGG_OK) {
          std::cerr << "error: alpha=" << num(alpha) << " n=" << n
                    << " r=" << num(r) << ": " << srgg_last_error() << "\n";
          code = std::max(code, exit_code(st));
          continue;
        }
        std::printf("%s,%lld,%s,%s,%s,%s,%s\n", num(alpha).c_str(),
                    static_cast<long long>(n), num(r).c_str(),
                    srgg_regime_name(regime), num(r_n).c_str(),
                    num(f).c_str(), num(std::sqrt(r)).c_str());
      }
    }
  }
  return code;
}

struct VerifyArgs {
  std::string suite = "all";
  bool fast = false;
  unsigned workers = default_workers();
  std::uint64_t seed = 20261014;
};

int cmd_verify(const VerifyArgs &a) {
  std::array<int, 16> ids{};
  size_t count = 0;
  check(srgg_suite_criteria(a.suite.c_str(), ids.data(), ids.size(), &count),
        "--suite");
  srgg_report *raw = nullptr;
  const auto print = [](int, int, const char *text, void *) {
    std::fputs(text, stdout);
    std::fflush(stdout);
  };
  check(srgg_verify(ids.data(), count, a.fast ? 1 : 0,
                    resolve_workers(a.workers), a.seed, print, nullptr, &raw),
        "verify");
  const std::unique_ptr<srgg_report, ReportDeleter> report(raw);
  size_t passed = 0;
  for (size_t i = 0; i < srgg_report_size(report.get()); ++i) {
    int pass = 0;
    check(srgg_report_entry(report.get(), i, nullptr, &pass, nullptr),
          "report");
    passed += pass != 0 ? 1 : 0;
  }
  std::printf("%zu/%zu criteria passed\n", passed,
              srgg_report_size(report.get()));
  return srgg_report_all_passed(report.get()) ? kOk : kVerifyFailed;
}

struct SweepArgs {
  double alpha = 0.0;
  double r = 0.0;
  std::vector<std::int64_t> n_list;
  std::uint64_t reps = 1000;
  std::uint64_t seed = 0;
  std::string form = "capped-power";
  unsigned workers = default_workers();
  std::string out = ".";
};

std::string opt_num(int has, double v) { return has ? num(v) : ""; }

int cmd_sweep(const SweepArgs &a) {
  const std::string started = utc_now();
  const fs::path dir(a.out);
  fs::create_directories(dir);
  SimulateArgs base;
  base.alpha = a.alpha;
  base.r = a.r;
  base.reps = a.reps;
  base.seed = a.seed;
  base.form = a.form;
  base.workers = a.workers;

  int regime = 0;
  check(srgg_regime_of(a.alpha, &regime), "--alpha");
  std::string csv =
      "alpha,n,r,regime,r_n,mean_w,tv_bound,ks_uniform,prob_below,wilson_lo,"
      "wilson_hi\n";
  std::vector<Output> outputs;
  srgg_config first{};
  for (const std::int64_t n : a.n_list) {
    base.n = n;
    const srgg_config cfg = make_config(base);
    if (outputs.empty()) {
      first = cfg;
    }
    const Experiment exp = run(cfg);
    const std::string name = "verdict_n" + std::to_string(n) + ".json";
    const fs::path path = dir / name;
    check(srgg_experiment_write_verdict(exp.get(), path.string().c_str()),
          name.c_str());
    outputs.push_back({name, path});
    srgg_verdict v{};
    check(srgg_experiment_verdict(exp.get(), &v), "verdict");
    csv += num(a.alpha) + "," + std::to_string(n) + "," + num(a.r) + "," +
           srgg_regime_name(regime) + "," + num(v.r_n) + "," + num(v.mean_w) +
           "," + opt_num(v.has_tv_bound, v.tv_bound) + "," +
           opt_num(v.has_ks_uniform, v.ks_uniform) + "," + num(v.prob_below) +
           "," + num(v.wilson_lo) + "," + num(v.wilson_hi) + "\n";
    std::printf("n=%lld r_n=%.6g mean_w=%.4f P=%.4f\n",
                static_cast<long long>(n), v.r_n, v.mean_w, v.prob_below);
  }
  const fs::path rates = dir / "rates.csv";
  {
    std::ofstream out(rates, std::ios::binary | std::ios::trunc);
    out << csv;
    if (!out) {
      throw Failure{SRGG_ERR_IO, "cannot write " + rates.string()};
    }
  }
  outputs.push_back({"rates.csv", rates});
  write_manifest(dir, "sweep", config_json(first), started, outputs);
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Longest edge of the 1D soft random geometric graph: "
               "simulation, thresholds and acceptance checks"};
  app.set_version_flag("--version", std::string(srgg_version()));
  app.require_subcommand(1);

  SimulateArgs sim;
  auto *simulate =
      app.add_subcommand("simulate", "Run replications and write results");
  simulate->add_option("--alpha", sim.alpha, "Decay exponent")->required();
  simulate->add_option("--n", sim.n, "Window half-length")->required();
  simulate->add_option("--r", sim.r, "Target level in (0, 1)")->required();
  simulate->add_option("--reps", sim.reps, "Replications")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--form", sim.form, "Connection function")
      ->check(CLI::IsMember({"capped-power", "exp-form"}));
  simulate->add_option("--workers", sim.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim.out, "Output directory");

  ThresholdArgs thr;
  auto *thresholds =
      app.add_subcommand("thresholds", "Print r_n and f_n(r_n) as CSV");
  thresholds->add_option("--alpha", thr.alpha, "Decay exponent (repeatable)")
      ->required();
  thresholds->add_option("--n", thr.n, "Window half-length (repeatable)")
      ->required();
  thresholds->add_option("--r", thr.r, "Target level (repeatable)")->required();

  VerifyArgs ver;
  auto *verify = app.add_subcommand("verify", "Run acceptance criteria");
  verify->add_option("--suite", ver.suite, "Criteria group")
      ->check(CLI::IsMember({"corollary", "ks", "poisson", "analytics", "all"}));
  verify->add_flag("--fast", ver.fast, "Scale n and M down 4x");
  verify->add_option("--workers", ver.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", ver.seed, "Master seed");

  SweepArgs swp;
  auto *sweep = app.add_subcommand("sweep", "Run one experiment per n");
  sweep->add_option("--alpha", swp.alpha, "Decay exponent")->required();
  sweep->add_option("--r", swp.r, "Target level in (0, 1)")->required();
  sweep->add_option("--n-list", swp.n_list, "Comma-separated window sizes")
      ->required()
      ->delimiter(',');
  sweep->add_option("--reps", swp.reps, "Replications per n")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", swp.seed, "Master seed");
  sweep->add_option("--form", swp.form, "Connection function")
      ->check(CLI::IsMember({"capped-power", "exp-form"}));
  sweep->add_option("--workers", swp.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", swp.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*simulate) {
      return cmd_simulate(sim);
    }
    if (*thresholds) {
      return cmd_thresholds(thr);
    }
    if (*verify) {
      return cmd_verify(ver);
    }
    if (*sweep) {
      return cmd_sweep(swp);
    }
  } catch (const Failure &f) {
    std::cerr << "error: " << f.message << "\n";
    return exit_code(f.status);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
