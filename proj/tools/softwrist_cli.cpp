// Copyright 2026 The softwrist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// softwrist command-line front end. Talks to the library through the C API
// only.
//
// Exit codes: 0 success, 1 usage/config/I-O error, 2 the run completed but
// failed its check (unsettled, diverged, oracle mismatch, acceptance row).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "softwrist/softwrist.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;

constexpr const char* kOutEnv = "SOFTWRIST_OUT";
constexpr const char* kDefaultOut = "softwrist_out";

using ConfigPtr = std::unique_ptr<sw_config, decltype(&sw_config_destroy)>;
using RunPtr = std::unique_ptr<sw_run, decltype(&sw_run_destroy)>;

// Failure from a C API call; carries the CLI exit code.
struct CliError {
  int exit_code;
  std::string message;
};

void check(sw_status status, const std::string& what) {
  if (status >= SW_OK) return;
  throw CliError{kExitError, what.empty() ? std::string(sw_last_error())
                                          : what + ": " + sw_last_error()};
}

template <typename Getter>
std::string get_string(Getter&& getter) {
  size_t needed = 0;
  check(getter(nullptr, 0, &needed), "string query");
  std::string s(needed + 1, '\0');
  check(getter(s.data(), s.size(), &needed), "string query");
  s.resize(needed);
  return s;
}

std::string angle(double rad) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f deg (%.6g rad)", rad * 180.0 / std::numbers::pi, rad);
  return buf;
}

ConfigPtr load(const std::string& path) {
  sw_config* c = nullptr;
  if (path.empty()) {
    check(sw_config_create_default(&c), "config");
  } else {
    check(sw_config_load(path.c_str(), &c), "");  // message names the file
  }
  ConfigPtr config(c, &sw_config_destroy);
  for (size_t i = 0; i < sw_config_warning_count(config.get()); ++i) {
    const std::string w = get_string([&](char* b, size_t cap, size_t* n) {
      return sw_config_warning(config.get(), i, b, cap, n);
    });
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  return config;
}

// --out, then the config's output_dir, then $SOFTWRIST_OUT, then ./softwrist_out.
fs::path output_dir(const std::string& flag, const sw_config* config) {
  if (!flag.empty()) return flag;
  if (config) {
    const std::string from_config = get_string([&](char* b, size_t cap, size_t* n) {
      return sw_config_output_dir(config, b, cap, n);
    });
    if (!from_config.empty()) return from_config;
  }
  if (const char* env = std::getenv(kOutEnv); env && *env) return env;
  return kDefaultOut;
}

fs::path make_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw CliError{kExitError, "cannot create output directory '" + dir.string() + "'" +
                                   (ec ? ": " + ec.message() : std::string())};
  }
  return dir;
}

int cmd_simulate(const std::string& config_path, const std::string& scenario,
                 const std::string& out_flag) {
  const ConfigPtr config = load(config_path);
  const fs::path dir = make_output_dir(output_dir(out_flag, config.get()));

  sw_run* r = nullptr;
  check(sw_simulate(config.get(), scenario.empty() ? nullptr : scenario.c_str(), &r),
        "simulate");
  const RunPtr run(r, &sw_run_destroy);
  check(sw_run_write_trajectory(run.get(), (dir / "trajectory.csv").c_str()), "write");
  check(sw_run_write_metrics(run.get(), (dir / "metrics.csv").c_str()), "write");

  sw_metrics m{};
  check(sw_run_metrics(run.get(), 0.0, &m), "metrics");
  double target = 0.0;
  check(sw_run_target(run.get(), &target), "metrics");

  std::printf("target             %s\n", angle(target).c_str());
  std::printf("rmse               %s\n", angle(m.rmse).c_str());
  if (m.settled) {
    std::printf("settling time      %.4f s\n", m.settling_time);
  } else {
    std::printf("settling time      not settled\n");
  }
  std::printf("steady-state error %s\n", angle(m.steady_state_error).c_str());
  std::printf("peak error         %s\n", angle(m.peak_error).c_str());
  if (m.has_disturbance) {
    if (m.recovered) {
      std::printf("recovered at       t = %.4f s\n", m.recovery_time);
    } else {
      std::printf("recovered at       not recovered\n");
    }
  }
  std::printf("solver fallbacks   %d\n", sw_run_solver_fallbacks(run.get()));
  std::printf("wrote              %s\n", dir.c_str());

  if (sw_run_diverged(run.get())) {
    const std::string why = get_string([&](char* b, size_t cap, size_t* n) {
      return sw_run_diagnostic(run.get(), b, cap, n);
    });
    std::fprintf(stderr, "error: run diverged: %s\n", why.c_str());
    return kExitCheckFailed;
  }
  if (!m.settled) {
    std::fprintf(stderr, "error: run did not settle within the 2%% band of %s\n",
                 angle(target).c_str());
    return kExitCheckFailed;
  }
  if (m.has_disturbance && !m.recovered) {
    std::fprintf(stderr, "error: run did not recover from the disturbance\n");
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_factors(double alpha_min, double alpha_max, int samples, const std::string& out_flag) {
  if (alpha_min > alpha_max) {
    throw CliError{kExitError, "reversed range: min " + angle(alpha_min) + " > max " +
                                   angle(alpha_max)};
  }
  const fs::path dir = make_output_dir(output_dir(out_flag, nullptr));
  const fs::path file = dir / "factors.csv";
  double worst = 0.0;
  check(sw_write_factors(alpha_min, alpha_max, samples, file.c_str(), &worst), "factors");
  std::printf("range %s .. %s, %d samples\n", angle(alpha_min).c_str(),
              angle(alpha_max).c_str(), samples);
  std::printf("max |k1_fit - k1_exact| = %.3e\n", worst);
  std::printf("wrote %s\n", file.c_str());
  return kExitOk;
}

int cmd_qp_selftest(const std::string& config_path, std::optional<std::uint64_t> seed,
                    int count, const std::string& out_flag) {
  const ConfigPtr config = load(config_path);
  std::uint64_t s = 0;
  if (seed) {
    s = *seed;
  } else {
    check(sw_config_seed(config.get(), &s), "config");
  }
  if (count < 1) throw CliError{kExitError, "problem count must be >= 1"};
  const fs::path dir = make_output_dir(output_dir(out_flag, config.get()));
  const fs::path file = dir / "qp_selftest.csv";
  sw_selftest_summary summary{};
  check(sw_qp_selftest(s, count, file.c_str(), &summary), "qp-selftest");
  std::printf("seed %llu: %d problems, %d mismatches, worst relative error %.3e\n",
              static_cast<unsigned long long>(s), summary.count, summary.failures,
              summary.worst_rel_error);
  std::printf("wrote %s\n", file.c_str());
  if (summary.failures > 0) {
    std::fprintf(stderr,
                 "error: %d problem(s) disagree with the oracle; first at index %d "
                 "(problem seed %llu, run seed %llu); see %s\n",
                 summary.failures, summary.first_failure_index,
                 static_cast<unsigned long long>(summary.first_failure_seed),
                 static_cast<unsigned long long>(s), file.c_str());
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_reproduce(const std::string& config_path, const std::string& out_flag) {
  const ConfigPtr config = load(config_path);
  const fs::path dir = output_dir(out_flag, config.get());
  std::vector<sw_reproduce_row> rows(8);
  size_t count = 0;
  check(sw_reproduce(config.get(), dir.c_str(), rows.data(), rows.size(), &count), "reproduce");
  rows.resize(std::min(count, rows.size()));

  bool all_pass = !rows.empty();
  std::printf("%-22s %-10s %-26s %-10s %-10s %s\n", "scenario", "settling", "max alpha",
              "ss error", "recovery", "result");
  for (const auto& r : rows) {
    char settling[32] = "-", recovery[32] = "-", sse[32];
    if (!r.has_disturbance) {
      if (r.settled) {
        std::snprintf(settling, sizeof settling, "%.3f s", r.settling_time);
      } else {
        std::snprintf(settling, sizeof settling, "unsettled");
      }
    } else if (r.recovered) {
      std::snprintf(recovery, sizeof recovery, "t=%.3f s", r.recovery_time);
    } else {
      std::snprintf(recovery, sizeof recovery, "none");
    }
    std::snprintf(sse, sizeof sse, "%.2e", r.steady_state_error);
    std::printf("%-22s %-10s %-26s %-10s %-10s %s%s\n", r.scenario, settling,
                angle(r.max_alpha).c_str(), sse, recovery, r.pass ? "pass" : "FAIL",
                r.slow_recovery ? " (slow recovery)" : "");
    all_pass = all_pass && r.pass;
  }
  std::printf("wrote %s\n", dir.c_str());
  if (!all_pass) {
    std::fprintf(stderr, "error: one or more acceptance rows failed; see summary.csv\n");
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softwrist: soft-wrist model, inverse-dynamics MPC and simulation harness"};
  app.set_version_flag("--version", std::string(sw_version()));
  app.require_subcommand(1);

  std::string config_path, scenario, out;
  std::optional<std::uint64_t> seed;
  int samples = 100;
  double alpha_min = 0.0, alpha_max = std::numbers::pi / 4;

  std::string scenario_help = "scenario preset:";
  for (size_t i = 0; i < sw_scenario_count(); ++i) {
    scenario_help += std::string(" ") + sw_scenario_name(i);
  }
  const std::string out_help =
      std::string("output directory (default: config output_dir, $") + kOutEnv + ", ./" +
      kDefaultOut + ")";

  auto* simulate = app.add_subcommand("simulate", "run one closed-loop scenario");
  simulate->add_option("--config", config_path, "JSON configuration file");
  simulate->add_option("--scenario", scenario, scenario_help);
  simulate->add_option("--out", out, out_help);

  auto* factors = app.add_subcommand("factors", "tabulate the energy-factor fits");
  factors->add_option("--alpha-min", alpha_min, "lower bending angle, rad")
      ->capture_default_str();
  factors->add_option("--alpha-max", alpha_max, "upper bending angle, rad")
      ->capture_default_str();
  factors->add_option("--samples", samples, "number of rows")->capture_default_str();
  factors->add_option("--out", out, out_help);

  auto* selftest = app.add_subcommand("qp-selftest", "check the QP solver against enumeration");
  selftest->add_option("--config", config_path, "JSON configuration file (for the seed)");
  selftest->add_option("--seed", seed, "random seed (default: config seed, 42)");
  selftest->add_option("--samples,--count", samples, "number of problems")
      ->capture_default_str();
  selftest->add_option("--out", out, out_help);

  auto* reproduce = app.add_subcommand("reproduce", "run the step and disturbance suite");
  reproduce->add_option("--config", config_path, "JSON configuration file");
  reproduce->add_option("--out", out, out_help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, scenario, out);
    if (*factors) return cmd_factors(alpha_min, alpha_max, samples, out);
    if (*selftest) return cmd_qp_selftest(config_path, seed, samples, out);
    if (*reproduce) return cmd_reproduce(config_path, out);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
