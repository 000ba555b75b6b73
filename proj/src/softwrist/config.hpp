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

// Run configuration: one JSON document with the sections
//
//   { "plant": {...}, "controller": {...}, "scenario": {...},
//     "output_dir": "...", "seed": 42 }
//
// Every section and key is optional; missing keys keep their defaults.
// Unknown keys, wrong types and out-of-range values are rejected at load
// with Error(kConfig) naming the offending key.

#ifndef SOFTWRIST_CONFIG_HPP_
#define SOFTWRIST_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "softwrist/dynamics.hpp"
#include "softwrist/mpc_controller.hpp"
#include "softwrist/sim_harness.hpp"

namespace softwrist {

struct DisturbanceOverrides {
  std::optional<double> force;
  std::optional<double> start_time;
  std::optional<double> duration;
  std::optional<double> moment_arm;
  bool operator==(const DisturbanceOverrides&) const = default;
};

// Applied on top of the named preset.
struct ScenarioOverrides {
  std::string name = "ulnar-step";
  std::optional<double> target;
  std::optional<double> step_time;
  std::optional<double> duration;
  std::optional<double> dt_sim;
  // Present: the scenario gets a disturbance (the preset's or the default
  // pulse) with these fields replaced.
  std::optional<DisturbanceOverrides> disturbance;
  bool operator==(const ScenarioOverrides&) const = default;
};

struct RunConfig {
  WristParams plant;
  MpcConfig controller;
  ScenarioOverrides scenario;
  std::optional<std::string> output_dir;
  std::uint64_t seed = 42;
};

bool operator==(const RunConfig& a, const RunConfig& b);

RunConfig parse_config(std::string_view json_text);
// Throws Error(kIo) if the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);
// Full effective configuration; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& config);

// Preset for `name` (defaults to config.scenario.name) with the overrides
// applied, validated against the controller. Throws Error(kConfig).
Scenario resolve_scenario(const RunConfig& config,
                          std::optional<std::string_view> name = std::nullopt);

}  // namespace softwrist

#endif  // SOFTWRIST_CONFIG_HPP_
