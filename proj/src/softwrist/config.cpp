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

#include "softwrist/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "softwrist/error.hpp"

namespace softwrist {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::kConfig, "config: '" + key + "': " + what);
}

// Reads the keys of one JSON object, rejecting anything not consumed.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) fail(qualified(key), "unknown key");
    }
  }

  void number(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(qualified(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(qualified(key), "must be finite");
    }
  }
  void number(const char* key, std::optional<double>& out) {
    if (const json* v = find(key)) {
      double d = 0.0;
      number_from(*v, key, d);
      out = d;
    }
  }
  void integer(const char* key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) fail(qualified(key), "expected an integer");
      const auto i = v->get<std::int64_t>();
      if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
        fail(qualified(key), "out of range");
      }
      out = static_cast<int>(i);
    }
  }
  void unsigned_integer(const char* key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) fail(qualified(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void string(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) fail(qualified(key), "expected a string");
      out = v->get<std::string>();
    }
  }
  const json* object(const char* key) { return find(key); }
  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json* find(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }
  void number_from(const json& v, const char* key, double& out) {
    if (!v.is_number()) fail(qualified(key), "expected a number");
    out = v.get<double>();
    if (!std::isfinite(out)) fail(qualified(key), "must be finite");
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_plant(const json& j, WristParams& p) {
  Section s(j, "plant");
  s.number("length", p.geom.length);
  s.number("tendon_radius", p.geom.tendon_radius);
  s.number("tendon_spacing", p.geom.tendon_spacing);
  s.integer("n_discs", p.geom.n_discs);
  s.number("disc_spacing", p.geom.disc_spacing);
  s.number("m1", p.m1);
  s.number("m2", p.m2);
  s.number("m3", p.m3);
  s.number("flexural_rigidity", p.flexural_rigidity);
  s.number("density", p.density);
  s.number("cross_section_area", p.cross_section_area);
}

void read_controller(const json& j, MpcConfig& c) {
  Section s(j, "controller");
  s.integer("prediction_horizon", c.prediction_horizon);
  s.integer("control_horizon", c.control_horizon);
  s.number("sample_time", c.sample_time);
  s.number("weight_alpha", c.weight_alpha);
  s.number("weight_alpha_dot", c.weight_alpha_dot);
  s.number("weight_du", c.weight_du);
  s.number("scale_alpha", c.scale_alpha);
  s.number("scale_alpha_dot", c.scale_alpha_dot);
  s.number("scale_u", c.scale_u);
  s.number("slack_penalty", c.slack_penalty);
  s.number("alpha_max", c.alpha_max);
  s.number("du_max", c.du_max);
}

void read_scenario(const json& j, ScenarioOverrides& o) {
  Section s(j, "scenario");
  s.string("name", o.name);
  s.number("target", o.target);
  s.number("step_time", o.step_time);
  s.number("duration", o.duration);
  s.number("dt_sim", o.dt_sim);
  if (const json* d = s.object("disturbance")) {
    DisturbanceOverrides dist;
    Section ds(*d, "scenario.disturbance");
    ds.number("force", dist.force);
    ds.number("start_time", dist.start_time);
    ds.number("duration", dist.duration);
    ds.number("moment_arm", dist.moment_arm);
    o.disturbance = dist;
  }
}

void put(json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

// Range checks that need the whole document.
void check(const RunConfig& c) {
  try {
    validate(c.plant);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, std::string("config: plant: ") + e.what());
  }
  try {
    validate(c.controller);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, std::string("config: controller: ") + e.what());
  }
  if (!scenario_preset(c.scenario.name)) {
    fail("scenario.name", "unknown scenario '" + c.scenario.name + "'");
  }
  resolve_scenario(c);
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  return dump_config(a) == dump_config(b);
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, std::string("config: malformed JSON: ") + e.what());
  }
  RunConfig c;
  {
    Section root(j, "");
    if (const json* p = root.object("plant")) read_plant(*p, c.plant);
    if (const json* p = root.object("controller")) read_controller(*p, c.controller);
    if (const json* p = root.object("scenario")) read_scenario(*p, c.scenario);
    std::string out;
    root.string("output_dir", out);
    if (!out.empty()) c.output_dir = out;
    root.unsigned_integer("seed", c.seed);
  }
  check(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string dump_config(const RunConfig& c) {
  json j;
  const WristParams& p = c.plant;
  j["plant"] = {{"length", p.geom.length},
                {"tendon_radius", p.geom.tendon_radius},
                {"tendon_spacing", p.geom.tendon_spacing},
                {"n_discs", p.geom.n_discs},
                {"disc_spacing", p.geom.disc_spacing},
                {"m1", p.m1},
                {"m2", p.m2},
                {"m3", p.m3},
                {"flexural_rigidity", p.flexural_rigidity},
                {"density", p.density},
                {"cross_section_area", p.cross_section_area}};
  const MpcConfig& m = c.controller;
  j["controller"] = {{"prediction_horizon", m.prediction_horizon},
                     {"control_horizon", m.control_horizon},
                     {"sample_time", m.sample_time},
                     {"weight_alpha", m.weight_alpha},
                     {"weight_alpha_dot", m.weight_alpha_dot},
                     {"weight_du", m.weight_du},
                     {"scale_alpha", m.scale_alpha},
                     {"scale_alpha_dot", m.scale_alpha_dot},
                     {"scale_u", m.scale_u},
                     {"slack_penalty", m.slack_penalty},
                     {"alpha_max", m.alpha_max},
                     {"du_max", m.du_max}};
  json s = {{"name", c.scenario.name}};
  put(s, "target", c.scenario.target);
  put(s, "step_time", c.scenario.step_time);
  put(s, "duration", c.scenario.duration);
  put(s, "dt_sim", c.scenario.dt_sim);
  if (c.scenario.disturbance) {
    json d = json::object();
    put(d, "force", c.scenario.disturbance->force);
    put(d, "start_time", c.scenario.disturbance->start_time);
    put(d, "duration", c.scenario.disturbance->duration);
    put(d, "moment_arm", c.scenario.disturbance->moment_arm);
    s["disturbance"] = d;
  }
  j["scenario"] = s;
  if (c.output_dir) j["output_dir"] = *c.output_dir;
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

Scenario resolve_scenario(const RunConfig& c, std::optional<std::string_view> name) {
  const std::string_view which = name.value_or(c.scenario.name);
  auto preset = scenario_preset(which);
  if (!preset) {
    throw Error(ErrorCode::kConfig, "unknown scenario '" + std::string(which) + "'");
  }
  Scenario s = *preset;
  const ScenarioOverrides& o = c.scenario;
  if (o.target) s.target = *o.target;
  if (o.step_time) s.step_time = *o.step_time;
  if (o.duration) s.duration = *o.duration;
  if (o.dt_sim) s.dt_sim = *o.dt_sim;
  if (o.disturbance) {
    Disturbance d = s.disturbance.value_or(Disturbance{});
    if (o.disturbance->force) d.force = *o.disturbance->force;
    if (o.disturbance->start_time) d.start_time = *o.disturbance->start_time;
    if (o.disturbance->duration) d.duration = *o.disturbance->duration;
    if (o.disturbance->moment_arm) d.moment_arm = *o.disturbance->moment_arm;
    s.disturbance = d;
  }
  try {
    validate(s, c.controller);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, std::string("config: ") + e.what());
  }
  return s;
}

}  // namespace softwrist
