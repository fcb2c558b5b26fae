#include "cli/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <optional>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "ivo/tolerances.hpp"

namespace ivo::io {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string describe(const std::string& source, int line, const std::string& field,
                     const std::string& what) {
  std::string out = source;
  if (line > 0) {
    out += ":" + std::to_string(line);
  }
  out += ": ";
  if (!field.empty()) {
    out += field + ": ";
  }
  return out + what;
}

/// Typed access to one JSON object, remembering its path for error messages.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path, const std::string& source)
      : node_(node), path_(std::move(path)), source_(source) {
    if (!node_.is_object()) {
      fail(path_, "expected an object");
    }
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& [key, value] : node_.items()) {
      const bool known = std::any_of(keys.begin(), keys.end(),
                                     [&](const char* k) { return key == k; });
      if (!known) {
        fail(child(key), "unknown field");
      }
    }
  }

  [[nodiscard]] bool has(const char* key) const { return node_.contains(key); }

  [[nodiscard]] double number(const char* key, std::optional<double> fallback = {}) const {
    if (!has(key)) {
      return require_default(key, fallback);
    }
    const auto& v = node_.at(key);
    if (!v.is_number()) {
      fail(child(key), "expected a number");
    }
    return v.get<double>();
  }

  [[nodiscard]] int integer(const char* key, std::optional<int> fallback = {}) const {
    if (!has(key)) {
      return require_default(key, fallback);
    }
    const auto& v = node_.at(key);
    if (!v.is_number_integer()) {
      fail(child(key), "expected an integer");
    }
    const auto wide = v.get<long long>();
    if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
      fail(child(key), "integer out of range");
    }
    return static_cast<int>(wide);
  }

  [[nodiscard]] std::uint64_t unsigned_integer(const char* key,
                                               std::optional<std::uint64_t> fallback = {}) const {
    if (!has(key)) {
      return require_default(key, fallback);
    }
    const auto& v = node_.at(key);
    if (!v.is_number_unsigned()) {
      fail(child(key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  [[nodiscard]] bool boolean(const char* key, std::optional<bool> fallback = {}) const {
    if (!has(key)) {
      return require_default(key, fallback);
    }
    const auto& v = node_.at(key);
    if (!v.is_boolean()) {
      fail(child(key), "expected true or false");
    }
    return v.get<bool>();
  }

  [[nodiscard]] std::string string(const char* key, std::optional<std::string> fallback = {}) const {
    if (!has(key)) {
      return require_default(key, fallback);
    }
    const auto& v = node_.at(key);
    if (!v.is_string()) {
      fail(child(key), "expected a string");
    }
    return v.get<std::string>();
  }

  [[nodiscard]] Vec2 vec2(const char* key, std::optional<Vec2> fallback = {}) const {
    if (!has(key)) {
      return require_default(key, fallback);
    }
    const auto& v = node_.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(child(key), "expected [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }

  [[nodiscard]] ObjectReader object(const char* key) const {
    return {node_.at(key), child(key), source_};
  }

  [[nodiscard]] const json& array(const char* key) const {
    const auto& v = node_.at(key);
    if (!v.is_array()) {
      fail(child(key), "expected an array");
    }
    return v;
  }

  [[nodiscard]] std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ParseError(source_, 0, field, what);
  }

 private:
  template <typename T>
  T require_default(const char* key, const std::optional<T>& fallback) const {
    if (!fallback) {
      fail(child(key), "missing required field");
    }
    return *fallback;
  }

  const json& node_;
  std::string path_;
  const std::string& source_;
};

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(source, line, "", e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json vec_json(const Vec2& v) { return ordered_json::array({v.x, v.y}); }

// Indented dump with every numeric pair kept on one line.
std::string dump(const ordered_json& j) {
  static const std::regex pair(R"(\[\s*(-?[0-9][0-9.eE+-]*),\s*(-?[0-9][0-9.eE+-]*)\s*\])");
  return std::regex_replace(j.dump(2), pair, "[$1, $2]") + "\n";
}

const char* fallback_name(InfeasibleFallback f) {
  return f == InfeasibleFallback::kLeastViolation ? "least-violation" : "urgency-weighted";
}

NoiseModel read_noise(const ObjectReader& r) {
  r.allow_only({"sigma_agent_pos", "sigma_agent_vel", "sigma_obs_pos", "sigma_obs_vel",
                "sigma_ego_obs"});
  NoiseModel n;
  n.sigma_agent_pos = r.number("sigma_agent_pos", 0.0);
  n.sigma_agent_vel = r.number("sigma_agent_vel", 0.0);
  n.sigma_obs_pos = r.number("sigma_obs_pos", 0.0);
  n.sigma_obs_vel = r.number("sigma_obs_vel", 0.0);
  n.sigma_ego_obs = r.number("sigma_ego_obs", 0.0);
  return n;
}

ordered_json noise_json(const NoiseModel& n) {
  ordered_json j;
  j["sigma_agent_pos"] = n.sigma_agent_pos;
  j["sigma_agent_vel"] = n.sigma_agent_vel;
  j["sigma_obs_pos"] = n.sigma_obs_pos;
  j["sigma_obs_vel"] = n.sigma_obs_vel;
  j["sigma_ego_obs"] = n.sigma_ego_obs;
  return j;
}

AgentConfig read_agent(const ObjectReader& r) {
  r.allow_only({"id", "start", "goal", "radius", "v_max", "u_max", "lambda", "sensor_range",
                "n_radial", "n_angular", "approaching_filter", "infeasible_penalty",
                "safety_margin", "fallback", "ttc_floor", "grid_rotation"});
  const AgentConfig defaults;
  const PlannerParams& pd = defaults.planner;
  AgentConfig a;
  a.id = r.integer("id");
  a.start = r.vec2("start");
  a.goal = r.vec2("goal");
  a.radius = r.number("radius", defaults.radius);
  a.sensor_range = r.number("sensor_range", defaults.sensor_range);
  auto& p = a.planner;
  p.v_max = r.number("v_max", pd.v_max);
  p.u_max = r.number("u_max", pd.u_max);
  p.lambda = r.number("lambda", pd.lambda);
  p.n_radial = r.integer("n_radial", pd.n_radial);
  p.n_angular = r.integer("n_angular", pd.n_angular);
  p.approaching_filter = r.boolean("approaching_filter", pd.approaching_filter);
  p.infeasible_penalty = r.number("infeasible_penalty", pd.infeasible_penalty);
  p.safety_margin = r.number("safety_margin", pd.safety_margin);
  p.ttc_floor = r.number("ttc_floor", pd.ttc_floor);
  p.grid_rotation = r.number("grid_rotation", pd.grid_rotation);
  const std::string fallback = r.string("fallback", fallback_name(pd.fallback));
  if (fallback == "least-violation") {
    p.fallback = InfeasibleFallback::kLeastViolation;
  } else if (fallback == "urgency-weighted") {
    p.fallback = InfeasibleFallback::kUrgencyWeighted;
  } else {
    r.fail(r.child("fallback"), "expected \"least-violation\" or \"urgency-weighted\"");
  }
  return a;
}

ordered_json agent_json(const AgentConfig& a) {
  ordered_json j;
  j["id"] = a.id;
  j["start"] = vec_json(a.start);
  j["goal"] = vec_json(a.goal);
  j["radius"] = a.radius;
  j["v_max"] = a.planner.v_max;
  j["u_max"] = a.planner.u_max;
  j["lambda"] = a.planner.lambda;
  j["sensor_range"] = a.sensor_range;
  j["n_radial"] = a.planner.n_radial;
  j["n_angular"] = a.planner.n_angular;
  j["approaching_filter"] = a.planner.approaching_filter;
  j["infeasible_penalty"] = a.planner.infeasible_penalty;
  j["safety_margin"] = a.planner.safety_margin;
  j["fallback"] = fallback_name(a.planner.fallback);
  j["ttc_floor"] = a.planner.ttc_floor;
  j["grid_rotation"] = a.planner.grid_rotation;
  return j;
}

std::string std_name(const std::string& source) {
  const auto stem = std::filesystem::path(source).stem().string();
  return stem.empty() ? "scenario" : stem;
}

template <typename Fn>
auto validated(const std::string& source, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError&) {
    throw;
  } catch (const ConfigError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

}  // namespace

ParseError::ParseError(const std::string& source, int line, std::string field,
                       const std::string& what)
    : Error(describe(source, line, field, what)), line_(line), field_(std::move(field)) {}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

ScenarioConfig parse_scenario_text(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  const ObjectReader root(doc, "", source);
  root.allow_only({"name", "scenario", "agents", "obstacles", "noise"});

  ScenarioConfig s;
  s.name = root.string("name", std_name(source));
  if (root.has("scenario")) {
    const auto sc = root.object("scenario");
    sc.allow_only({"dt", "max_steps", "goal_tolerance", "seed"});
    s.dt = sc.number("dt", s.dt);
    s.max_steps = sc.integer("max_steps", s.max_steps);
    s.goal_tolerance = sc.number("goal_tolerance", s.goal_tolerance);
    s.seed = sc.unsigned_integer("seed", s.seed);
  }
  if (!root.has("agents")) {
    root.fail("agents", "missing required field");
  }
  const auto& agents = root.array("agents");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    s.agents.push_back(read_agent({agents[i], "agents[" + std::to_string(i) + "]", source}));
  }
  if (root.has("obstacles")) {
    const auto& obstacles = root.array("obstacles");
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      const ObjectReader o(obstacles[i], "obstacles[" + std::to_string(i) + "]", source);
      o.allow_only({"start", "velocity", "radius"});
      s.obstacles.push_back({o.vec2("start"), o.vec2("velocity", Vec2{}),
                             o.number("radius", PassiveObstacle{}.radius)});
    }
  }
  if (root.has("noise")) {
    s.noise = read_noise(root.object("noise"));
  }
  validated(source, [&] {
    validate(s);
    return 0;
  });
  return s;
}

ScenarioConfig parse_scenario(const std::filesystem::path& path) {
  return parse_scenario_text(read_file(path), path.string());
}

std::string emit_scenario(const ScenarioConfig& s) {
  ordered_json j;
  j["name"] = s.name;
  j["scenario"] = {{"dt", s.dt},
                   {"max_steps", s.max_steps},
                   {"goal_tolerance", s.goal_tolerance},
                   {"seed", s.seed}};
  j["agents"] = ordered_json::array();
  for (const auto& a : s.agents) {
    j["agents"].push_back(agent_json(a));
  }
  j["obstacles"] = ordered_json::array();
  for (const auto& o : s.obstacles) {
    j["obstacles"].push_back(
        {{"start", vec_json(o.start)}, {"velocity", vec_json(o.velocity)}, {"radius", o.radius}});
  }
  j["noise"] = noise_json(s.noise);
  return dump(j);
}

NoiseStudy parse_noise_study_text(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  const ObjectReader root(doc, "", source);
  root.allow_only({"name", "truth", "noise", "samples", "level", "seed"});

  NoiseStudy study;
  study.name = root.string("name", std_name(source));
  if (!root.has("truth")) {
    root.fail("truth", "missing required field");
  }
  const auto t = root.object("truth");
  t.allow_only({"agent_pos", "agent_vel", "obs_pos", "obs_vel", "radius", "delta"});
  study.truth.agent_pos = t.vec2("agent_pos");
  study.truth.agent_vel = t.vec2("agent_vel");
  study.truth.obs_pos = t.vec2("obs_pos");
  study.truth.obs_vel = t.vec2("obs_vel");
  study.truth.radius = t.number("radius");
  study.truth.delta = t.number("delta", study.truth.delta);
  if (root.has("noise")) {
    study.noise = read_noise(root.object("noise"));
  }
  study.samples = root.unsigned_integer("samples", study.samples);
  study.level = root.number("level", study.level);
  study.seed = root.unsigned_integer("seed", study.seed);

  validated(source, [&] {
    validate(study.noise);
    if (!(study.truth.radius > 0.0)) throw ConfigError("truth.radius > 0");
    if (!(study.truth.delta >= tol::kMinObservationInterval)) throw ConfigError("truth.delta >= 1e-6");
    if (study.samples < 100) throw ConfigError("samples >= 100");
    if (!(study.level > 0.0 && study.level < 1.0)) throw ConfigError("0 < level < 1");
    if (norm(study.truth.obs_vel - study.truth.agent_vel) < tol::kDegenerateSpeed) {
      throw ConfigError("truth relative velocity must be nonzero");
    }
    return 0;
  });
  return study;
}

NoiseStudy parse_noise_study(const std::filesystem::path& path) {
  return parse_noise_study_text(read_file(path), path.string());
}

std::string emit_noise_study(const NoiseStudy& study) {
  ordered_json j;
  j["name"] = study.name;
  j["truth"] = {{"agent_pos", vec_json(study.truth.agent_pos)},
                {"agent_vel", vec_json(study.truth.agent_vel)},
                {"obs_pos", vec_json(study.truth.obs_pos)},
                {"obs_vel", vec_json(study.truth.obs_vel)},
                {"radius", study.truth.radius},
                {"delta", study.truth.delta}};
  j["noise"] = noise_json(study.noise);
  j["samples"] = study.samples;
  j["level"] = study.level;
  j["seed"] = study.seed;
  return dump(j);
}

}  // namespace ivo::io
