#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rhinf {

/// Minimal INI-style reader: [section] headers, key = value lines, '#' or ';'
/// comments. Values are kept as strings; typed getters parse on demand.
class IniConfig {
 public:
  IniConfig() = default;

  static IniConfig from_string(const std::string& text) {
    IniConfig c;
    std::istringstream in(text);
    std::string line, section;
    while (std::getline(in, line)) {
      const auto hash = line.find_first_of("#;");
      if (hash != std::string::npos) line.erase(hash);
      auto l = trim(line);
      if (l.empty()) continue;
      if (l.front() == '[' && l.back() == ']') {
        section = trim(l.substr(1, l.size() - 2));
        continue;
      }
      const auto eq = l.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("IniConfig: bad line: " + line);
      c.values_[section + "." + trim(l.substr(0, eq))] = trim(l.substr(eq + 1));
    }
    return c;
  }

  static IniConfig from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("IniConfig: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_string(ss.str());
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  double get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : std::stod(it->second);
  }
  int get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : std::stoi(it->second);
  }
  std::string get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }
  std::map<std::string, std::string> values_;
};

struct TurtleEnvConfig {
  double dt = 0.01;            // 100 Hz loop rate
  double arena = 11.0;         // [0, arena]^2 spawn/clamp box
  double spawn_margin = 1.0;
  double noise_std = 0.01;     // additive on scaled observation channels
  double wind_clamp = 1.0;     // random-walk clip; 0 disables wind
  int episode_len = 2000;
  double distance_scale = 5.0; // observation squash scale, meters

  static TurtleEnvConfig from_ini(const IniConfig& c) {
    TurtleEnvConfig e;
    e.dt = c.get_double("turtle.dt", e.dt);
    e.arena = c.get_double("turtle.arena", e.arena);
    e.spawn_margin = c.get_double("turtle.spawn_margin", e.spawn_margin);
    e.noise_std = c.get_double("turtle.noise_std", e.noise_std);
    e.wind_clamp = c.get_double("turtle.wind_clamp", e.wind_clamp);
    e.episode_len = c.get_int("turtle.episode_len", e.episode_len);
    e.distance_scale = c.get_double("turtle.distance_scale", e.distance_scale);
    return e;
  }
};

struct BlimpEnvConfig {
  double dt = 0.1;             // 10 Hz loop rate
  double noise_std = 0.01;
  double wind_speed = 0.0;     // m/s, direction randomized per episode
  double buoyancy_lo = 1.0;    // sampled uniformly per episode
  double buoyancy_hi = 1.0;
  double trigger_radius = 5.0; // training threshold; coil evaluation uses 10
  int episode_len = 2400;
  double speed_max = 2.0;      // m/s clamp on commanded body rates
  double actuator_tau = 0.3;   // first-order actuator lag, seconds
  double yaw_rate_max = 1.5;   // rad/s
  double buoyancy_gain = 5.0;  // climb-rate offset per unit buoyancy fraction
  double distance_scale = 10.0;
  double spawn_radius = 40.0;  // random waypoint distance band, meters
  double spawn_alt = 20.0;     // max |relative altitude| of sampled waypoints

  static BlimpEnvConfig from_ini(const IniConfig& c) {
    BlimpEnvConfig e;
    e.dt = c.get_double("blimp.dt", e.dt);
    e.noise_std = c.get_double("blimp.noise_std", e.noise_std);
    e.wind_speed = c.get_double("blimp.wind_speed", e.wind_speed);
    e.buoyancy_lo = c.get_double("blimp.buoyancy_lo", e.buoyancy_lo);
    e.buoyancy_hi = c.get_double("blimp.buoyancy_hi", e.buoyancy_hi);
    e.trigger_radius = c.get_double("blimp.trigger_radius", e.trigger_radius);
    e.episode_len = c.get_int("blimp.episode_len", e.episode_len);
    e.speed_max = c.get_double("blimp.speed_max", e.speed_max);
    e.actuator_tau = c.get_double("blimp.actuator_tau", e.actuator_tau);
    e.yaw_rate_max = c.get_double("blimp.yaw_rate_max", e.yaw_rate_max);
    e.buoyancy_gain = c.get_double("blimp.buoyancy_gain", e.buoyancy_gain);
    e.distance_scale = c.get_double("blimp.distance_scale", e.distance_scale);
    e.spawn_radius = c.get_double("blimp.spawn_radius", e.spawn_radius);
    e.spawn_alt = c.get_double("blimp.spawn_alt", e.spawn_alt);
    return e;
  }
};

}  // namespace rhinf
