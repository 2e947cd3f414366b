// Copyright 2026 The qnet Authors
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

#pragma once

#include <fstream>

#include <json.hpp>

#include "qnet/network.hpp"
#include "qnet/propagator.hpp"

namespace qnet {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Site indices are 1-based in files, matching the user-facing convention.
inline nlohmann::json network_to_json(const NetworkSpec& spec) {
  nlohmann::json j;
  j["n_sites"] = spec.n_sites;
  j["omega"] = spec.omega;
  nlohmann::json cps = nlohmann::json::array();
  for (const auto& c : spec.couplings)
    cps.push_back(nlohmann::json::array({c.k, c.l, c.v}));
  j["couplings"] = cps;
  j["gamma_diss"] = spec.gamma_diss;
  j["gamma_deph"] = spec.gamma_deph;
  j["sink_site"] = spec.sink_site;
  j["sink_rate"] = spec.sink_rate;
  return j;
}

inline NetworkSpec network_from_json(const nlohmann::json& j) {
  try {
    NetworkSpec spec;
    spec.n_sites = j.at("n_sites").get<int>();
    spec.omega = j.at("omega").get<std::vector<double>>();
    for (const auto& c : j.at("couplings")) {
      if (!c.is_array() || c.size() != 3)
        throw ConfigError("couplings entries must be [k, l, v] triples");
      spec.couplings.push_back(
          {c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<double>()});
    }
    spec.gamma_diss = j.at("gamma_diss").get<std::vector<double>>();
    spec.gamma_deph = j.at("gamma_deph").get<std::vector<double>>();
    spec.sink_site = j.at("sink_site").get<int>();
    spec.sink_rate = j.at("sink_rate").get<double>();
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad network config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad network config: ") + e.what());
  }
}

// "site:k", "vacuum", or "bell:a,k"
inline SEDensityMatrix initial_state_from_string(const NetworkSpec& spec,
                                                 const std::string& s) {
  try {
    if (s == "vacuum") return initial_vacuum(spec);
    if (s.rfind("site:", 0) == 0) return initial_site(spec, std::stoi(s.substr(5)));
    if (s.rfind("bell:", 0) == 0) {
      const std::string rest = s.substr(5);
      const size_t comma = rest.find(',');
      if (comma == std::string::npos)
        throw ConfigError("bell initial state needs two site indices");
      return initial_bell(spec, std::stoi(rest.substr(0, comma)),
                          std::stoi(rest.substr(comma + 1)));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad initial state '") + s + "': " + e.what());
  }
  throw ConfigError("unrecognized initial state: " + s);
}

inline double horizon_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfiniteHorizon;
    throw ConfigError("horizon must be a positive number or \"inf\"");
  }
  const double t = j.get<double>();
  if (!(t > 0.0)) throw ConfigError("horizon must be a positive number or \"inf\"");
  return t;
}

inline nlohmann::json horizon_to_json(double horizon) {
  if (std::isinf(horizon)) return "inf";
  return horizon;
}

struct OptimizeConfig {
  std::vector<int> free;  // empty: all sites free
  int restarts = 16;
  long budget = 20000;
  double gamma_max = 1e3;
};

// A full run description: network, initial state, horizon, and an optional
// optimization block.
struct RunConfig {
  NetworkSpec spec;
  std::string initial = "site:1";
  double horizon = kInfiniteHorizon;
  bool has_optimize = false;
  OptimizeConfig optimize;

  SEDensityMatrix initial_state() const {
    return initial_state_from_string(spec, initial);
  }
};

inline nlohmann::json run_config_to_json(const RunConfig& cfg) {
  nlohmann::json j = network_to_json(cfg.spec);
  j["initial"] = cfg.initial;
  j["horizon"] = horizon_to_json(cfg.horizon);
  if (cfg.has_optimize) {
    nlohmann::json o;
    o["free"] = cfg.optimize.free;
    o["restarts"] = cfg.optimize.restarts;
    o["budget"] = cfg.optimize.budget;
    o["gamma_max"] = cfg.optimize.gamma_max;
    j["optimize"] = o;
  }
  return j;
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.spec = network_from_json(j);
  if (j.contains("initial")) cfg.initial = j.at("initial").get<std::string>();
  cfg.initial_state();  // validate eagerly
  if (j.contains("horizon")) cfg.horizon = horizon_from_json(j.at("horizon"));
  if (j.contains("optimize")) {
    cfg.has_optimize = true;
    const auto& o = j.at("optimize");
    if (o.contains("free")) cfg.optimize.free = o.at("free").get<std::vector<int>>();
    if (o.contains("restarts")) cfg.optimize.restarts = o.at("restarts").get<int>();
    if (o.contains("budget")) cfg.optimize.budget = o.at("budget").get<long>();
    if (o.contains("gamma_max"))
      cfg.optimize.gamma_max = o.at("gamma_max").get<double>();
  }
  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cannot parse ") + path + ": " + e.what());
  }
  return run_config_from_json(j);
}

inline void save_run_config(const std::string& path, const RunConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << run_config_to_json(cfg).dump(2) << "\n";
}

}  // namespace qnet
