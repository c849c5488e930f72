#include "flutterid/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

using nlohmann::json;

namespace flutterid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const json& require(const json& j, const char* key, const char* where) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ConfigError(std::string(where) + ": missing required key '" + key + "'");
  }
  return *it;
}

double require_number(const json& j, const char* key, const char* where) {
  const json& v = require(j, key, where);
  if (!v.is_number()) {
    throw ConfigError(std::string(where) + ": '" + key + "' must be a number");
  }
  return v.get<double>();
}

/// Frequency in rad/s from exactly one of `f_<name>_hz` / `omega_<name>_rad_s`.
double frequency_rad_s(const json& j, const std::string& name, const char* where) {
  const std::string f_key = "f_" + name + "_hz";
  const std::string w_key = "omega_" + name + "_rad_s";
  const bool has_f = j.contains(f_key);
  const bool has_w = j.contains(w_key);
  if (has_f == has_w) {
    throw ConfigError(std::string(where) + ": exactly one of '" + f_key + "' and '" +
                      w_key + "' must be given");
  }
  return has_f ? kTwoPi * j.at(f_key).get<double>() : j.at(w_key).get<double>();
}

std::vector<double> theta_sized_array(const json& v, const char* what) {
  if (!v.is_array() || v.size() != kThetaDim) {
    throw ConfigError(std::string(what) + " must be an array of 12 numbers");
  }
  return v.get<std::vector<double>>();
}

}  // namespace

RunConfig parse_config(const json& j) {
  RunConfig cfg;
  cfg.raw = j;

  const json& st = require(j, "structural", "config");
  cfg.structural.mass = require_number(st, "mass_kg_m", "structural");
  cfg.structural.inertia = require_number(st, "inertia_kg_m2_m", "structural");
  cfg.structural.omega_h = frequency_rad_s(st, "h", "structural");
  cfg.structural.omega_alpha = frequency_rad_s(st, "alpha", "structural");
  cfg.structural.xi_h = require_number(st, "xi_h", "structural");
  cfg.structural.xi_alpha = require_number(st, "xi_alpha", "structural");
  cfg.structural.width = require_number(st, "width_m", "structural");
  cfg.structural.rho = require_number(st, "rho_kg_m3", "structural");
  cfg.structural.validate();

  cfg.flow.u = require_number(require(j, "flow", "config"), "u_m_s", "flow");
  cfg.flow.validate();

  const json& bands = require(j, "bands", "config");
  const auto band = [&](const char* key, double& lo, double& hi) {
    const json& b = require(bands, key, "bands");
    if (!b.is_array() || b.size() != 2) {
      throw ConfigError(std::string("bands: '") + key + "' must be [f_lo_hz, f_hi_hz]");
    }
    lo = b[0].get<double>();
    hi = b[1].get<double>();
    if (!(lo > 0.0) || !(hi > lo)) {
      throw ConfigError(std::string("bands: '") + key + "' must satisfy 0 < lo < hi");
    }
  };
  band("band1_hz", cfg.band1_lo_hz, cfg.band1_hi_hz);
  band("band2_hz", cfg.band2_lo_hz, cfg.band2_hi_hz);
  if (!(cfg.band1_hi_hz < cfg.band2_lo_hz)) {
    throw ConfigError("bands must be ordered and disjoint (band1 below band2)");
  }

  cfg.m_segments =
      static_cast<int>(require_number(require(j, "spectral", "config"), "m_segments",
                                      "spectral"));
  if (cfg.m_segments < 2) throw ConfigError("spectral: m_segments must be >= 2");

  if (j.contains("sampler")) {
    const json& sp = j.at("sampler");
    if (sp.contains("a")) cfg.sampler.a = sp.at("a").get<double>();
    if (sp.contains("n_walkers")) cfg.sampler.n_walkers = sp.at("n_walkers").get<int>();
    const bool has_total = sp.contains("total_samples");
    const bool has_sweeps = sp.contains("n_sweeps");
    if (has_total && has_sweeps) {
      throw ConfigError("sampler: give either 'total_samples' or 'n_sweeps', not both");
    }
    if (has_total) {
      const auto total = sp.at("total_samples").get<long long>();
      cfg.sampler.n_steps = static_cast<int>(
          (total + cfg.sampler.n_walkers - 1) / cfg.sampler.n_walkers);
    } else if (has_sweeps) {
      cfg.sampler.n_steps = sp.at("n_sweeps").get<int>();
    }
    if (sp.contains("thin")) cfg.sampler.thin = sp.at("thin").get<int>();
    if (sp.contains("burn_in_fraction")) {
      cfg.sampler.burn_in_fraction = sp.at("burn_in_fraction").get<double>();
    }
    if (sp.contains("seed")) cfg.sampler.seed = sp.at("seed").get<std::uint64_t>();
    if (sp.contains("max_lag")) cfg.sampler.max_lag = sp.at("max_lag").get<int>();
  }
  if (cfg.sampler.n_steps == 0) {
    // paper protocol: 200,000 pre-thinning samples across the ensemble
    cfg.sampler.n_steps = static_cast<int>(
        (200000 + cfg.sampler.n_walkers - 1) / cfg.sampler.n_walkers);
  }

  if (j.contains("prior")) {
    const json& pr = j.at("prior");
    if (pr.contains("lower") != pr.contains("upper")) {
      throw ConfigError("prior: give both 'lower' and 'upper' or neither");
    }
    if (pr.contains("lower")) {
      cfg.prior_lower = theta_sized_array(pr.at("lower"), "prior.lower");
      cfg.prior_upper = theta_sized_array(pr.at("upper"), "prior.upper");
    }
  }
  if (j.contains("start")) {
    cfg.start = theta_sized_array(j.at("start"), "start");
  }

  if (j.contains("simulate")) {
    const json& sim = j.at("simulate");
    cfg.simulate.present = true;
    cfg.simulate.duration_s = require_number(sim, "duration_s", "simulate");
    cfg.simulate.dt_s = require_number(sim, "dt_s", "simulate");
    cfg.simulate.s_lift = require_number(sim, "s_lift", "simulate");
    cfg.simulate.s_moment = require_number(sim, "s_moment", "simulate");
    const json& fds = require(sim, "fds", "simulate");
    if (fds.is_string() && fds.get<std::string>() == "theodorsen") {
      cfg.simulate.fds_theodorsen = true;
    } else if (fds.is_object()) {
      cfg.simulate.fds_theodorsen = false;
      FlutterDerivatives& f = cfg.simulate.fds;
      f.h1 = require_number(fds, "Hstar1", "simulate.fds");
      f.h2 = require_number(fds, "Hstar2", "simulate.fds");
      f.h3 = require_number(fds, "Hstar3", "simulate.fds");
      f.h4 = require_number(fds, "Hstar4", "simulate.fds");
      f.a1 = require_number(fds, "Astar1", "simulate.fds");
      f.a2 = require_number(fds, "Astar2", "simulate.fds");
      f.a3 = require_number(fds, "Astar3", "simulate.fds");
      f.a4 = require_number(fds, "Astar4", "simulate.fds");
    } else {
      throw ConfigError("simulate.fds must be \"theodorsen\" or an object of 8 values");
    }
  }

  if (j.contains("data") && j.at("data").contains("dt_s")) {
    cfg.data_dt_s = j.at("data").at("dt_s").get<double>();
    if (!(*cfg.data_dt_s > 0.0)) throw ConfigError("data.dt_s must be positive");
  }

  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    return parse_config(j);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

}  // namespace flutterid
