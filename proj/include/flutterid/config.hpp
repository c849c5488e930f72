#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "flutterid/sampler.hpp"
#include "flutterid/types.hpp"

#include <nlohmann/json.hpp>

namespace flutterid {

/// Everything a run needs, parsed from a single JSON document.  Frequencies
/// accept either `f_*_hz` or `omega_*_rad_s` (mutually exclusive); all
/// internal values are rad/s.
struct RunConfig {
  StructuralParams structural;
  FlowCondition flow;
  double band1_lo_hz = 0.0, band1_hi_hz = 0.0;
  double band2_lo_hz = 0.0, band2_hi_hz = 0.0;
  int m_segments = 0;
  SamplerConfig sampler;
  std::optional<std::vector<double>> prior_lower;  // 12, theta order
  std::optional<std::vector<double>> prior_upper;
  std::optional<std::vector<double>> start;        // 12, theta order

  struct SimulateSpec {
    bool present = false;
    double duration_s = 0.0;
    double dt_s = 0.0;
    double s_lift = 0.0;
    double s_moment = 0.0;
    bool fds_theodorsen = true;  // otherwise explicit values below
    FlutterDerivatives fds;
  } simulate;

  std::optional<double> data_dt_s;  // governs CSVs without a time column

  nlohmann::json raw;  // verbatim document for config echo / reruns
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

}  // namespace flutterid
