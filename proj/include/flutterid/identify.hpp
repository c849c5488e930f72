#pragma once

#include <nlohmann/json.hpp>

#include "flutterid/config.hpp"
#include "flutterid/posterior.hpp"

namespace flutterid {

/// Default uniform prior: each FD bounded by +/- 50 max(1, |flat-plate
/// guess|) at the run's reduced frequencies; force PSDs bounded by
/// [1e-8, 1e2] times the band-mean trace of the measured PSD.
PriorSpec default_theta_prior(const LikelihoodContext& ctx, const FlowCondition& flow);

/// Default sampler start: flat-plate FD guess plus force-PSD levels backed
/// out of the band-mean measured spectra through the guess FRF.
std::vector<double> default_start(const LikelihoodContext& ctx,
                                  const FlowCondition& flow, const PriorSpec& prior);

struct IdentifyResult {
  PosteriorSummary summary;
  EnsembleChain chain;
  PsdOverlay overlay;
  PriorSpec prior;
  std::vector<double> start;
  FrequencyBand band1, band2;
  double d_omega = 0.0;
  bool converged = false;
  bool acceptance_warning = false;
};

IdentifyResult identify_run(const RunConfig& cfg, const TimeSeries& ts);

nlohmann::json identify_result_json(const IdentifyResult& res, const RunConfig& cfg);

/// FDs used for synthetic generation per the config (explicit values or
/// flat-plate theory at the run's reduced frequencies).
FlutterDerivatives simulation_fds(const RunConfig& cfg);

void write_chain_csv(const std::string& path, const EnsembleChain& chain);
void write_overlay_csv(const std::string& path, const PsdOverlay& overlay);

}  // namespace flutterid
