#pragma once

#include <array>
#include <vector>

#include "flutterid/likelihood.hpp"
#include "flutterid/sampler.hpp"
#include "flutterid/types.hpp"

namespace flutterid {

struct KdeResult {
  double mpv = 0.0;
  double bandwidth = 0.0;
  std::vector<double> grid;     // 512 evaluation points
  std::vector<double> density;
};

/// Gaussian-kernel density on a 512-point grid over
/// [min - 3 bw, max + 3 bw]; the MPV is the grid argmax.  Bandwidth is
/// Sheather-Jones (solve-the-equation) for n >= 1000, Silverman otherwise.
KdeResult kde_mpv(const std::vector<double>& samples);

double silverman_bandwidth(const std::vector<double>& samples);
double sheather_jones_bandwidth(const std::vector<double>& samples);

/// Empirical quantile with linear interpolation.
double quantile(std::vector<double> samples, double p);

/// Equal-tail credible interval (default 95%: 2.5% and 97.5% quantiles).
std::pair<double, double> credible_interval(const std::vector<double>& samples,
                                            double level = 0.95);

struct ParamSummary {
  double mpv = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double q500 = 0.0;
  double q975 = 0.0;
  int convergence_lag = -1;  // first lag with |rho| < 0.05; -1 if never
};

struct PosteriorSummary {
  std::vector<ParamSummary> params;
  double acceptance_rate = 0.0;
  bool converged = false;

  std::array<double, kThetaDim> mpv_theta() const;  // requires 12 params
};

PosteriorSummary summarize_chain(const EnsembleChain& chain, int max_lag);

/// Measured vs reconstructed PSD ordinates over both likelihood bands.
struct PsdOverlay {
  std::vector<double> f_hz;
  std::vector<int> band;  // 1 or 2
  std::vector<SpectralMatrix> measured;
  std::vector<SpectralMatrix> reconstructed;

  /// Band-averaged |recon - meas| / meas of a diagonal entry
  /// (channel 0 = h, 1 = alpha).
  double band_mean_rel_err(int band, int channel) const;
};

PsdOverlay reconstruct_psd(const std::array<double, kThetaDim>& theta_hat,
                           const LikelihoodContext& ctx);

struct VelocityRow {
  double u = 0.0;
  double k_h = 0.0;
  double k_alpha = 0.0;
  std::array<double, 8> mpv{};   // A*_1..4, H*_1..4
  std::array<double, 8> lo{};
  std::array<double, 8> hi{};
};

struct VelocityTable {
  std::vector<VelocityRow> rows;
  /// Per-FD quadratic least-squares coefficients (c0, c1, c2) in U, fitted
  /// through the MPVs; empty when fewer than 3 rows.
  std::vector<std::array<double, 3>> quadratic_fit;
};

VelocityTable fd_vs_velocity_table(
    const std::vector<std::pair<FlowCondition, PosteriorSummary>>& runs,
    const StructuralParams& params);

/// Least-squares quadratic y = c0 + c1 x + c2 x^2.
std::array<double, 3> quadratic_fit(const std::vector<double>& x,
                                    const std::vector<double>& y);

}  // namespace flutterid
