#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "flutterid/likelihood.hpp"
#include "flutterid/rng.hpp"

namespace flutterid {

struct SamplerConfig {
  double a = 2.0;                  // stretch tuning parameter, a > 1
  int n_walkers = 50;
  int n_steps = 0;                 // ensemble sweeps after initialization
  int thin = 10;                   // retain every thin-th sweep
  double burn_in_fraction = 0.20;  // discarded leading fraction of sweeps
  std::uint64_t seed = 0;
  int max_lag = 200;               // autocorrelation convergence horizon

  void validate(int dim) const;
};

/// Post burn-in, thinned ensemble history in sweep-major order: the
/// n_walkers samples of one retained sweep are stored consecutively.
struct EnsembleChain {
  int dim = 0;
  int n_walkers = 0;
  int thin = 1;
  std::vector<std::vector<double>> samples;
  std::vector<double> log_post;
  std::vector<int> walker;  // walker index per retained sample
  double acceptance_rate = 0.0;

  /// Flattened per-parameter scalar chain.
  std::vector<double> component(int param) const;
};

/// Inverse CDF of the stretch density p(z) ~ 1/sqrt(z) on [1/a, a].
double stretch_z_from_u(double a, double u);
double stretch_draw(double a, Rng& rng);

/// Affine combination walker_i + z (walker_j - walker_i).
std::vector<double> propose(const std::vector<double>& walker_i,
                            const std::vector<double>& walker_j, double z);

/// min{1, z^(n-1) p(theta*)/p(theta)} evaluated in log space.
double accept_probability(double log_post_star, double log_post_current, double z,
                          int dim);

using LogDensity = std::function<double(const std::vector<double>&)>;

/// Runs the stretch-move ensemble.  Walkers update one at a time with the
/// complement drawn uniformly from the current (partially updated)
/// ensemble; burn-in sweeps are dropped and the rest thinned.  Walkers
/// start in a box of 1% prior width around init (prior midpoint when init
/// is empty), with prior redraws for walkers whose objective is not
/// finite; throws NumericalError after 10^4 fruitless draws.
EnsembleChain run_ensemble(const LogDensity& objective, const PriorSpec& prior,
                           const SamplerConfig& cfg,
                           const std::vector<double>& init = {});

/// Normalized autocovariance rho(0..max_lag), rho(0) = 1.  Throws
/// NumericalError on zero variance (degenerate stuck chain).
std::vector<double> chain_autocorrelation(const std::vector<double>& chain,
                                          int max_lag);

/// First lag with |rho(lag)| < 0.05, or -1 when none is reached within
/// max_lag.
int convergence_lag(const std::vector<double>& chain, int max_lag);

}  // namespace flutterid
