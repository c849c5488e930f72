#include "flutterid/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flutterid {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void SamplerConfig::validate(int dim) const {
  if (!(a > 1.0)) throw ConfigError("stretch parameter a must exceed 1");
  if (n_walkers < 2 * dim) {
    throw ConfigError("need at least 2*dim walkers (" + std::to_string(2 * dim) + ")");
  }
  if (n_steps < 1) throw ConfigError("sampler needs at least one sweep");
  if (thin < 1) throw ConfigError("thinning interval must be >= 1");
  if (burn_in_fraction < 0.0 || burn_in_fraction >= 1.0) {
    throw ConfigError("burn-in fraction must lie in [0, 1)");
  }
  if (max_lag < 1) throw ConfigError("autocorrelation horizon must be positive");
}

std::vector<double> EnsembleChain::component(int param) const {
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i][param];
  return out;
}

double stretch_z_from_u(double a, double u) {
  const double sqrt_a = std::sqrt(a);
  const double root = (sqrt_a - 1.0 / sqrt_a) * u + 1.0 / sqrt_a;
  return root * root;
}

double stretch_draw(double a, Rng& rng) { return stretch_z_from_u(a, rng.uniform()); }

std::vector<double> propose(const std::vector<double>& walker_i,
                            const std::vector<double>& walker_j, double z) {
  std::vector<double> out(walker_i.size());
  for (std::size_t d = 0; d < walker_i.size(); ++d) {
    out[d] = walker_i[d] + z * (walker_j[d] - walker_i[d]);
  }
  return out;
}

double accept_probability(double log_post_star, double log_post_current, double z,
                          int dim) {
  if (log_post_star == -kInf) return 0.0;
  const double log_ratio = (dim - 1) * std::log(z) + log_post_star - log_post_current;
  return std::min(1.0, std::exp(log_ratio));
}

EnsembleChain run_ensemble(const LogDensity& objective, const PriorSpec& prior,
                           const SamplerConfig& cfg, const std::vector<double>& init) {
  prior.validate();
  const int dim = prior.dim();
  cfg.validate(dim);

  const std::vector<double> center = init.empty() ? prior.midpoint() : init;
  if (static_cast<int>(center.size()) != dim) {
    throw ConfigError("init vector dimension does not match the prior");
  }

  Rng rng(cfg.seed);

  // Walkers start in a box of 1% prior width around the center, clipped
  // to the support; walkers that cannot reach a finite objective fall
  // back to prior draws within a global budget.
  std::vector<std::vector<double>> walkers(cfg.n_walkers);
  std::vector<double> log_post(cfg.n_walkers);
  int draws_left = 10000;
  for (int w = 0; w < cfg.n_walkers; ++w) {
    bool placed = false;
    int box_tries = 0;
    while (!placed) {
      if (draws_left-- <= 0) {
        throw NumericalError(
            "no finite-posterior starting ensemble found in 10^4 draws");
      }
      std::vector<double> x(dim);
      if (box_tries++ < 100) {
        for (int d = 0; d < dim; ++d) {
          const double half = 0.005 * (prior.upper[d] - prior.lower[d]);
          x[d] = std::clamp(center[d] + (2.0 * rng.uniform() - 1.0) * half,
                            prior.lower[d], prior.upper[d]);
        }
      } else {
        x = prior.sample(rng);
      }
      const double lp = objective(x);
      if (std::isfinite(lp)) {
        walkers[w] = std::move(x);
        log_post[w] = lp;
        placed = true;
      }
    }
  }

  const int burn_sweeps = static_cast<int>(cfg.burn_in_fraction * cfg.n_steps);
  EnsembleChain chain;
  chain.dim = dim;
  chain.n_walkers = cfg.n_walkers;
  chain.thin = cfg.thin;

  std::size_t accepted = 0, proposed = 0;
  for (int sweep = 0; sweep < cfg.n_steps; ++sweep) {
    for (int w = 0; w < cfg.n_walkers; ++w) {
      int j = static_cast<int>(rng.uniform_below(cfg.n_walkers - 1));
      if (j >= w) ++j;
      const double z = stretch_draw(cfg.a, rng);
      // stretch move anchored at the complement walker
      const std::vector<double> candidate = propose(walkers[j], walkers[w], z);
      const double lp_star = objective(candidate);
      ++proposed;
      const double alpha = accept_probability(lp_star, log_post[w], z, dim);
      if (rng.uniform() < alpha) {
        walkers[w] = candidate;
        log_post[w] = lp_star;
        ++accepted;
      }
    }
    if (sweep >= burn_sweeps && (sweep - burn_sweeps) % cfg.thin == 0) {
      for (int w = 0; w < cfg.n_walkers; ++w) {
        chain.samples.push_back(walkers[w]);
        chain.log_post.push_back(log_post[w]);
        chain.walker.push_back(w);
      }
    }
  }
  if (chain.samples.empty()) {
    throw ConfigError("no samples retained: increase n_steps or reduce thinning");
  }
  chain.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(proposed);
  return chain;
}

std::vector<double> chain_autocorrelation(const std::vector<double>& chain,
                                          int max_lag) {
  const auto n = static_cast<std::ptrdiff_t>(chain.size());
  if (n <= 4 * static_cast<std::ptrdiff_t>(max_lag)) {
    throw DataError("chain too short for the requested autocorrelation horizon");
  }
  double mean = 0.0;
  for (double x : chain) mean += x;
  mean /= static_cast<double>(n);

  double var = 0.0;
  for (double x : chain) var += (x - mean) * (x - mean);
  // constant chains carry rounding residue, so the guard is relative
  const double scale = std::max(mean * mean, 1e-300);
  if (!(var > 1e-24 * static_cast<double>(n) * scale)) {
    throw NumericalError("zero-variance chain: sampler is stuck");
  }

  std::vector<double> rho(max_lag + 1);
  rho[0] = 1.0;
  for (int lag = 1; lag <= max_lag; ++lag) {
    double cov = 0.0;
    for (std::ptrdiff_t i = 0; i < n - lag; ++i) {
      cov += (chain[i] - mean) * (chain[i + lag] - mean);
    }
    rho[lag] = cov / var;
  }
  return rho;
}

int convergence_lag(const std::vector<double>& chain, int max_lag) {
  const int usable =
      std::min<int>(max_lag, static_cast<int>(chain.size() - 1) / 4 - 1);
  if (usable < 1) return -1;
  const auto rho = chain_autocorrelation(chain, usable);
  for (int lag = 1; lag <= usable; ++lag) {
    if (std::abs(rho[lag]) < 0.05) return lag;
  }
  return -1;
}

}  // namespace flutterid
