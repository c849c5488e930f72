#include "flutterid/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flutterid/aeroelastic.hpp"

namespace flutterid {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946;

double sample_sd(const std::vector<double>& x, double mean) {
  if (x.size() < 2) return 0.0;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double sample_mean(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v;
  return m / static_cast<double>(x.size());
}

// Binned pair-distance counts shared by the Sheather-Jones functionals.
struct PairCounts {
  double dd = 0.0;               // bin width
  std::vector<double> cnt;       // distinct pairs at distance k bins
};

PairCounts pair_counts(const std::vector<double>& x, int nb) {
  const auto [mn_it, mx_it] = std::minmax_element(x.begin(), x.end());
  const double range = (*mx_it - *mn_it) * 1.01;
  PairCounts pc;
  pc.dd = range / nb;
  std::vector<double> hist(nb, 0.0);
  for (double v : x) {
    int b = static_cast<int>((v - *mn_it) / pc.dd);
    hist[std::clamp(b, 0, nb - 1)] += 1.0;
  }
  pc.cnt.assign(nb, 0.0);
  for (int b = 0; b < nb; ++b) {
    if (hist[b] == 0.0) continue;
    pc.cnt[0] += 0.5 * hist[b] * (hist[b] - 1.0);
    for (int k = 1; k < nb - b; ++k) pc.cnt[k] += hist[b] * hist[b + k];
  }
  return pc;
}

double phi4(double x) { return (((x * x - 6.0) * x * x) + 3.0) * std::exp(-0.5 * x * x); }

double phi6(double x) {
  const double x2 = x * x;
  return ((x2 * x2 * x2 - 15.0 * x2 * x2) + 45.0 * x2 - 15.0) * std::exp(-0.5 * x2);
}

double psi4_hat(const PairCounts& pc, std::size_t n, double h) {
  double sum = 0.0;
  for (std::size_t k = 0; k < pc.cnt.size(); ++k) {
    sum += phi4(pc.dd * static_cast<double>(k) / h) * pc.cnt[k];
  }
  sum = 2.0 * sum + static_cast<double>(n) * phi4(0.0);
  return sum * kInvSqrt2Pi /
         (static_cast<double>(n) * static_cast<double>(n - 1) * std::pow(h, 5.0));
}

double psi6_hat(const PairCounts& pc, std::size_t n, double h) {
  double sum = 0.0;
  for (std::size_t k = 0; k < pc.cnt.size(); ++k) {
    sum += phi6(pc.dd * static_cast<double>(k) / h) * pc.cnt[k];
  }
  sum = 2.0 * sum + static_cast<double>(n) * phi6(0.0);
  return sum * kInvSqrt2Pi /
         (static_cast<double>(n) * static_cast<double>(n - 1) * std::pow(h, 7.0));
}

double robust_scale(const std::vector<double>& samples, double sd) {
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const auto q = [&](double p) {
    const double idx = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (idx - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  const double iqr = q(0.75) - q(0.25);
  double scale = sd;
  if (iqr > 0.0) scale = std::min(scale, iqr / 1.349);
  return scale;
}

}  // namespace

double silverman_bandwidth(const std::vector<double>& samples) {
  const double sd = sample_sd(samples, sample_mean(samples));
  if (!(sd > 0.0)) throw NumericalError("degenerate sample: zero variance");
  const double scale = robust_scale(samples, sd);
  return 0.9 * scale * std::pow(static_cast<double>(samples.size()), -0.2);
}

double sheather_jones_bandwidth(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  const double sd = sample_sd(samples, sample_mean(samples));
  if (!(sd > 0.0)) throw NumericalError("degenerate sample: zero variance");
  const double fallback = silverman_bandwidth(samples);

  const double scale = robust_scale(samples, sd);
  const PairCounts pc = pair_counts(samples, 1000);

  const double a = 1.24 * scale * std::pow(static_cast<double>(n), -1.0 / 7.0);
  const double b = 1.23 * scale * std::pow(static_cast<double>(n), -1.0 / 9.0);
  const double td = -psi6_hat(pc, n, b);
  const double sda = psi4_hat(pc, n, a);
  if (!(td > 0.0) || !(sda > 0.0)) return fallback;

  const double c1 = 1.0 / (2.0 * std::sqrt(std::numbers::pi) * static_cast<double>(n));
  const double alph2 = 1.357 * std::pow(sda / td, 1.0 / 7.0);
  const auto f = [&](double h) {
    const double psi = psi4_hat(pc, n, alph2 * std::pow(h, 5.0 / 7.0));
    if (!(psi > 0.0)) return -h;  // pushes the root search down
    return std::pow(c1 / psi, 0.2) - h;
  };

  double lo = 0.05 * fallback, hi = 2.0 * fallback;
  double flo = f(lo), fhi = f(hi);
  for (int widen = 0; widen < 10 && flo * fhi > 0.0; ++widen) {
    hi *= 1.7;
    fhi = f(hi);
  }
  if (flo * fhi > 0.0) return fallback;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

KdeResult kde_mpv(const std::vector<double>& samples) {
  if (samples.size() < 100) {
    throw DataError("KDE needs at least 100 samples");
  }
  // canonical order makes the estimate independent of sample ordering
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());

  KdeResult res;
  res.bandwidth = sorted.size() >= 1000 ? sheather_jones_bandwidth(sorted)
                                        : silverman_bandwidth(sorted);
  const double lo = sorted.front() - 3.0 * res.bandwidth;
  const double hi = sorted.back() + 3.0 * res.bandwidth;
  constexpr int kGrid = 512;
  res.grid.resize(kGrid);
  res.density.resize(kGrid);
  const double step = (hi - lo) / (kGrid - 1);
  const double norm =
      kInvSqrt2Pi / (res.bandwidth * static_cast<double>(sorted.size()));
  int best = 0;
  for (int g = 0; g < kGrid; ++g) {
    const double xg = lo + g * step;
    double dens = 0.0;
    for (double s : sorted) {
      const double u = (xg - s) / res.bandwidth;
      dens += std::exp(-0.5 * u * u);
    }
    res.grid[g] = xg;
    res.density[g] = dens * norm;
    if (res.density[g] > res.density[best]) best = g;
  }
  res.mpv = res.grid[best];
  return res;
}

double quantile(std::vector<double> samples, double p) {
  if (samples.empty()) throw DataError("quantile of empty sample");
  std::sort(samples.begin(), samples.end());
  const double idx = std::clamp(p, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(idx);
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  return samples[lo] + (idx - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

std::pair<double, double> credible_interval(const std::vector<double>& samples,
                                            double level) {
  if (samples.size() < 100) throw DataError("credible interval needs >= 100 samples");
  const double tail = 0.5 * (1.0 - level);
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const auto q = [&](double p) {
    const double idx = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (idx - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  return {q(tail), q(1.0 - tail)};
}

std::array<double, kThetaDim> PosteriorSummary::mpv_theta() const {
  if (params.size() != kThetaDim) {
    throw DataError("posterior summary does not hold a 12-parameter chain");
  }
  std::array<double, kThetaDim> theta{};
  for (int i = 0; i < kThetaDim; ++i) theta[i] = params[i].mpv;
  return theta;
}

PosteriorSummary summarize_chain(const EnsembleChain& chain, int max_lag) {
  PosteriorSummary summary;
  summary.acceptance_rate = chain.acceptance_rate;
  summary.converged = true;
  for (int p = 0; p < chain.dim; ++p) {
    const std::vector<double> comp = chain.component(p);
    ParamSummary ps;
    ps.mean = sample_mean(comp);
    ps.sd = sample_sd(comp, ps.mean);
    try {
      const KdeResult kde = kde_mpv(comp);
      ps.mpv = kde.mpv;
      const auto [lo, hi] = credible_interval(comp);
      ps.q025 = lo;
      ps.q975 = hi;
      ps.q500 = quantile(comp, 0.5);
      ps.convergence_lag = convergence_lag(comp, max_lag);
    } catch (const NumericalError&) {
      // degenerate (stuck) chain: report the constant, flag non-convergence
      ps.mpv = ps.q025 = ps.q500 = ps.q975 = comp.empty() ? 0.0 : comp.front();
      ps.convergence_lag = -1;
    }
    if (ps.convergence_lag < 0) summary.converged = false;
    summary.params.push_back(ps);
  }
  return summary;
}

double PsdOverlay::band_mean_rel_err(int b, int channel) const {
  double acc = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < f_hz.size(); ++i) {
    if (band[i] != b) continue;
    const double meas = measured[i](channel, channel).real();
    const double recon = reconstructed[i](channel, channel).real();
    if (meas > 0.0) {
      acc += std::abs(recon - meas) / meas;
      ++count;
    }
  }
  return count > 0 ? acc / count : 0.0;
}

PsdOverlay reconstruct_psd(const std::array<double, kThetaDim>& theta_hat,
                           const LikelihoodContext& ctx) {
  const ThetaVector tv = theta_unflatten(theta_hat);
  tv.validate();
  PsdOverlay overlay;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < ctx.omega1.size(); ++i) {
    overlay.f_hz.push_back(ctx.omega1[i] / kTwoPi);
    overlay.band.push_back(1);
    overlay.measured.push_back(ctx.data1[i]);
    overlay.reconstructed.push_back(theoretical_psd(tv, ctx.params, ctx.omega1[i], 1));
  }
  for (std::size_t i = 0; i < ctx.omega2.size(); ++i) {
    overlay.f_hz.push_back(ctx.omega2[i] / kTwoPi);
    overlay.band.push_back(2);
    overlay.measured.push_back(ctx.data2[i]);
    overlay.reconstructed.push_back(theoretical_psd(tv, ctx.params, ctx.omega2[i], 2));
  }
  return overlay;
}

std::array<double, 3> quadratic_fit(const std::vector<double>& x,
                                    const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw DataError("quadratic fit needs at least 3 points");
  }
  Eigen::MatrixXd design(x.size(), 3);
  Eigen::VectorXd rhs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = x[i];
    design(i, 2) = x[i] * x[i];
    rhs(i) = y[i];
  }
  const Eigen::Vector3d c = design.colPivHouseholderQr().solve(rhs);
  return {c(0), c(1), c(2)};
}

VelocityTable fd_vs_velocity_table(
    const std::vector<std::pair<FlowCondition, PosteriorSummary>>& runs,
    const StructuralParams& params) {
  if (runs.empty()) throw DataError("velocity table needs at least one run");
  VelocityTable table;
  for (const auto& [flow, summary] : runs) {
    if (summary.params.size() != kThetaDim) {
      throw DataError("velocity table rows need 12-parameter summaries");
    }
    VelocityRow row;
    row.u = flow.u;
    std::tie(row.k_h, row.k_alpha) = reduced_frequencies(params, flow);
    for (int i = 0; i < 8; ++i) {
      row.mpv[i] = summary.params[i].mpv;
      row.lo[i] = summary.params[i].q025;
      row.hi[i] = summary.params[i].q975;
    }
    table.rows.push_back(row);
  }
  if (table.rows.size() >= 3) {
    std::vector<double> us;
    for (const auto& r : table.rows) us.push_back(r.u);
    for (int i = 0; i < 8; ++i) {
      std::vector<double> ys;
      for (const auto& r : table.rows) ys.push_back(r.mpv[i]);
      table.quadratic_fit.push_back(quadratic_fit(us, ys));
    }
  }
  return table;
}

}  // namespace flutterid
