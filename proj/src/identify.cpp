#include "flutterid/identify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flutterid/aeroelastic.hpp"
#include "flutterid/csv.hpp"
#include "flutterid/theodorsen.hpp"

using nlohmann::json;

namespace flutterid {

namespace {

double band_mean_trace(const std::vector<SpectralMatrix>& data) {
  double acc = 0.0;
  for (const auto& s : data) acc += s(0, 0).real() + s(1, 1).real();
  return acc / static_cast<double>(data.size());
}

double band_mean_diag(const std::vector<SpectralMatrix>& data, int ch) {
  double acc = 0.0;
  for (const auto& s : data) acc += s(ch, ch).real();
  return acc / static_cast<double>(data.size());
}

}  // namespace

PriorSpec default_theta_prior(const LikelihoodContext& ctx, const FlowCondition& flow) {
  const auto [kh, ka] = reduced_frequencies(ctx.params, flow);
  const FlutterDerivatives guess = flat_plate_fds_mixed(0.5 * kh, 0.5 * ka);
  const std::array<double, 8> g = {guess.a1, guess.a2, guess.a3, guess.a4,
                                   guess.h1, guess.h2, guess.h3, guess.h4};
  PriorSpec prior;
  prior.lower.resize(kThetaDim);
  prior.upper.resize(kThetaDim);
  for (int i = 0; i < 8; ++i) {
    const double bound = 50.0 * std::max(1.0, std::abs(g[i]));
    prior.lower[i] = -bound;
    prior.upper[i] = bound;
  }
  const double t1 = band_mean_trace(ctx.data1);
  const double t2 = band_mean_trace(ctx.data2);
  if (!(t1 > 0.0) || !(t2 > 0.0)) {
    throw DataError("measured band PSDs have nonpositive trace; cannot scale prior");
  }
  // displacement-PSD trace rescaled to force-PSD units through the w^4 of
  // the band centre (|H|^2 ~ 1/w^4), so the box lands on the right decade
  const double w1 = 0.5 * (ctx.omega1.front() + ctx.omega1.back());
  const double w2 = 0.5 * (ctx.omega2.front() + ctx.omega2.back());
  for (int i = 0; i < 2; ++i) {
    const double w = i == 0 ? w1 : w2;
    const double scale = (i == 0 ? t1 : t2) * w * w * w * w;
    prior.lower[8 + 2 * i] = 1e-8 * scale;
    prior.upper[8 + 2 * i] = 1e2 * scale;
    prior.lower[9 + 2 * i] = 1e-8 * scale;
    prior.upper[9 + 2 * i] = 1e2 * scale;
  }
  prior.validate_theta_prior();
  return prior;
}

std::vector<double> default_start(const LikelihoodContext& ctx,
                                  const FlowCondition& flow, const PriorSpec& prior) {
  const auto [kh, ka] = reduced_frequencies(ctx.params, flow);
  const FlutterDerivatives guess = flat_plate_fds_mixed(0.5 * kh, 0.5 * ka);
  const SystemMatrices sm = system_matrices(to_modified(guess, ctx.params), ctx.params);

  // invert the band-mean diagonal spectra through the guess FRF
  const auto psd_start = [&](const std::vector<double>& omegas,
                             const std::vector<SpectralMatrix>& data, int ch) {
    double mean_h2 = 0.0;
    for (double w : omegas) {
      const auto h = frf_if_regular(sm, w);
      if (!h) return 0.0;
      mean_h2 += std::norm((*h)(ch, ch));
    }
    mean_h2 /= static_cast<double>(omegas.size());
    return mean_h2 > 0.0 ? band_mean_diag(data, ch) / mean_h2 : 0.0;
  };

  std::vector<double> start(kThetaDim);
  start[0] = guess.a1;
  start[1] = guess.a2;
  start[2] = guess.a3;
  start[3] = guess.a4;
  start[4] = guess.h1;
  start[5] = guess.h2;
  start[6] = guess.h3;
  start[7] = guess.h4;
  start[8] = psd_start(ctx.omega1, ctx.data1, 0);
  start[9] = psd_start(ctx.omega1, ctx.data1, 1);
  start[10] = psd_start(ctx.omega2, ctx.data2, 0);
  start[11] = psd_start(ctx.omega2, ctx.data2, 1);
  for (int i = 0; i < kThetaDim; ++i) {
    const double width = prior.upper[i] - prior.lower[i];
    start[i] = std::clamp(start[i], prior.lower[i] + 1e-6 * width,
                          prior.upper[i] - 1e-6 * width);
  }
  return start;
}

FlutterDerivatives simulation_fds(const RunConfig& cfg) {
  if (!cfg.simulate.present) {
    throw ConfigError("config has no 'simulate' section");
  }
  if (!cfg.simulate.fds_theodorsen) return cfg.simulate.fds;
  const auto [kh, ka] = reduced_frequencies(cfg.structural, cfg.flow);
  return flat_plate_fds_mixed(0.5 * kh, 0.5 * ka);
}

IdentifyResult identify_run(const RunConfig& cfg, const TimeSeries& ts) {
  const AveragedPsdSet psd = averaged_psd(ts, cfg.m_segments);
  const FrequencyBand band1 = band_indices(psd.grid, cfg.band1_lo_hz, cfg.band1_hi_hz);
  const FrequencyBand band2 = band_indices(psd.grid, cfg.band2_lo_hz, cfg.band2_hi_hz);
  const LikelihoodContext ctx =
      LikelihoodContext::from_psd_set(psd, band1, band2, cfg.structural);

  PriorSpec prior;
  if (cfg.prior_lower) {
    prior.lower = *cfg.prior_lower;
    prior.upper = *cfg.prior_upper;
    prior.validate_theta_prior();
  } else {
    prior = default_theta_prior(ctx, cfg.flow);
  }

  std::vector<double> start =
      cfg.start ? *cfg.start : default_start(ctx, cfg.flow, prior);
  if (!prior.contains(start)) {
    throw ConfigError("sampler start point lies outside the prior support");
  }

  const LogDensity objective = [&ctx, &prior](const std::vector<double>& theta) {
    return -negative_log_posterior(to_theta_array(theta), ctx, prior);
  };

  IdentifyResult res;
  res.chain = run_ensemble(objective, prior, cfg.sampler, start);
  res.summary = summarize_chain(res.chain, cfg.sampler.max_lag);
  res.overlay = reconstruct_psd(res.summary.mpv_theta(), ctx);
  res.prior = prior;
  res.start = start;
  res.band1 = band1;
  res.band2 = band2;
  res.d_omega = psd.grid.d_omega;
  res.converged = res.summary.converged;
  res.acceptance_warning =
      !(res.chain.acceptance_rate > 0.05 && res.chain.acceptance_rate < 0.9);
  return res;
}

json identify_result_json(const IdentifyResult& res, const RunConfig& cfg) {
  json params = json::object();
  for (int i = 0; i < kThetaDim; ++i) {
    const ParamSummary& p = res.summary.params[i];
    params[kThetaNames[i]] = {{"mpv", p.mpv},   {"mean", p.mean}, {"sd", p.sd},
                              {"q025", p.q025}, {"q500", p.q500}, {"q975", p.q975}};
  }
  json lags = json::object();
  for (int i = 0; i < kThetaDim; ++i) {
    lags[kThetaNames[i]] = res.summary.params[i].convergence_lag;
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  json bands = {
      {"d_omega_rad_s", res.d_omega},
      {"m_segments", cfg.m_segments},
      {"band1",
       {{"k_lo", res.band1.k_lo},
        {"k_hi", res.band1.k_hi},
        {"f_lo_hz", res.band1.k_lo * res.d_omega / kTwoPi},
        {"f_hi_hz", res.band1.k_hi * res.d_omega / kTwoPi}}},
      {"band2",
       {{"k_lo", res.band2.k_lo},
        {"k_hi", res.band2.k_hi},
        {"f_lo_hz", res.band2.k_lo * res.d_omega / kTwoPi},
        {"f_hi_hz", res.band2.k_hi * res.d_omega / kTwoPi}}}};
  json diag = {{"acceptance_rate", res.chain.acceptance_rate},
               {"converged", res.converged},
               {"acceptance_warning", res.acceptance_warning},
               {"convergence_lags", lags}};
  json psd_fit = {{"band1_rel_err_h", res.overlay.band_mean_rel_err(1, 0)},
                  {"band1_rel_err_alpha", res.overlay.band_mean_rel_err(1, 1)},
                  {"band2_rel_err_h", res.overlay.band_mean_rel_err(2, 0)},
                  {"band2_rel_err_alpha", res.overlay.band_mean_rel_err(2, 1)}};
  return json{{"params", params},
              {"diagnostics", diag},
              {"bands", bands},
              {"psd_fit", psd_fit},
              {"prior", {{"lower", res.prior.lower}, {"upper", res.prior.upper}}},
              {"start", res.start},
              {"seed", cfg.sampler.seed},
              {"config", cfg.raw}};
}

void write_chain_csv(const std::string& path, const EnsembleChain& chain) {
  std::string header = "walker";
  for (const char* name : kThetaNames) header += std::string(",") + name;
  header += ",log_posterior";
  std::vector<std::vector<double>> rows;
  rows.reserve(chain.samples.size());
  for (std::size_t i = 0; i < chain.samples.size(); ++i) {
    std::vector<double> row;
    row.reserve(kThetaDim + 2);
    row.push_back(chain.walker[i]);
    for (double v : chain.samples[i]) row.push_back(v);
    row.push_back(chain.log_post[i]);
    rows.push_back(std::move(row));
  }
  write_table_csv(path, header, rows);
}

void write_overlay_csv(const std::string& path, const PsdOverlay& overlay) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < overlay.f_hz.size(); ++i) {
    const SpectralMatrix& m = overlay.measured[i];
    const SpectralMatrix& r = overlay.reconstructed[i];
    rows.push_back({overlay.f_hz[i], static_cast<double>(overlay.band[i]),
                    m(0, 0).real(), m(0, 1).real(), m(0, 1).imag(), m(1, 1).real(),
                    r(0, 0).real(), r(0, 1).real(), r(0, 1).imag(), r(1, 1).real()});
  }
  write_table_csv(path,
                  "f_hz,band,S_hh,Re_S_ha,Im_S_ha,S_aa,"
                  "S_hh_mpv,Re_S_ha_mpv,Im_S_ha_mpv,S_aa_mpv",
                  rows);
}

}  // namespace flutterid
