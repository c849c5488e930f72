#include "flutterid/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include "flutterid/aeroelastic.hpp"
#include "flutterid/csv.hpp"
#include "flutterid/identify.hpp"
#include "flutterid/theodorsen.hpp"

using nlohmann::json;

namespace flutterid::cli {

namespace {

struct CommonOpts {
  std::string config_path;
  std::string data_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::string chains_path;
  std::string psd_path;
  std::string acf_path;
  bool verbose = false;
};

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw DataError("write failed for '" + path + "'");
}

int cmd_simulate(const CommonOpts& opts) {
  RunConfig cfg = load_config_file(opts.config_path);
  if (!cfg.simulate.present) {
    throw ConfigError("config has no 'simulate' section");
  }
  if (!(cfg.simulate.duration_s > 0.0)) {
    throw ConfigError("simulate.duration_s must be positive (empty series)");
  }
  const std::uint64_t seed = opts.seed.value_or(cfg.sampler.seed);
  const FlutterDerivatives fds = simulation_fds(cfg);

  ForcingSpec forcing{cfg.simulate.s_lift, cfg.simulate.s_moment, seed};
  const TimeSeries ts = simulate_response(cfg.structural, fds, cfg.flow, forcing,
                                          cfg.simulate.duration_s, cfg.simulate.dt_s);
  write_time_series_csv(opts.out_path, ts);

  json meta = {{"config", cfg.raw},
               {"seed", seed},
               {"samples", ts.size()},
               {"dt_s", ts.dt},
               {"fds_used",
                {{"Hstar1", fds.h1},
                 {"Hstar2", fds.h2},
                 {"Hstar3", fds.h3},
                 {"Hstar4", fds.h4},
                 {"Astar1", fds.a1},
                 {"Astar2", fds.a2},
                 {"Astar3", fds.a3},
                 {"Astar4", fds.a4}}}};
  write_json_file(opts.out_path + ".meta.json", meta);
  if (opts.verbose) {
    std::cerr << "simulate: wrote " << ts.size() << " samples to " << opts.out_path
              << "\n";
  }
  return kExitOk;
}

int cmd_identify(const CommonOpts& opts) {
  RunConfig cfg = load_config_file(opts.config_path);
  if (opts.seed) cfg.sampler.seed = *opts.seed;
  std::optional<double> expected_dt = cfg.data_dt_s;
  if (!expected_dt && cfg.simulate.present) expected_dt = cfg.simulate.dt_s;
  const TimeSeries ts = read_time_series_csv(opts.data_path, expected_dt);

  const IdentifyResult res = identify_run(cfg, ts);
  write_json_file(opts.out_path, identify_result_json(res, cfg));
  if (!opts.chains_path.empty()) write_chain_csv(opts.chains_path, res.chain);
  if (!opts.psd_path.empty()) write_overlay_csv(opts.psd_path, res.overlay);

  if (res.acceptance_warning) {
    std::cerr << "warning: acceptance rate " << res.chain.acceptance_rate
              << " outside (0.05, 0.9); check prior bounds and start point\n";
  }
  if (opts.verbose) {
    std::cerr << "identify: acceptance " << res.chain.acceptance_rate << ", "
              << res.chain.samples.size() << " retained samples, converged="
              << (res.converged ? "yes" : "no") << "\n";
  }
  if (!res.converged) {
    std::cerr << "warning: autocorrelation convergence criterion unmet; "
                 "results written but flagged\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int cmd_theodorsen(const CommonOpts& opts, std::vector<double> k_values,
                   const std::vector<double>& f_hz, double u, double b) {
  if (!f_hz.empty()) {
    if (!(u > 0.0) || !(b > 0.0)) {
      throw ConfigError("theodorsen: --f requires --u and --b");
    }
    for (double f : f_hz) {
      k_values.push_back(std::numbers::pi * f * b / u);  // k = omega B / (2U)
    }
  }
  if (k_values.empty()) {
    throw ConfigError("theodorsen: give at least one --k or (--u, --b, --f)");
  }
  std::vector<std::vector<double>> rows;
  for (double k : k_values) {
    if (!(k > 0.0)) throw ConfigError("theodorsen: k grid points must be positive");
    const TheodorsenValue c = theodorsen_fg(k);
    const FlutterDerivatives fd = flat_plate_fds(k);
    rows.push_back({k, c.f, c.g, fd.h1, fd.h2, fd.h3, fd.h4, fd.a1, fd.a2, fd.a3,
                    fd.a4});
  }
  write_table_csv(opts.out_path,
                  "k,F,G,Hstar1,Hstar2,Hstar3,Hstar4,Astar1,Astar2,Astar3,Astar4",
                  rows);
  return kExitOk;
}

int cmd_diagnose(const CommonOpts& opts, int max_lag) {
  const CsvTable table = read_table_csv(opts.data_path);
  if (table.rows.size() < 8) {
    throw DataError(opts.data_path + ": chain too short to diagnose");
  }
  // parameter columns: everything except bookkeeping
  std::vector<int> param_cols;
  std::vector<std::string> param_names;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (table.columns[c] == "walker" || table.columns[c] == "log_posterior") continue;
    param_cols.push_back(static_cast<int>(c));
    param_names.push_back(table.columns[c]);
  }
  if (param_cols.empty()) throw DataError(opts.data_path + ": no parameter columns");

  json lags = json::object();
  bool converged = true;
  std::vector<std::vector<double>> acf_rows;
  int usable_lag = std::min<int>(max_lag, static_cast<int>(table.rows.size() - 1) / 4 - 1);
  usable_lag = std::max(usable_lag, 1);
  acf_rows.resize(usable_lag + 1);
  for (int lag = 0; lag <= usable_lag; ++lag) acf_rows[lag].push_back(lag);

  for (std::size_t p = 0; p < param_cols.size(); ++p) {
    std::vector<double> chain;
    chain.reserve(table.rows.size());
    for (const auto& row : table.rows) chain.push_back(row[param_cols[p]]);
    try {
      const auto rho = chain_autocorrelation(chain, usable_lag);
      for (int lag = 0; lag <= usable_lag; ++lag) acf_rows[lag].push_back(rho[lag]);
      int lag_conv = -1;
      for (int lag = 1; lag <= usable_lag; ++lag) {
        if (std::abs(rho[lag]) < 0.05) {
          lag_conv = lag;
          break;
        }
      }
      lags[param_names[p]] = lag_conv;
      if (lag_conv < 0) converged = false;
    } catch (const NumericalError&) {
      lags[param_names[p]] = {{"error", "zero variance (stuck chain)"}};
      for (int lag = 0; lag <= usable_lag; ++lag) acf_rows[lag].push_back(0.0);
      converged = false;
    }
  }

  std::string header = "lag";
  for (const auto& name : param_names) header += "," + name;
  const std::string acf_path =
      opts.acf_path.empty() ? opts.out_path + ".acf.csv" : opts.acf_path;
  write_table_csv(acf_path, header, acf_rows);

  json report = {{"verdict", converged ? "converged" : "not converged"},
                 {"max_lag", usable_lag},
                 {"convergence_lags", lags},
                 {"samples", table.rows.size()},
                 {"acf_csv", acf_path}};
  write_json_file(opts.out_path, report);
  if (opts.verbose) {
    std::cerr << "diagnose: " << (converged ? "converged" : "not converged") << "\n";
  }
  return converged ? kExitOk : kExitNonConvergence;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Bayesian spectral identification of bridge flutter derivatives"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<double> k_values, f_hz;
  double u = 0.0, b = 0.0;
  int max_lag = 200;

  auto* sim = app.add_subcommand("simulate",
                                 "generate a synthetic buffeting displacement record");
  sim->add_option("--config", opts.config_path, "JSON run configuration")->required();
  sim->add_option("--out", opts.out_path, "output CSV (t,h,alpha)")->required();
  sim->add_option("--seed", opts.seed, "RNG seed (overrides config)");
  sim->add_flag("--verbose", opts.verbose);

  auto* ident = app.add_subcommand("identify",
                                   "identify flutter derivatives from a record");
  ident->add_option("--config", opts.config_path, "JSON run configuration")->required();
  ident->add_option("--data", opts.data_path, "input CSV (t,h,alpha or h,alpha)")
      ->required();
  ident->add_option("--out", opts.out_path, "result JSON")->required();
  ident->add_option("--seed", opts.seed, "RNG seed (overrides config)");
  ident->add_option("--chains", opts.chains_path, "optional thinned-chain CSV dump");
  ident->add_option("--psd-out", opts.psd_path,
                    "optional measured-vs-reconstructed PSD CSV");
  ident->add_flag("--verbose", opts.verbose);

  auto* theo = app.add_subcommand("theodorsen",
                                  "tabulate flat-plate flutter derivatives");
  theo->add_option("--out", opts.out_path, "output CSV")->required();
  theo->add_option("--k", k_values, "half reduced frequency grid points");
  theo->add_option("--f", f_hz, "frequencies [Hz]; converted with --u and --b");
  theo->add_option("--u", u, "mean wind speed [m/s]");
  theo->add_option("--b", b, "section width [m]");

  auto* diag = app.add_subcommand("diagnose", "chain convergence diagnostics");
  diag->add_option("--data", opts.data_path, "chain CSV")->required();
  diag->add_option("--out", opts.out_path, "report JSON")->required();
  diag->add_option("--acf-out", opts.acf_path, "autocorrelation CSV");
  diag->add_option("--max-lag", max_lag, "autocorrelation horizon");
  diag->add_flag("--verbose", opts.verbose);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(opts);
    if (ident->parsed()) return cmd_identify(opts);
    if (theo->parsed()) return cmd_theodorsen(opts, k_values, f_hz, u, b);
    if (diag->parsed()) return cmd_diagnose(opts, max_lag);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("flutterid");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace flutterid::cli
