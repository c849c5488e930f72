#include "flutterid/synth.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

#include "flutterid/aeroelastic.hpp"
#include "flutterid/rng.hpp"

namespace flutterid {

namespace {

// First-order state matrix for state [h, alpha, h', alpha'].
Eigen::Matrix4d state_matrix(const SystemMatrices& sm) {
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a.block<2, 2>(0, 2) = Eigen::Matrix2d::Identity();
  a.block<2, 2>(2, 0) = -sm.stiffness;
  a.block<2, 2>(2, 2) = -sm.damping;
  return a;
}

}  // namespace

void TimeSeries::validate() const {
  if (h.size() != alpha.size()) throw DataError("h and alpha must have equal length");
  if (h.size() < 2) throw DataError("time series needs at least 2 samples");
  if (!(dt > 0.0)) throw DataError("sampling interval must be positive");
}

StabilityReport stability_check(const SystemMatrices& sm) {
  const Eigen::Matrix4d a = state_matrix(sm);
  Eigen::EigenSolver<Eigen::Matrix4d> es(a, /*computeEigenvectors=*/false);
  StabilityReport report;
  report.max_real_part = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    report.eigenvalues[i] = es.eigenvalues()(i);
    report.max_real_part = std::max(report.max_real_part, es.eigenvalues()(i).real());
  }
  report.stable = report.max_real_part < 0.0;
  return report;
}

TimeSeries simulate_response(const StructuralParams& p, const FlutterDerivatives& fds,
                             const FlowCondition& flow, const ForcingSpec& forcing,
                             double duration, double dt) {
  p.validate();
  fds.validate();
  flow.validate();
  if (forcing.s_lift < 0.0 || forcing.s_moment < 0.0) {
    throw ConfigError("force PSD levels must be nonnegative");
  }
  const double f_h = p.omega_h / (2.0 * std::numbers::pi);
  const double f_a = p.omega_alpha / (2.0 * std::numbers::pi);
  if (!(duration >= 100.0 / std::min(f_h, f_a))) {
    throw ConfigError("duration too short: need at least 100 periods of the slowest mode");
  }
  if (!(dt > 0.0) || 1.0 / dt < 20.0 * f_a) {
    throw ConfigError("sampling too coarse: need f_s >= 20 * f_alpha");
  }

  const SystemMatrices sm = system_matrices(to_modified(fds, p), p);
  const StabilityReport stab = stability_check(sm);
  if (!stab.stable) {
    throw NumericalError(
        "coupled system is unstable (max eigenvalue real part " +
        std::to_string(stab.max_real_part) + " 1/s); above flutter-critical speed");
  }

  // Exact ZOH discretization via the augmented matrix exponential:
  // exp([[A, B],[0, 0]] dt) = [[Ad, Bd],[0, I]].
  Eigen::Matrix<double, 6, 6> aug = Eigen::Matrix<double, 6, 6>::Zero();
  aug.block<4, 4>(0, 0) = state_matrix(sm) * dt;
  aug(2, 4) = dt;
  aug(3, 5) = dt;
  const Eigen::Matrix<double, 6, 6> exp_aug = aug.exp();
  const Eigen::Matrix4d ad = exp_aug.block<4, 4>(0, 0);
  const Eigen::Matrix<double, 4, 2> bd = exp_aug.block<4, 2>(0, 4);

  // Discrete white noise with per-sample variance 2*pi*S/dt reproduces a
  // one-sided constant PSD of S under the sqrt(dt/(2*pi*N)) FFT scaling.
  const double sigma_l = std::sqrt(2.0 * std::numbers::pi * forcing.s_lift / dt);
  const double sigma_m = std::sqrt(2.0 * std::numbers::pi * forcing.s_moment / dt);

  const double t_transient =
      10.0 / std::min(p.xi_h * p.omega_h, p.xi_alpha * p.omega_alpha);
  const auto n_transient = static_cast<std::size_t>(std::ceil(t_transient / dt));
  const auto n_out = static_cast<std::size_t>(std::llround(duration / dt));

  Rng rng(forcing.seed);
  TimeSeries ts;
  ts.dt = dt;
  ts.h.reserve(n_out);
  ts.alpha.reserve(n_out);

  Eigen::Vector4d x = Eigen::Vector4d::Zero();
  Eigen::Vector2d f;
  for (std::size_t n = 0; n < n_transient + n_out; ++n) {
    f << sigma_l * rng.normal(), sigma_m * rng.normal();
    x = ad * x + bd * f;
    if (n >= n_transient) {
      ts.h.push_back(x(0));
      ts.alpha.push_back(x(1));
    }
  }
  ts.validate();
  return ts;
}

}  // namespace flutterid
