#include "flutterid/aeroelastic.hpp"

#include <cmath>

namespace flutterid {

namespace {

bool all_finite(const FlutterDerivatives& f) {
  return std::isfinite(f.h1) && std::isfinite(f.h2) && std::isfinite(f.h3) &&
         std::isfinite(f.h4) && std::isfinite(f.a1) && std::isfinite(f.a2) &&
         std::isfinite(f.a3) && std::isfinite(f.a4);
}

}  // namespace

void StructuralParams::validate() const {
  if (!(mass > 0.0) || !(inertia > 0.0) || !(omega_h > 0.0) ||
      !(omega_alpha > 0.0) || !(xi_h > 0.0) || !(xi_alpha > 0.0) ||
      !(width > 0.0) || !(rho > 0.0)) {
    throw ConfigError("structural parameters must all be strictly positive");
  }
  if (xi_h >= 1.0 || xi_alpha >= 1.0) {
    throw ConfigError("damping ratios must be below 1 (sub-critical)");
  }
}

void FlowCondition::validate() const {
  if (!(u > 0.0)) throw ConfigError("mean wind speed must be positive");
}

void FlutterDerivatives::validate() const {
  if (!all_finite(*this)) throw ConfigError("flutter derivatives must be finite");
}

void ThetaVector::validate() const {
  fds.validate();
  if (!(s_lift1 > 0.0) || !(s_moment1 > 0.0) || !(s_lift2 > 0.0) ||
      !(s_moment2 > 0.0)) {
    throw ConfigError("force PSD levels must be strictly positive");
  }
}

bool is_hermitian(const SpectralMatrix& s, double rel_tol) {
  const double scale = s.norm();
  return (s - s.adjoint()).norm() <= rel_tol * std::max(scale, 1e-300);
}

double min_eigenvalue(const SpectralMatrix& s) {
  const double a = s(0, 0).real();
  const double b = s(1, 1).real();
  const double c2 = std::norm(s(0, 1));
  const double mid = 0.5 * (a + b);
  const double rad = std::sqrt(0.25 * (a - b) * (a - b) + c2);
  return mid - rad;
}

std::pair<double, double> reduced_frequencies(const StructuralParams& p,
                                              const FlowCondition& flow) {
  p.validate();
  flow.validate();
  return {p.omega_h * p.width / flow.u, p.omega_alpha * p.width / flow.u};
}

ModifiedFDs to_modified(const FlutterDerivatives& fds, const StructuralParams& p) {
  const double b2 = p.width * p.width;
  const double b3 = b2 * p.width;
  const double b4 = b3 * p.width;
  ModifiedFDs m;
  m.h1 = p.rho * b2 * p.omega_h / p.mass * fds.h1;
  m.h2 = p.rho * b3 * p.omega_alpha / p.mass * fds.h2;
  m.h3 = p.rho * b3 * p.omega_alpha * p.omega_alpha / p.mass * fds.h3;
  m.h4 = p.rho * b2 * p.omega_h * p.omega_h / p.mass * fds.h4;
  m.a1 = p.rho * b3 * p.omega_h / p.inertia * fds.a1;
  m.a2 = p.rho * b4 * p.omega_alpha / p.inertia * fds.a2;
  m.a3 = p.rho * b4 * p.omega_alpha * p.omega_alpha / p.inertia * fds.a3;
  m.a4 = p.rho * b3 * p.omega_h * p.omega_h / p.inertia * fds.a4;
  return m;
}

FlutterDerivatives from_modified(const ModifiedFDs& mfds, const StructuralParams& p) {
  const double b2 = p.width * p.width;
  const double b3 = b2 * p.width;
  const double b4 = b3 * p.width;
  FlutterDerivatives f;
  f.h1 = mfds.h1 * p.mass / (p.rho * b2 * p.omega_h);
  f.h2 = mfds.h2 * p.mass / (p.rho * b3 * p.omega_alpha);
  f.h3 = mfds.h3 * p.mass / (p.rho * b3 * p.omega_alpha * p.omega_alpha);
  f.h4 = mfds.h4 * p.mass / (p.rho * b2 * p.omega_h * p.omega_h);
  f.a1 = mfds.a1 * p.inertia / (p.rho * b3 * p.omega_h);
  f.a2 = mfds.a2 * p.inertia / (p.rho * b4 * p.omega_alpha);
  f.a3 = mfds.a3 * p.inertia / (p.rho * b4 * p.omega_alpha * p.omega_alpha);
  f.a4 = mfds.a4 * p.inertia / (p.rho * b3 * p.omega_h * p.omega_h);
  return f;
}

SystemMatrices system_matrices(const ModifiedFDs& m, const StructuralParams& p) {
  SystemMatrices sm;
  sm.mass = Eigen::Matrix2d::Identity();
  sm.damping << 2.0 * p.xi_h * p.omega_h - m.h1, -m.h2,
                -m.a1, 2.0 * p.xi_alpha * p.omega_alpha - m.a2;
  sm.stiffness << p.omega_h * p.omega_h - m.h4, -m.h3,
                  -m.a4, p.omega_alpha * p.omega_alpha - m.a3;
  return sm;
}

std::optional<Eigen::Matrix2cd> frf_if_regular(const SystemMatrices& sm,
                                               double omega) noexcept {
  const std::complex<double> j(0.0, 1.0);
  Eigen::Matrix2cd a = sm.stiffness.cast<std::complex<double>>() -
                       omega * omega * sm.mass.cast<std::complex<double>>() +
                       j * omega * sm.damping.cast<std::complex<double>>();
  const std::complex<double> det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const double scale = std::sqrt(std::norm(a(0, 0)) + std::norm(a(0, 1))) *
                       std::sqrt(std::norm(a(1, 0)) + std::norm(a(1, 1)));
  if (std::abs(det) < 1e-14 * std::max(scale, 1e-300)) return std::nullopt;
  Eigen::Matrix2cd h;
  h << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
  h /= det;
  return h;
}

Eigen::Matrix2cd frf(const SystemMatrices& sm, double omega) {
  auto h = frf_if_regular(sm, omega);
  if (!h) {
    throw NumericalError("frequency response matrix is singular at omega=" +
                         std::to_string(omega) + " rad/s");
  }
  return *h;
}

SpectralMatrix response_psd(const SystemMatrices& sm, double omega,
                            double s_lift, double s_moment) {
  const Eigen::Matrix2cd h = frf(sm, omega);
  SpectralMatrix s;
  const double s11 = s_lift * std::norm(h(0, 0)) + s_moment * std::norm(h(0, 1));
  const double s22 = s_lift * std::norm(h(1, 0)) + s_moment * std::norm(h(1, 1));
  const std::complex<double> s12 =
      s_lift * h(0, 0) * std::conj(h(1, 0)) + s_moment * h(0, 1) * std::conj(h(1, 1));
  s << s11, s12, std::conj(s12), s22;
  return s;
}

SpectralMatrix theoretical_psd(const ThetaVector& theta, const StructuralParams& p,
                               double omega, int band) {
  if (band != 1 && band != 2) throw ConfigError("band must be 1 or 2");
  const double sl = band == 1 ? theta.s_lift1 : theta.s_lift2;
  const double sm = band == 1 ? theta.s_moment1 : theta.s_moment2;
  return response_psd(system_matrices(to_modified(theta.fds, p), p), omega, sl, sm);
}

}  // namespace flutterid
