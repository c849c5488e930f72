#include "flutterid/likelihood.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "flutterid/aeroelastic.hpp"

namespace flutterid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The Wishart model presumes a stationary response, which only a stable
// coupled system can produce.  Routh-Hurwitz test on the quartic
// characteristic polynomial of [[0, I], [-K, -C]].
bool hurwitz_stable(const Eigen::Matrix2d& k, const Eigen::Matrix2d& c) {
  const double a3 = c(0, 0) + c(1, 1);
  const double a2 = k(0, 0) + k(1, 1) + c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0);
  const double a1 = c(0, 0) * k(1, 1) + c(1, 1) * k(0, 0) - c(0, 1) * k(1, 0) -
                    c(1, 0) * k(0, 1);
  const double a0 = k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0);
  if (!(a3 > 0.0) || !(a2 > 0.0) || !(a1 > 0.0) || !(a0 > 0.0)) return false;
  return a3 * a2 * a1 > a1 * a1 + a3 * a3 * a0;
}

// ln|E| + tr(E^-1 S) for one band ordinate, or +inf when E is not PD.
// E = H diag(sl, sm) H* has det |det H|^2 sl sm, so positive definiteness
// reduces to the FRF being regular.
double bin_contribution(const Eigen::Matrix2d& stiffness, const Eigen::Matrix2d& damping,
                        double omega, double sl, double sm, const SpectralMatrix& s) {
  const std::complex<double> a11(stiffness(0, 0) - omega * omega,
                                 omega * damping(0, 0));
  const std::complex<double> a12(stiffness(0, 1), omega * damping(0, 1));
  const std::complex<double> a21(stiffness(1, 0), omega * damping(1, 0));
  const std::complex<double> a22(stiffness(1, 1) - omega * omega,
                                 omega * damping(1, 1));
  const std::complex<double> det_a = a11 * a22 - a12 * a21;
  const double det_a2 = std::norm(det_a);
  const double scale = (std::norm(a11) + std::norm(a12)) * (std::norm(a21) + std::norm(a22));
  if (!(det_a2 > 1e-28 * std::max(scale, 1e-300))) return kInf;

  // H = A^-1 (row-major closed form)
  const std::complex<double> h11 = a22 / det_a;
  const std::complex<double> h12 = -a12 / det_a;
  const std::complex<double> h21 = -a21 / det_a;
  const std::complex<double> h22 = a11 / det_a;

  const double e11 = sl * std::norm(h11) + sm * std::norm(h12);
  const double e22 = sl * std::norm(h21) + sm * std::norm(h22);
  const std::complex<double> e12 = sl * h11 * std::conj(h21) + sm * h12 * std::conj(h22);
  const double det_e = sl * sm / det_a2;
  if (!(det_e > 0.0) || !std::isfinite(det_e)) return kInf;

  const double s11 = s(0, 0).real();
  const double s22 = s(1, 1).real();
  const std::complex<double> s12 = s(0, 1);
  const double trace_term =
      (e22 * s11 + e11 * s22 - 2.0 * (std::conj(e12) * s12).real()) / det_e;
  return std::log(det_e) + trace_term;
}

}  // namespace

const std::array<const char*, kThetaDim> kThetaNames = {
    "Astar1", "Astar2", "Astar3", "Astar4", "Hstar1", "Hstar2",
    "Hstar3", "Hstar4", "SL1",    "SM1",    "SL2",    "SM2"};

void PriorSpec::validate() const {
  if (lower.size() != upper.size() || lower.empty()) {
    throw ConfigError("prior bounds must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      throw ConfigError("prior lower bound must be below upper bound (component " +
                        std::to_string(i) + ")");
    }
  }
}

void PriorSpec::validate_theta_prior() const {
  validate();
  if (dim() != kThetaDim) throw ConfigError("theta prior must have 12 components");
  for (int i = 8; i < kThetaDim; ++i) {
    if (!(lower[i] > 0.0)) {
      throw ConfigError("force-PSD prior lower bounds must be positive");
    }
  }
}

bool PriorSpec::contains(std::span<const double> theta) const {
  if (theta.size() != lower.size()) return false;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] < lower[i] || theta[i] > upper[i]) return false;
  }
  return true;
}

double PriorSpec::log_pdf(std::span<const double> theta) const {
  if (!contains(theta)) return -kInf;
  double lp = 0.0;
  for (std::size_t i = 0; i < lower.size(); ++i) lp -= std::log(upper[i] - lower[i]);
  return lp;
}

std::vector<double> PriorSpec::sample(Rng& rng) const {
  std::vector<double> x(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    x[i] = lower[i] + (upper[i] - lower[i]) * rng.uniform();
  }
  return x;
}

std::vector<double> PriorSpec::midpoint() const {
  std::vector<double> x(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) x[i] = 0.5 * (lower[i] + upper[i]);
  return x;
}

LikelihoodContext LikelihoodContext::from_psd_set(const AveragedPsdSet& set,
                                                  const FrequencyBand& band1,
                                                  const FrequencyBand& band2,
                                                  const StructuralParams& params) {
  params.validate();
  if (set.m_segments < 2) throw ConfigError("Wishart model needs M >= 2 segments");
  if (band1.k_lo < 1 || band1.k_lo > band1.k_hi || band2.k_lo > band2.k_hi ||
      band2.k_hi >= set.grid.n1 || band1.k_hi >= band2.k_lo) {
    throw ConfigError("bands must be ordered, disjoint and inside the grid");
  }
  LikelihoodContext ctx;
  ctx.params = params;
  ctx.m_segments = set.m_segments;
  ctx.band1 = band1;
  ctx.band2 = band2;
  ctx.d_omega = set.grid.d_omega;
  for (int k = band1.k_lo; k <= band1.k_hi; ++k) {
    ctx.omega1.push_back(set.grid.omega(k));
    ctx.data1.push_back(set.matrices[k]);
  }
  for (int k = band2.k_lo; k <= band2.k_hi; ++k) {
    ctx.omega2.push_back(set.grid.omega(k));
    ctx.data2.push_back(set.matrices[k]);
  }
  return ctx;
}

double wishart_log_pdf(const SpectralMatrix& observed, const SpectralMatrix& expected,
                       int m_segments) {
  constexpr int d = 2;
  const int m = m_segments;
  if (m < d) throw ConfigError("complex Wishart requires M >= d = 2");

  const double det_s =
      observed(0, 0).real() * observed(1, 1).real() - std::norm(observed(0, 1));
  const double det_e =
      expected(0, 0).real() * expected(1, 1).real() - std::norm(expected(0, 1));
  if (!(det_e > 1e-300)) throw NumericalError("expected spectral matrix is singular");

  const double trace =
      (expected(1, 1).real() * observed(0, 0).real() +
       expected(0, 0).real() * observed(1, 1).real() -
       2.0 * (std::conj(expected(0, 1)) * observed(0, 1)).real()) /
      det_e;

  double lp = -0.5 * d * (d - 1) * std::log(std::numbers::pi);
  lp += (m - d + d * d) * std::log(static_cast<double>(m));
  // |S|^(M-d): exponent zero at M = d even for singular S
  if (m > d) lp += (m - d) * std::log(det_s);
  lp -= std::lgamma(static_cast<double>(m));      // ln (M-1)!
  lp -= std::lgamma(static_cast<double>(m - 1));  // ln (M-2)!
  lp -= m * std::log(det_e);
  lp -= m * trace;
  return lp;
}

double negative_log_posterior(const std::array<double, kThetaDim>& theta,
                              const LikelihoodContext& ctx, const PriorSpec& prior) {
  const double log_prior = prior.log_pdf(theta);
  if (!std::isfinite(log_prior)) return kInf;

  const ThetaVector tv = theta_unflatten(theta);
  const SystemMatrices sm = system_matrices(to_modified(tv.fds, ctx.params), ctx.params);
  if (!hurwitz_stable(sm.stiffness, sm.damping)) return kInf;

  double acc = 0.0;
  for (std::size_t i = 0; i < ctx.omega1.size(); ++i) {
    acc += bin_contribution(sm.stiffness, sm.damping, ctx.omega1[i], tv.s_lift1,
                            tv.s_moment1, ctx.data1[i]);
    if (!std::isfinite(acc)) return kInf;
  }
  for (std::size_t i = 0; i < ctx.omega2.size(); ++i) {
    acc += bin_contribution(sm.stiffness, sm.damping, ctx.omega2[i], tv.s_lift2,
                            tv.s_moment2, ctx.data2[i]);
    if (!std::isfinite(acc)) return kInf;
  }
  return ctx.m_segments * acc - log_prior;
}

double negative_log_posterior(const ThetaVector& theta, const LikelihoodContext& ctx,
                              const PriorSpec& prior) {
  return negative_log_posterior(theta_flatten(theta), ctx, prior);
}

std::array<double, kThetaDim> theta_flatten(const ThetaVector& t) {
  return {t.fds.a1, t.fds.a2, t.fds.a3, t.fds.a4, t.fds.h1, t.fds.h2,
          t.fds.h3, t.fds.h4, t.s_lift1, t.s_moment1, t.s_lift2, t.s_moment2};
}

ThetaVector theta_unflatten(const std::array<double, kThetaDim>& v) {
  ThetaVector t;
  t.fds.a1 = v[0];
  t.fds.a2 = v[1];
  t.fds.a3 = v[2];
  t.fds.a4 = v[3];
  t.fds.h1 = v[4];
  t.fds.h2 = v[5];
  t.fds.h3 = v[6];
  t.fds.h4 = v[7];
  t.s_lift1 = v[8];
  t.s_moment1 = v[9];
  t.s_lift2 = v[10];
  t.s_moment2 = v[11];
  return t;
}

std::array<double, kThetaDim> to_theta_array(const std::vector<double>& v) {
  if (v.size() != kThetaDim) throw DataError("theta vector must have 12 components");
  std::array<double, kThetaDim> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

}  // namespace flutterid
