#pragma once

#include <array>
#include <span>
#include <vector>

#include "flutterid/rng.hpp"
#include "flutterid/spectral.hpp"
#include "flutterid/types.hpp"

namespace flutterid {

/// Independent uniform prior box.  Works for any dimension; the
/// 12-parameter identification problem adds positivity checks on the
/// force-PSD slots.
struct PriorSpec {
  std::vector<double> lower;
  std::vector<double> upper;

  int dim() const { return static_cast<int>(lower.size()); }
  void validate() const;
  void validate_theta_prior() const;  // 12-dim, force-PSD lower bounds > 0
  bool contains(std::span<const double> theta) const;
  /// log density: -sum log(width) inside the box, -inf outside.
  double log_pdf(std::span<const double> theta) const;
  std::vector<double> sample(Rng& rng) const;
  std::vector<double> midpoint() const;
};

/// Measured two-band spectral set plus everything the likelihood needs.
struct LikelihoodContext {
  StructuralParams params;
  int m_segments = 0;
  FrequencyBand band1, band2;
  double d_omega = 0.0;
  std::vector<double> omega1, omega2;          // band ordinate frequencies [rad/s]
  std::vector<SpectralMatrix> data1, data2;    // measured averaged matrices

  static LikelihoodContext from_psd_set(const AveragedPsdSet& set,
                                        const FrequencyBand& band1,
                                        const FrequencyBand& band2,
                                        const StructuralParams& params);
};

/// Full log-PDF of the central complex Wishart distribution (d = 2),
/// constants included.
double wishart_log_pdf(const SpectralMatrix& observed, const SpectralMatrix& expected,
                       int m_segments);

/// Negative log-posterior M sum_k [ln|E(w_k|theta)| + tr(E^-1 S)] - ln p(theta),
/// theta-independent constants dropped.  Returns +infinity for theta outside
/// the prior support or when the expected PSD is not positive definite; that
/// is the rejection signal for the sampler, not an error.
double negative_log_posterior(const ThetaVector& theta, const LikelihoodContext& ctx,
                              const PriorSpec& prior);
double negative_log_posterior(const std::array<double, kThetaDim>& theta,
                              const LikelihoodContext& ctx, const PriorSpec& prior);

/// Flattening order fixed as [A*_1..A*_4, H*_1..H*_4, S_L1, S_M1, S_L2, S_M2].
std::array<double, kThetaDim> theta_flatten(const ThetaVector& theta);
ThetaVector theta_unflatten(const std::array<double, kThetaDim>& v);
std::array<double, kThetaDim> to_theta_array(const std::vector<double>& v);

extern const std::array<const char*, kThetaDim> kThetaNames;

}  // namespace flutterid
