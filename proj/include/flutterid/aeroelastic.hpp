#pragma once

#include <optional>
#include <utility>

#include "flutterid/types.hpp"

namespace flutterid {

/// Reduced frequencies (K_h, K_alpha) = omega_i * B / U.
std::pair<double, double> reduced_frequencies(const StructuralParams& p,
                                              const FlowCondition& flow);

ModifiedFDs to_modified(const FlutterDerivatives& fds, const StructuralParams& p);

FlutterDerivatives from_modified(const ModifiedFDs& mfds, const StructuralParams& p);

SystemMatrices system_matrices(const ModifiedFDs& mfds, const StructuralParams& p);

/// Frequency response (K - omega^2 M + i omega C)^-1, or nullopt when the
/// matrix is singular to working precision (flutter-critical input).
std::optional<Eigen::Matrix2cd> frf_if_regular(const SystemMatrices& sm,
                                               double omega) noexcept;

/// Throwing variant of frf_if_regular.
Eigen::Matrix2cd frf(const SystemMatrices& sm, double omega);

/// Response PSD  H(omega) diag(s_lift, s_moment) H*(omega).
SpectralMatrix response_psd(const SystemMatrices& sm, double omega,
                            double s_lift, double s_moment);

/// Theoretical response PSD for the force levels of the given band (1 or 2).
SpectralMatrix theoretical_psd(const ThetaVector& theta, const StructuralParams& p,
                               double omega, int band);

}  // namespace flutterid
