#pragma once

#include "flutterid/types.hpp"

namespace flutterid {

/// Real and imaginary parts of the circulation function C(k) = F(k) + iG(k)
/// in the Jones rational approximation, at half reduced frequency k.
struct TheodorsenValue {
  double f = 0.0;
  double g = 0.0;
  double k = 0.0;
};

/// k is the half reduced frequency, k = omega * B / (2 U) = K / 2.
double half_reduced_frequency(double big_k);

TheodorsenValue theodorsen_fg(double k);

/// Analytic flat-plate flutter derivatives, all eight evaluated at the
/// same k.  Ground truth for synthetic experiments.
FlutterDerivatives flat_plate_fds(double k);

/// Flat-plate FDs with each derivative evaluated at the reduced frequency
/// of the motion it multiplies: h-related (H1, H4, A1, A4) at k_h,
/// alpha-related (H2, H3, A2, A3) at k_alpha.
FlutterDerivatives flat_plate_fds_mixed(double k_h, double k_alpha);

}  // namespace flutterid
