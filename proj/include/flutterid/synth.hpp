#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "flutterid/types.hpp"

namespace flutterid {

/// Uniformly sampled displacement record, channels (h, alpha).
struct TimeSeries {
  double dt = 0.0;  // [s]
  std::vector<double> h;      // [m]
  std::vector<double> alpha;  // [rad]

  std::size_t size() const { return h.size(); }
  void validate() const;
};

/// Constant one-sided PSD levels of the mass-normalized white-noise
/// forcing, plus the RNG seed that makes a realization reproducible.
struct ForcingSpec {
  double s_lift = 0.0;    // [(m/s^2)^2 s]
  double s_moment = 0.0;  // [(rad/s^2)^2 s]
  std::uint64_t seed = 0;
};

struct StabilityReport {
  bool stable = false;
  double max_real_part = 0.0;
  std::array<std::complex<double>, 4> eigenvalues{};
};

/// Eigenvalues of the 4x4 first-order state matrix; stable iff all real
/// parts are strictly negative.
StabilityReport stability_check(const SystemMatrices& sm);

/// Simulates the coupled 2-DOF buffeting response under white-noise
/// forcing by exact zero-order-hold discretization of the continuous
/// system.  The startup transient (10 / min(xi_h w_h, xi_a w_a) seconds)
/// is simulated and discarded, so the returned record is stationary.
/// Throws NumericalError when the system is unstable (above flutter).
TimeSeries simulate_response(const StructuralParams& p, const FlutterDerivatives& fds,
                             const FlowCondition& flow, const ForcingSpec& forcing,
                             double duration, double dt);

}  // namespace flutterid
