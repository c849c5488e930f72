#pragma once

#include <vector>

#include "flutterid/synth.hpp"
#include "flutterid/types.hpp"

namespace flutterid {

/// One-sided frequency grid of a segment: resolution 2*pi/(N dt) and the
/// ordinate count N1 = INT((N+1)/2) up to Nyquist.
struct FrequencyGrid {
  double d_omega = 0.0;  // [rad/s]
  int n1 = 0;

  double omega(int k) const { return k * d_omega; }
  double f_hz(int k) const;
};

/// Inclusive frequency-index range [k_lo, k_hi] within a grid.
struct FrequencyBand {
  int k_lo = 0;
  int k_hi = 0;

  int size() const { return k_hi - k_lo + 1; }
};

/// M-segment averaged cross-spectral matrices on a common grid.
struct AveragedPsdSet {
  FrequencyGrid grid;
  int m_segments = 0;
  std::vector<SpectralMatrix> matrices;  // index k = 0 .. n1-1
};

/// Scaled Fourier transform sqrt(dt/(2 pi N)) sum_m x(m) e^{-i w_k m dt}
/// of the two-channel segment, for k = 0 .. N1-1.
std::vector<Eigen::Vector2cd> scaled_fft(const TimeSeries& segment);

/// Rank-1 single-segment spectral density estimates X(w_k) X*(w_k).
std::vector<SpectralMatrix> segment_psd(const TimeSeries& segment);

/// Splits the record into m_segments equal non-overlapping segments
/// (trailing remainder discarded), removes each segment's mean, and
/// averages the per-segment estimates.
AveragedPsdSet averaged_psd(const TimeSeries& ts, int m_segments);

/// Inclusive index range of grid ordinates with f_lo <= f_k <= f_hi.
FrequencyBand band_indices(const FrequencyGrid& grid, double f_lo_hz, double f_hi_hz);

}  // namespace flutterid
