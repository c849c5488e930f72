#include "flutterid/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <numbers>

namespace flutterid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// RAII around an FFTW real-to-complex plan reused across segments.
class RealFft {
 public:
  explicit RealFft(int n)
      : n_(n),
        in_(fftw_alloc_real(n)),
        out_(fftw_alloc_complex(n / 2 + 1)),
        plan_(fftw_plan_dft_r2c_1d(n, in_, out_, FFTW_ESTIMATE)) {
    if (!plan_) throw NumericalError("failed to create FFT plan");
  }

  ~RealFft() {
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  // Transforms x[offset .. offset+n) and stores bins 0..n1-1 into spectrum.
  void transform(const std::vector<double>& x, std::size_t offset, double scale,
                 int n1, std::vector<std::complex<double>>& spectrum) {
    for (int m = 0; m < n_; ++m) in_[m] = x[offset + m];
    fftw_execute(plan_);
    spectrum.resize(n1);
    for (int k = 0; k < n1; ++k) {
      spectrum[k] = scale * std::complex<double>(out_[k][0], out_[k][1]);
    }
  }

 private:
  int n_;
  double* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

int nyquist_count(int n) { return (n + 1) / 2; }

}  // namespace

double FrequencyGrid::f_hz(int k) const { return k * d_omega / kTwoPi; }

std::vector<Eigen::Vector2cd> scaled_fft(const TimeSeries& segment) {
  segment.validate();
  const int n = static_cast<int>(segment.size());
  if (n < 16) throw DataError("segment too short for spectral estimation (N >= 16)");
  const int n1 = nyquist_count(n);
  const double scale = std::sqrt(segment.dt / (kTwoPi * n));

  RealFft fft(n);
  std::vector<std::complex<double>> xh, xa;
  fft.transform(segment.h, 0, scale, n1, xh);
  fft.transform(segment.alpha, 0, scale, n1, xa);

  std::vector<Eigen::Vector2cd> out(n1);
  for (int k = 0; k < n1; ++k) out[k] << xh[k], xa[k];
  return out;
}

std::vector<SpectralMatrix> segment_psd(const TimeSeries& segment) {
  const auto x = scaled_fft(segment);
  std::vector<SpectralMatrix> s(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    s[k] = x[k] * x[k].adjoint();
  }
  return s;
}

AveragedPsdSet averaged_psd(const TimeSeries& ts, int m_segments) {
  ts.validate();
  if (m_segments < 2) throw ConfigError("need at least M = 2 segments");
  const std::size_t n_seg = ts.size() / static_cast<std::size_t>(m_segments);
  if (n_seg < 16) throw DataError("record too short for the requested segment count");
  const int n = static_cast<int>(n_seg);
  const int n1 = nyquist_count(n);
  const double scale = std::sqrt(ts.dt / (kTwoPi * n));

  AveragedPsdSet set;
  set.grid.d_omega = kTwoPi / (n * ts.dt);
  set.grid.n1 = n1;
  set.m_segments = m_segments;
  set.matrices.assign(n1, SpectralMatrix::Zero());

  RealFft fft(n);
  std::vector<double> h(n_seg), a(n_seg);
  std::vector<std::complex<double>> xh, xa;
  for (int m = 0; m < m_segments; ++m) {
    const std::size_t off = static_cast<std::size_t>(m) * n_seg;
    double mean_h = 0.0, mean_a = 0.0;
    for (std::size_t i = 0; i < n_seg; ++i) {
      mean_h += ts.h[off + i];
      mean_a += ts.alpha[off + i];
    }
    mean_h /= static_cast<double>(n_seg);
    mean_a /= static_cast<double>(n_seg);
    for (std::size_t i = 0; i < n_seg; ++i) {
      h[i] = ts.h[off + i] - mean_h;
      a[i] = ts.alpha[off + i] - mean_a;
    }
    fft.transform(h, 0, scale, n1, xh);
    fft.transform(a, 0, scale, n1, xa);
    for (int k = 0; k < n1; ++k) {
      Eigen::Vector2cd x;
      x << xh[k], xa[k];
      set.matrices[k] += x * x.adjoint();
    }
  }
  for (auto& s : set.matrices) s /= static_cast<double>(m_segments);
  return set;
}

FrequencyBand band_indices(const FrequencyGrid& grid, double f_lo_hz, double f_hi_hz) {
  if (!(grid.d_omega > 0.0) || grid.n1 < 2) throw ConfigError("invalid frequency grid");
  const double nyquist_hz = grid.f_hz(grid.n1 - 1);
  if (!(f_lo_hz > 0.0) || !(f_hi_hz >= f_lo_hz) || f_hi_hz > nyquist_hz) {
    throw ConfigError("band edges must satisfy 0 < f_lo <= f_hi <= Nyquist");
  }
  const double df = grid.d_omega / kTwoPi;
  // tiny tolerance so bin-center edges land inside the band
  FrequencyBand band;
  band.k_lo = std::max(1, static_cast<int>(std::ceil(f_lo_hz / df - 1e-9)));
  band.k_hi = std::min(grid.n1 - 1, static_cast<int>(std::floor(f_hi_hz / df + 1e-9)));
  if (band.k_lo > band.k_hi) {
    throw ConfigError("frequency band contains no grid ordinate");
  }
  return band;
}

}  // namespace flutterid
