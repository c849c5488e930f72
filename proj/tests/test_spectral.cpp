#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "flutterid/rng.hpp"
#include "flutterid/spectral.hpp"

using namespace flutterid;
using doctest::Approx;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TimeSeries white_noise(std::size_t n, double dt, Rng& rng) {
  TimeSeries ts;
  ts.dt = dt;
  ts.h.resize(n);
  ts.alpha.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ts.h[i] = rng.normal();
    ts.alpha[i] = rng.normal();
  }
  return ts;
}

}  // namespace

TEST_CASE("constant signal transforms to zero at every nonzero bin") {
  TimeSeries ts;
  ts.dt = 0.05;
  ts.h.assign(64, 3.25);
  ts.alpha.assign(64, -1.5);
  const auto x = scaled_fft(ts);
  CHECK(x.size() == 32);
  const double dc_scale = std::abs(x[0](0));
  for (std::size_t k = 1; k < x.size(); ++k) {
    CHECK(std::abs(x[k](0)) < 1e-12 * dc_scale);
    CHECK(std::abs(x[k](1)) < 1e-12 * dc_scale);
  }
}

TEST_CASE("a bin-centred cosine concentrates in its own bin") {
  const int n = 128, k0 = 9;
  const double dt = 0.02, amp = 2.0;
  TimeSeries ts;
  ts.dt = dt;
  ts.h.resize(n);
  ts.alpha.assign(n, 0.0);
  for (int m = 0; m < n; ++m) {
    ts.h[m] = amp * std::cos(kTwoPi * k0 * m / n);
  }
  const auto x = scaled_fft(ts);
  const double expected = std::sqrt(dt / (kTwoPi * n)) * amp * n / 2.0;
  CHECK(std::abs(x[k0](0)) == Approx(expected).epsilon(1e-10));
  for (std::size_t k = 1; k < x.size(); ++k) {
    if (static_cast<int>(k) == k0) continue;
    CHECK(std::abs(x[k](0)) < 1e-10 * expected);
  }
}

TEST_CASE("unit-variance white noise has E|X|^2 = dt/(2 pi)") {
  const int n = 64;
  const double dt = 0.1;
  const int n1 = 32;
  Rng rng(2718);
  std::vector<double> acc(n1, 0.0);
  const int n_segments = 10000;
  for (int s = 0; s < n_segments; ++s) {
    const TimeSeries ts = white_noise(n, dt, rng);
    const auto x = scaled_fft(ts);
    for (int k = 0; k < n1; ++k) acc[k] += std::norm(x[k](0));
  }
  const double expected = dt / kTwoPi;
  double grand = 0.0;
  for (int k = 1; k < n1; ++k) {
    const double mean_k = acc[k] / n_segments;
    CHECK(mean_k == Approx(expected).epsilon(0.05));
    grand += mean_k;
  }
  grand /= (n1 - 1);
  CHECK(grand == Approx(expected).epsilon(0.01));
}

TEST_CASE("segment PSD matrices are rank-1 Hermitian with |X|^2 diagonals") {
  Rng rng(5);
  const TimeSeries ts = white_noise(256, 0.01, rng);
  const auto x = scaled_fft(ts);
  const auto s = segment_psd(ts);
  REQUIRE(s.size() == x.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    CHECK(s[k](0, 0).real() == Approx(std::norm(x[k](0))).epsilon(1e-12));
    CHECK(s[k](1, 1).real() == Approx(std::norm(x[k](1))).epsilon(1e-12));
    CHECK(is_hermitian(s[k], 1e-12));
    const double trace = s[k](0, 0).real() + s[k](1, 1).real();
    CHECK(trace >= 0.0);
    const double det = s[k](0, 0).real() * s[k](1, 1).real() - std::norm(s[k](0, 1));
    CHECK(std::abs(det) <= 1e-12 * trace * trace);
  }
}

TEST_CASE("zero signal gives all-zero spectral matrices") {
  TimeSeries ts;
  ts.dt = 0.01;
  ts.h.assign(64, 0.0);
  ts.alpha.assign(64, 0.0);
  for (const auto& s : segment_psd(ts)) CHECK(s.norm() == 0.0);
}

TEST_CASE("averaging identical segments reproduces the single-segment PSD") {
  Rng rng(17);
  TimeSeries one = white_noise(128, 0.02, rng);
  // remove the mean so the tiled record has per-segment mean zero as well
  double mean_h = 0.0, mean_a = 0.0;
  for (std::size_t i = 0; i < one.size(); ++i) {
    mean_h += one.h[i];
    mean_a += one.alpha[i];
  }
  mean_h /= static_cast<double>(one.size());
  mean_a /= static_cast<double>(one.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    one.h[i] -= mean_h;
    one.alpha[i] -= mean_a;
  }

  TimeSeries tiled;
  tiled.dt = one.dt;
  for (int rep = 0; rep < 4; ++rep) {
    tiled.h.insert(tiled.h.end(), one.h.begin(), one.h.end());
    tiled.alpha.insert(tiled.alpha.end(), one.alpha.begin(), one.alpha.end());
  }
  const AveragedPsdSet avg = averaged_psd(tiled, 4);
  const auto single = segment_psd(one);
  REQUIRE(avg.matrices.size() == single.size());
  double scale = 0.0;
  for (const auto& s : single) scale = std::max(scale, s.norm());
  for (std::size_t k = 0; k < single.size(); ++k) {
    CHECK((avg.matrices[k] - single[k]).norm() <= 1e-13 * scale);
  }
}

TEST_CASE("trailing remainder is discarded") {
  Rng rng(23);
  TimeSeries ts = white_noise(4 * 100 + 3, 0.01, rng);
  TimeSeries trimmed = ts;
  trimmed.h.resize(400);
  trimmed.alpha.resize(400);
  const AveragedPsdSet a = averaged_psd(ts, 4);
  const AveragedPsdSet b = averaged_psd(trimmed, 4);
  REQUIRE(a.matrices.size() == b.matrices.size());
  for (std::size_t k = 0; k < a.matrices.size(); ++k) {
    CHECK((a.matrices[k] - b.matrices[k]).norm() == 0.0);
  }
}

TEST_CASE("averaged matrices are Hermitian positive semi-definite") {
  Rng rng(29);
  const TimeSeries ts = white_noise(2048, 0.01, rng);
  const AveragedPsdSet avg = averaged_psd(ts, 8);
  for (const auto& s : avg.matrices) {
    CHECK((s - s.adjoint()).norm() <= 1e-12 * std::max(1e-300, s.norm()));
    const double trace = s(0, 0).real() + s(1, 1).real();
    CHECK(min_eigenvalue(s) >= -1e-12 * trace);
  }
}

TEST_CASE("white-noise averaged diagonal is flat within 4/sqrt(M)") {
  Rng rng(31);
  const int m = 32;
  const TimeSeries ts = white_noise(m * 256, 0.01, rng);
  const AveragedPsdSet avg = averaged_psd(ts, m);
  const double expected = ts.dt / kTwoPi;
  const double tol = 4.0 / std::sqrt(static_cast<double>(m));
  for (int k = 1; k < avg.grid.n1; ++k) {
    CHECK(std::abs(avg.matrices[k](0, 0).real() / expected - 1.0) < tol);
    CHECK(std::abs(avg.matrices[k](1, 1).real() / expected - 1.0) < tol);
  }
}

TEST_CASE("band means with M=4 and M=16 agree within sampling error") {
  Rng rng(37);
  const TimeSeries ts = white_noise(16 * 512, 0.01, rng);
  const AveragedPsdSet a4 = averaged_psd(ts, 4);
  const AveragedPsdSet a16 = averaged_psd(ts, 16);
  const auto band_mean = [](const AveragedPsdSet& set, double f_lo, double f_hi) {
    const FrequencyBand band = band_indices(set.grid, f_lo, f_hi);
    double acc = 0.0;
    for (int k = band.k_lo; k <= band.k_hi; ++k) acc += set.matrices[k](0, 0).real();
    return acc / band.size();
  };
  const double m1 = band_mean(a4, 5.0, 20.0);
  const double m2 = band_mean(a16, 5.0, 20.0);
  CHECK(m1 == Approx(m2).epsilon(0.10));
}

TEST_CASE("band_indices arithmetic for the simulation protocol") {
  // 2000 s record at 100 Hz split into 18 segments
  FrequencyGrid grid;
  const int n_seg = 200000 / 18;  // 11111 samples
  grid.d_omega = kTwoPi / (n_seg * 0.01);
  grid.n1 = (n_seg + 1) / 2;

  const FrequencyBand band1 = band_indices(grid, 0.08, 0.12);
  CHECK(band1.k_lo == 9);
  CHECK(band1.k_hi == 13);
  const FrequencyBand band2 = band_indices(grid, 0.23, 0.27);
  CHECK(band2.k_lo == 26);
  CHECK(band2.k_hi == 29);
  CHECK(band1.k_hi < band2.k_lo);

  // single ordinate: both edges on a bin centre
  const double f9 = grid.f_hz(9);
  const FrequencyBand single = band_indices(grid, f9, f9);
  CHECK(single.k_lo == 9);
  CHECK(single.k_hi == 9);
}

TEST_CASE("band_indices rejects invalid and empty bands") {
  FrequencyGrid grid;
  grid.d_omega = kTwoPi * 0.5;  // 0.5 Hz resolution
  grid.n1 = 100;
  CHECK_THROWS_AS((void)band_indices(grid, -1.0, 2.0), ConfigError);
  CHECK_THROWS_AS((void)band_indices(grid, 2.0, 1.0), ConfigError);
  CHECK_THROWS_AS((void)band_indices(grid, 1.0, 1000.0), ConfigError);
  // between two bin centres
  CHECK_THROWS_AS((void)band_indices(grid, 1.1, 1.4), ConfigError);
}

TEST_CASE("estimator input validation") {
  TimeSeries ts;
  ts.dt = 0.01;
  ts.h.assign(8, 0.0);
  ts.alpha.assign(8, 0.0);
  CHECK_THROWS_AS((void)scaled_fft(ts), DataError);

  Rng rng(1);
  const TimeSeries ok = white_noise(64, 0.01, rng);
  CHECK_THROWS_AS((void)averaged_psd(ok, 1), ConfigError);
  CHECK_THROWS_AS((void)averaged_psd(ok, 8), DataError);  // 8 samples per segment
}
