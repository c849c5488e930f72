#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "flutterid/aeroelastic.hpp"
#include "flutterid/spectral.hpp"
#include "flutterid/synth.hpp"

using namespace flutterid;
using doctest::Approx;

namespace {

const FlowCondition kWind{8.0};

FlutterDerivatives mild_fds() {
  FlutterDerivatives f;
  f.h1 = -1.5;
  f.h2 = -0.4;
  f.h3 = -0.5;
  f.h4 = 0.1;
  f.a1 = 0.4;
  f.a2 = -0.08;
  f.a3 = 0.2;
  f.a4 = 0.15;
  return f;
}

}  // namespace

TEST_CASE("stability: uncoupled damped section is stable") {
  const StructuralParams p = testing::section_fast();
  const StabilityReport r = stability_check(system_matrices(ModifiedFDs{}, p));
  CHECK(r.stable);
  // poles at -xi w +- i w sqrt(1-xi^2)
  CHECK(r.max_real_part == Approx(-p.xi_h * p.omega_h).epsilon(1e-9));
}

TEST_CASE("stability: large positive H*_1 drives the vertical mode unstable") {
  const StructuralParams p = testing::section_fast();
  FlutterDerivatives f;
  f.h1 = 5.0;  // aerodynamic damping beats structural damping
  const SystemMatrices sm = system_matrices(to_modified(f, p), p);
  CHECK(sm.damping(0, 0) < 0.0);
  CHECK(!stability_check(sm).stable);
  CHECK_THROWS_AS((void)simulate_response(p, f, kWind, ForcingSpec{1e-3, 1e-3, 1},
                                          200.0, 0.01),
                  NumericalError);
}

TEST_CASE("stability: eigenvalue real parts approach zero from below as xi -> 0") {
  StructuralParams p = testing::section_fast();
  p.xi_h = p.xi_alpha = 1e-7;
  const StabilityReport r = stability_check(system_matrices(ModifiedFDs{}, p));
  CHECK(r.stable);
  CHECK(r.max_real_part < 0.0);
  CHECK(r.max_real_part > -1e-4);
}

TEST_CASE("zero forcing produces an identically zero response") {
  const StructuralParams p = testing::section_fast();
  const TimeSeries ts =
      simulate_response(p, mild_fds(), kWind, ForcingSpec{0.0, 0.0, 99}, 150.0, 0.01);
  for (double v : ts.h) CHECK(v == 0.0);
  for (double v : ts.alpha) CHECK(v == 0.0);
}

TEST_CASE("equal seeds are bitwise identical, different seeds differ") {
  const StructuralParams p = testing::section_fast();
  const ForcingSpec forcing{1e-3, 1e-3, 12345};
  const TimeSeries a = simulate_response(p, mild_fds(), kWind, forcing, 150.0, 0.01);
  const TimeSeries b = simulate_response(p, mild_fds(), kWind, forcing, 150.0, 0.01);
  CHECK(a.h == b.h);
  CHECK(a.alpha == b.alpha);

  const TimeSeries c = simulate_response(p, mild_fds(), kWind,
                                         ForcingSpec{1e-3, 1e-3, 54321}, 150.0, 0.01);
  CHECK(a.h != c.h);
}

TEST_CASE("precondition violations are rejected") {
  const StructuralParams p = testing::section_fast();
  // too short (needs 100 periods of the 1 Hz mode)
  CHECK_THROWS_AS((void)simulate_response(p, mild_fds(), kWind,
                                          ForcingSpec{1e-3, 1e-3, 1}, 50.0, 0.01),
                  ConfigError);
  // too coarse (needs f_s >= 20 f_alpha = 50 Hz)
  CHECK_THROWS_AS((void)simulate_response(p, mild_fds(), kWind,
                                          ForcingSpec{1e-3, 1e-3, 1}, 200.0, 0.04),
                  ConfigError);
}

TEST_CASE("sample mean is zero within the narrowband standard error") {
  const StructuralParams p = testing::section_fast();
  const double duration = 400.0;
  const TimeSeries ts = simulate_response(p, FlutterDerivatives{}, kWind,
                                          ForcingSpec{1e-3, 1e-3, 2024}, duration, 0.01);
  double mean_h = 0.0, mean_a = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mean_h += ts.h[i];
    mean_a += ts.alpha[i];
  }
  mean_h /= static_cast<double>(ts.size());
  mean_a /= static_cast<double>(ts.size());
  // var(mean) ~ 2 pi S(0) / T for T much longer than the correlation time
  const double s_h0 = 1e-3 / std::pow(p.omega_h, 4);
  const double s_a0 = 1e-3 / std::pow(p.omega_alpha, 4);
  CHECK(std::abs(mean_h) < 4.0 * std::sqrt(2.0 * std::numbers::pi * s_h0 / duration));
  CHECK(std::abs(mean_a) < 4.0 * std::sqrt(2.0 * std::numbers::pi * s_a0 / duration));
}

TEST_CASE("response variance matches the analytic SDOF integral") {
  const StructuralParams p = testing::section_fast();
  const double duration = 800.0;
  const TimeSeries ts = simulate_response(p, FlutterDerivatives{}, kWind,
                                          ForcingSpec{1e-3, 1e-3, 7}, duration, 0.01);
  double var_h = 0.0;
  for (double v : ts.h) var_h += v * v;
  var_h /= static_cast<double>(ts.size());
  const double analytic = 1e-3 * std::numbers::pi / (2.0 * p.xi_h * std::pow(p.omega_h, 3));
  CHECK(var_h == Approx(analytic).epsilon(0.25));
}

TEST_CASE("averaged estimator of the simulated response matches the theoretical PSD") {
  const StructuralParams p = testing::section_fast();
  const FlutterDerivatives fds = mild_fds();
  const double s_lift = 1e-3, s_moment = 2e-3;
  const int m_segments = 18;
  // long segments keep the periodogram leakage bias well below the
  // Wishart scatter across the whole band
  const TimeSeries ts = simulate_response(p, fds, kWind,
                                          ForcingSpec{s_lift, s_moment, 1},
                                          2700.0, 0.01);
  const AveragedPsdSet psd = averaged_psd(ts, m_segments);
  const FrequencyBand band1 = band_indices(psd.grid, 0.96, 1.04);
  const FrequencyBand band2 = band_indices(psd.grid, 2.46, 2.54);

  const SystemMatrices sm = system_matrices(to_modified(fds, p), p);
  const double se = 1.0 / std::sqrt(static_cast<double>(m_segments));
  int checked = 0;
  for (const FrequencyBand& band : {band1, band2}) {
    for (int k = band.k_lo; k <= band.k_hi; ++k) {
      const SpectralMatrix expected =
          response_psd(sm, psd.grid.omega(k), s_lift, s_moment);
      const SpectralMatrix observed = psd.matrices[k];
      CHECK(std::abs(observed(0, 0).real() - expected(0, 0).real()) <
            3.0 * se * expected(0, 0).real());
      CHECK(std::abs(observed(1, 1).real() - expected(1, 1).real()) <
            3.0 * se * expected(1, 1).real());
      const double cross_scale =
          std::sqrt(expected(0, 0).real() * expected(1, 1).real());
      CHECK(std::abs(observed(0, 1) - expected(0, 1)) < 3.0 * se * cross_scale);
      ++checked;
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("doubling the lift PSD doubles the h spectrum exactly on matched seeds") {
  const StructuralParams p = testing::section_fast();
  const TimeSeries a = simulate_response(p, mild_fds(), kWind,
                                         ForcingSpec{1e-3, 0.0, 555}, 300.0, 0.01);
  const TimeSeries b = simulate_response(p, mild_fds(), kWind,
                                         ForcingSpec{2e-3, 0.0, 555}, 300.0, 0.01);
  const AveragedPsdSet pa = averaged_psd(a, 4);
  const AveragedPsdSet pb = averaged_psd(b, 4);
  const FrequencyBand band = band_indices(pa.grid, 0.9, 1.1);
  for (int k = band.k_lo; k <= band.k_hi; ++k) {
    CHECK(pb.matrices[k](0, 0).real() ==
          Approx(2.0 * pa.matrices[k](0, 0).real()).epsilon(1e-9));
  }
}
