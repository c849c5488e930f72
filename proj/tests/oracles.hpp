#pragma once

// Independent high-precision oracles used only by tests.  They re-derive
// the closed forms through different algebraic routes than the library so
// a shared transcription slip cannot hide.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <complex>

#include "flutterid/types.hpp"

namespace flutterid::testing {

using mp = boost::multiprecision::cpp_bin_float_50;

inline const mp kMpPi =
    mp("3.14159265358979323846264338327950288419716939937510582097494459");

struct MpTheodorsen {
  mp f, g;
};

// Circulation function with the rational terms multiplied through by k^2,
// removing the 1/k divisions used by the implementation.
inline MpTheodorsen mp_theodorsen(const mp& k) {
  const mp b1("0.0455"), c1("0.165"), b2("0.3"), c2("0.335");
  const mp k2 = k * k;
  MpTheodorsen v;
  v.f = 1 - c1 * k2 / (k2 + b1 * b1) - c2 * k2 / (k2 + b2 * b2);
  v.g = -c1 * b1 * k / (k2 + b1 * b1) - c2 * b2 * k / (k2 + b2 * b2);
  return v;
}

// Eight flat-plate derivatives in the order (h1..h4, a1..a4).
inline std::array<mp, 8> mp_flat_plate(const mp& k) {
  const MpTheodorsen c = mp_theodorsen(k);
  const mp f = c.f, g = c.g;
  std::array<mp, 8> fd;
  fd[0] = -kMpPi * f / (2 * k);
  fd[1] = -kMpPi / (8 * k) * (1 + f + 2 * g / k);
  fd[2] = -kMpPi / (4 * k * k) * (f - k * g / 2);
  fd[3] = kMpPi / 4 * (1 + 2 * g / k);
  fd[4] = kMpPi * f / (8 * k);
  fd[5] = -kMpPi / (32 * k) * (1 - f - 2 * g / k);
  fd[6] = kMpPi / (16 * k * k) * (k * k / 8 + f - k * g / 2);
  fd[7] = -kMpPi * g / (8 * k);
  return fd;
}

// Full central complex Wishart log-density (d = 2), everything in
// 50-digit arithmetic.  Matrices are passed as (s11, s22, Re s12, Im s12).
inline mp mp_wishart_log_pdf(const std::array<double, 4>& observed,
                             const std::array<double, 4>& expected, int m) {
  const int d = 2;
  const mp s11 = observed[0], s22 = observed[1], sr = observed[2], si = observed[3];
  const mp e11 = expected[0], e22 = expected[1], er = expected[2], ei = expected[3];

  const mp det_s = s11 * s22 - (sr * sr + si * si);
  const mp det_e = e11 * e22 - (er * er + ei * ei);
  // tr(E^-1 S) for Hermitian S, E
  const mp trace = (e22 * s11 + e11 * s22 - 2 * (er * sr + ei * si)) / det_e;

  mp log_fact = 0;  // ln[(M-1)!] + ln[(M-2)!]
  for (int i = 2; i <= m - 1; ++i) log_fact += log(mp(i));
  for (int i = 2; i <= m - 2; ++i) log_fact += log(mp(i));

  mp lp = -mp(d * (d - 1)) / 2 * log(kMpPi);
  lp += mp(m - d + d * d) * log(mp(m));
  if (m > d) lp += mp(m - d) * log(det_s);
  lp -= log_fact;
  lp -= mp(m) * log(det_e);
  lp -= mp(m) * trace;
  return lp;
}

inline std::array<double, 4> to_parts(const SpectralMatrix& s) {
  return {s(0, 0).real(), s(1, 1).real(), s(0, 1).real(), s(0, 1).imag()};
}

}  // namespace flutterid::testing
