#include "flutterid/theodorsen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flutterid {

namespace {

constexpr double kPi = std::numbers::pi;

// Jones approximation constants.
constexpr double kC1 = 0.165;
constexpr double kB1 = 0.0455;
constexpr double kC2 = 0.335;
constexpr double kB2 = 0.3;

void check_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::domain_error("half reduced frequency k must be positive");
  }
}

}  // namespace

double half_reduced_frequency(double big_k) { return 0.5 * big_k; }

TheodorsenValue theodorsen_fg(double k) {
  check_k(k);
  const double d1 = 1.0 + (kB1 / k) * (kB1 / k);
  const double d2 = 1.0 + (kB2 / k) * (kB2 / k);
  TheodorsenValue v;
  v.k = k;
  v.f = 1.0 - kC1 / d1 - kC2 / d2;
  v.g = -(kC1 * kB1 / k) / d1 - (kC2 * kB2 / k) / d2;
  return v;
}

FlutterDerivatives flat_plate_fds(double k) {
  const TheodorsenValue c = theodorsen_fg(k);
  const double f = c.f;
  const double g = c.g;
  FlutterDerivatives fd;
  fd.h1 = -kPi * f / (2.0 * k);
  fd.h2 = -kPi / (8.0 * k) * (1.0 + f + 2.0 * g / k);
  fd.h3 = -kPi / (4.0 * k * k) * (f - k * g / 2.0);
  fd.h4 = kPi / 4.0 * (1.0 + 2.0 * g / k);
  fd.a1 = kPi * f / (8.0 * k);
  fd.a2 = -kPi / (32.0 * k) * (1.0 - f - 2.0 * g / k);
  fd.a3 = kPi / (16.0 * k * k) * (k * k / 8.0 + f - k * g / 2.0);
  fd.a4 = -kPi * g / (8.0 * k);
  return fd;
}

FlutterDerivatives flat_plate_fds_mixed(double k_h, double k_alpha) {
  const FlutterDerivatives at_h = flat_plate_fds(k_h);
  const FlutterDerivatives at_a = flat_plate_fds(k_alpha);
  FlutterDerivatives fd;
  fd.h1 = at_h.h1;
  fd.h4 = at_h.h4;
  fd.a1 = at_h.a1;
  fd.a4 = at_h.a4;
  fd.h2 = at_a.h2;
  fd.h3 = at_a.h3;
  fd.a2 = at_a.a2;
  fd.a3 = at_a.a3;
  return fd;
}

}  // namespace flutterid
