#pragma once

#include <numbers>

#include "flutterid/types.hpp"

namespace flutterid::testing {

// Long-span section used throughout the simulation studies.
inline StructuralParams section_bridge() {
  StructuralParams p;
  p.mass = 27935.0;
  p.inertia = 2595580.0;
  p.omega_h = 2.0 * std::numbers::pi * 0.1;
  p.omega_alpha = 2.0 * std::numbers::pi * 0.25;
  p.xi_h = 0.005;
  p.xi_alpha = 0.005;
  p.width = 36.0;
  p.rho = 1.225;
  return p;
}

// Spring-suspended thin plate section.
inline StructuralParams section_thin_plate() {
  StructuralParams p;
  p.mass = 6.0;
  p.inertia = 0.7;
  p.omega_h = 2.0 * std::numbers::pi * 1.9;
  p.omega_alpha = 2.0 * std::numbers::pi * 3.05;
  p.xi_h = 0.004;
  p.xi_alpha = 0.003;
  p.width = 0.45;
  p.rho = 1.225;
  return p;
}

// Fast section for simulation unit tests (short records stay valid).
inline StructuralParams section_fast() {
  StructuralParams p;
  p.mass = 10.0;
  p.inertia = 1.0;
  p.omega_h = 2.0 * std::numbers::pi * 1.0;
  p.omega_alpha = 2.0 * std::numbers::pi * 2.5;
  p.xi_h = 0.02;
  p.xi_alpha = 0.02;
  p.width = 0.5;
  p.rho = 1.225;
  return p;
}

}  // namespace flutterid::testing
