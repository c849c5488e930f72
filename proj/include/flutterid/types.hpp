#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace flutterid {

// Error categories; the CLI maps these onto its exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 2x2 Hermitian cross-spectral density matrix at one frequency.
/// Channel order is (h, alpha): S(0,0) in m^2 s, S(1,1) in rad^2 s.
using SpectralMatrix = Eigen::Matrix2cd;

/// Section properties per unit span plus air density.
struct StructuralParams {
  double mass = 0.0;         // [kg/m]
  double inertia = 0.0;      // mass moment of inertia [kg m^2/m]
  double omega_h = 0.0;      // vertical natural circular frequency [rad/s]
  double omega_alpha = 0.0;  // torsional natural circular frequency [rad/s]
  double xi_h = 0.0;         // damping ratios [-]
  double xi_alpha = 0.0;
  double width = 0.0;        // deck width B [m]
  double rho = 0.0;          // air density [kg/m^3]

  void validate() const;
};

struct FlowCondition {
  double u = 0.0;  // mean wind speed at deck level [m/s]

  void validate() const;
};

/// The eight dimensionless flutter derivatives H*_1..4, A*_1..4.
struct FlutterDerivatives {
  double h1 = 0.0, h2 = 0.0, h3 = 0.0, h4 = 0.0;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;

  void validate() const;  // all finite
};

/// Flutter derivatives rescaled by mass, inertia, width and modal
/// frequencies so they enter the coupled damping/stiffness matrices
/// directly.  h1, h2, a1, a2 are damping-type [1/s]; h3, h4, a3, a4 are
/// stiffness-type [1/s^2].
struct ModifiedFDs {
  double h1 = 0.0, h2 = 0.0, h3 = 0.0, h4 = 0.0;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
};

/// Mass/damping/stiffness of the mass-normalized coupled 2-DOF system.
/// mass is exactly the identity; damping and stiffness are generally
/// non-symmetric once aeroelastic coupling is present.
struct SystemMatrices {
  Eigen::Matrix2d mass = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d damping = Eigen::Matrix2d::Zero();   // [1/s]
  Eigen::Matrix2d stiffness = Eigen::Matrix2d::Zero(); // [1/s^2]
};

/// The 12-dimensional inference target: eight flutter derivatives plus
/// a constant force-PSD level per channel and per frequency band.
struct ThetaVector {
  FlutterDerivatives fds;
  double s_lift1 = 0.0;    // band 1 modified lift force PSD [(m/s^2)^2 s]
  double s_moment1 = 0.0;  // band 1 modified moment force PSD [(rad/s^2)^2 s]
  double s_lift2 = 0.0;    // band 2
  double s_moment2 = 0.0;

  void validate() const;  // force PSDs strictly positive
};

constexpr int kThetaDim = 12;

bool is_hermitian(const SpectralMatrix& s, double rel_tol = 1e-10);

/// Smallest eigenvalue of the Hermitian part, closed form.
double min_eigenvalue(const SpectralMatrix& s);

}  // namespace flutterid
