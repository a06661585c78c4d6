#pragma once

// Plane-wave reflection and transmission coefficients of the potential step.
//
// Square roots of negative arguments are taken on the +i branch, so the
// transmitted wave decays inside the step and |R| = 1 under total reflection.

#include <complex>

#include "ghshift/core.hpp"

namespace ghshift::coeffs {

using Complex = std::complex<double>;

struct StepCoefficients {
  Complex r;
  Complex t;
  Complex kz_in;   ///< incident normal wave number (times w0)
  Complex qz_out;  ///< transmitted normal wave number (times w0)

  bool evanescent() const noexcept { return qz_out.real() == 0.0 && qz_out.imag() != 0.0; }
};

/// sqrt(a) for real a with the decaying branch +i sqrt(-a) when a < 0.
inline Complex branch_sqrt(double a) {
  return a >= 0.0 ? Complex(std::sqrt(a), 0.0) : Complex(0.0, std::sqrt(-a));
}

/// sqrt(kx^2 - k0^2) on the decaying branch.
Complex transmitted_wavenumber_1d(double kxw0, double k0w0);

StepCoefficients step_1d(double kxw0, double k0w0);

/// (kx - q)/(kx + q), q = sqrt(kx^2 - k0^2). Throws DomainError for kx <= 0.
Complex reflection_1d(double kxw0, double k0w0);

/// 2 kx/(kx + q). 1 + R = T.
Complex transmission_1d(double kxw0, double k0w0);

/// Geometry of a tilted beam on the step. Spectral coordinates (kx, ky) are
/// deviations from the beam axis in the incident beam's own frame, times w0.
class StepGeometry3D {
 public:
  explicit StepGeometry3D(const BeamSpec3D& beam);

  double kw0() const noexcept { return k_; }

  /// q^2 - k_xt^2 - ky^2, the square of the transmitted normal wave number.
  /// Positive: propagating transmission. Negative: evanescent. Evaluated
  /// without cancellation against the large k^2 terms.
  double branch_function(double kx, double ky) const;

  /// Incident normal wave number k_zt = -sin(theta) kx + cos(theta) kz.
  double incident_normal(double kx, double ky) const;

  StepCoefficients at(double kx, double ky) const;

 private:
  double incident_kz(double kx, double ky) const;

  double k_;
  double sin_t_;
  double cos_t_;
  double gap_;  // k^2 (sin^2 theta_c - sin^2 theta)
};

StepCoefficients step_3d(double kxw0, double kyw0, const BeamSpec3D& beam);

/// (k_zt - q_zt)/(k_zt + q_zt). Throws DomainError when the component does
/// not propagate towards the interface.
Complex reflection_3d(double kxw0, double kyw0, const BeamSpec3D& beam);

/// R(kx, ky) ~ r00 (1 + slope * kxw0), slope = 2 sin(theta) / (q cos(phi) w0).
struct LinearizedReflection {
  Complex r00;
  Complex slope;
};

/// Angular half-width 10 / (k w0 cos theta_c) around the critical angle in
/// which the first-order expansion is not trusted.
double critical_band_half_width(const BeamSpec3D& beam);

/// Throws SingularExpansionError when theta lies inside the critical band.
LinearizedReflection reflection_3d_linearized(const BeamSpec3D& beam);

}  // namespace ghshift::coeffs
