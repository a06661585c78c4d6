#include "ghshift/coeffs.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ghshift/errors.hpp"

namespace ghshift::coeffs {

namespace {

void check_1d(double kxw0, double k0w0) {
  if (!(kxw0 > 0.0) || !std::isfinite(kxw0))
    throw DomainError("reflection_1d: kx w0 must be positive");
  if (!(k0w0 >= 0.0) || !std::isfinite(k0w0))
    throw DomainError("reflection_1d: k0 w0 must be non-negative");
}

}  // namespace

Complex transmitted_wavenumber_1d(double kxw0, double k0w0) {
  return branch_sqrt((kxw0 - k0w0) * (kxw0 + k0w0));
}

StepCoefficients step_1d(double kxw0, double k0w0) {
  check_1d(kxw0, k0w0);
  const Complex q = transmitted_wavenumber_1d(kxw0, k0w0);
  const Complex den = kxw0 + q;
  return {(kxw0 - q) / den, 2.0 * kxw0 / den, Complex(kxw0, 0.0), q};
}

Complex reflection_1d(double kxw0, double k0w0) { return step_1d(kxw0, k0w0).r; }

Complex transmission_1d(double kxw0, double k0w0) { return step_1d(kxw0, k0w0).t; }

StepGeometry3D::StepGeometry3D(const BeamSpec3D& beam)
    : k_(beam.kw0()),
      sin_t_(std::sin(beam.theta())),
      cos_t_(std::cos(beam.theta())),
      gap_(beam.kw0() * beam.kw0() *
           (beam.sin2_theta_c() - std::sin(beam.theta()) * std::sin(beam.theta()))) {}

double StepGeometry3D::incident_kz(double kx, double ky) const {
  const double r2 = kx * kx + ky * ky;
  if (!(r2 < k_ * k_))
    throw DomainError("reflection_3d: spectral component beyond |k|");
  return std::sqrt((k_ - std::sqrt(r2)) * (k_ + std::sqrt(r2)));
}

double StepGeometry3D::branch_function(double kx, double ky) const {
  const double kz = incident_kz(kx, ky);
  // k_xt - k sin(theta), with kz - k = -(kx^2 + ky^2)/(k + kz).
  const double dkxt = cos_t_ * kx - sin_t_ * (kx * kx + ky * ky) / (k_ + kz);
  const double kxt = k_ * sin_t_ + dkxt;
  return gap_ - dkxt * (kxt + k_ * sin_t_) - ky * ky;
}

double StepGeometry3D::incident_normal(double kx, double ky) const {
  return -sin_t_ * kx + cos_t_ * incident_kz(kx, ky);
}

StepCoefficients StepGeometry3D::at(double kx, double ky) const {
  const double kzt = incident_normal(kx, ky);
  if (!(kzt > 0.0))
    throw DomainError("reflection_3d: component does not reach the interface");
  const Complex qzt = branch_sqrt(branch_function(kx, ky));
  const Complex den = kzt + qzt;
  return {(kzt - qzt) / den, 2.0 * kzt / den, Complex(kzt, 0.0), qzt};
}

StepCoefficients step_3d(double kxw0, double kyw0, const BeamSpec3D& beam) {
  return StepGeometry3D(beam).at(kxw0, kyw0);
}

Complex reflection_3d(double kxw0, double kyw0, const BeamSpec3D& beam) {
  return step_3d(kxw0, kyw0, beam).r;
}

double critical_band_half_width(const BeamSpec3D& beam) {
  const auto theta_c = beam.critical_angle();
  if (!theta_c || beam.sin2_theta_c() >= 1.0) return 0.0;
  return 10.0 / (beam.kw0() * std::cos(*theta_c));
}

LinearizedReflection reflection_3d_linearized(const BeamSpec3D& beam) {
  if (const auto theta_c = beam.critical_angle()) {
    const double band = critical_band_half_width(beam);
    if (std::abs(beam.theta() - *theta_c) < band) {
      throw SingularExpansionError(
          "reflection_3d_linearized: theta within " + std::to_string(band) +
          " rad of the critical angle; use the critical mean value instead");
    }
  }
  const StepGeometry3D geom(beam);
  const StepCoefficients c = geom.at(0.0, 0.0);
  return {c.r, 2.0 * std::sin(beam.theta()) / c.qz_out};
}

}  // namespace ghshift::coeffs
