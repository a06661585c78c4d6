#include "ghshift/core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ghshift/errors.hpp"

namespace ghshift {

namespace {

// CODATA 2018.
constexpr double kHbar = 1.054571817e-34;          // J s
constexpr double kElectronMass = 9.1093837015e-31;  // kg
constexpr double kElectronVolt = 1.602176634e-19;   // J

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Above: return "above";
    case Regime::Below: return "below";
    case Regime::Critical: return "critical";
  }
  return "unknown";
}

PacketSpec make_packet_spec(double kw0, double k0w0, double tau) {
  require(std::isfinite(kw0) && kw0 > 0.0, "kw0 must be positive");
  require(std::isfinite(k0w0) && k0w0 >= 0.0, "k0w0 must be non-negative");
  require(std::isfinite(tau) && tau >= 0.0, "tau must be non-negative");
  const Regime r = kw0 > k0w0   ? Regime::Above
                   : kw0 < k0w0 ? Regime::Below
                                : Regime::Critical;
  return PacketSpec(kw0, k0w0, tau, r);
}

PacketSpec packet_from_barrier_excess(double kw0, double barrier_excess,
                                      double tau) {
  require(barrier_excess >= -1.0, "(V0 - E)/E must be >= -1");
  return make_packet_spec(kw0, kw0 * std::sqrt(1.0 + barrier_excess), tau);
}

Regime PacketSpec::dispatch_regime(double eps) const noexcept {
  if (std::abs(kw0_ - k0w0_) < eps * kw0_) return Regime::Critical;
  return regime_;
}

double PacketSpec::barrier_excess() const noexcept {
  return (k0w0_ - kw0_) * (k0w0_ + kw0_) / (kw0_ * kw0_);
}

double PacketSpec::near_critical_delta() const noexcept {
  return (kw0_ - k0w0_) * kw0_;
}

PacketSpec PacketSpec::with_tau(double tau) const {
  return make_packet_spec(kw0_, k0w0_, tau);
}

BeamSpec3D::BeamSpec3D(double kw0, double sin2c, double theta, double zeta)
    : kw0_(kw0), sin2_theta_c_(sin2c), theta_(theta), zeta_(zeta) {
  require(std::isfinite(kw0) && kw0 > 0.0, "kw0 must be positive");
  require(std::isfinite(sin2c) && sin2c <= 1.0,
          "(E - V0)/E must not exceed 1 (V0 >= 0)");
  require(std::isfinite(theta) && theta > 0.0 && theta < std::numbers::pi / 2,
          "theta must lie strictly inside (0, pi/2)");
  require(std::isfinite(zeta) && zeta >= 0.0, "zeta must be non-negative");
}

BeamSpec3D BeamSpec3D::from_critical_angle(double kw0, double theta_c,
                                           double theta, double zeta) {
  require(theta_c > 0.0 && theta_c <= std::numbers::pi / 2,
          "critical angle must lie in (0, pi/2]");
  const double s = std::sin(theta_c);
  return BeamSpec3D(kw0, s * s, theta, zeta);
}

BeamSpec3D BeamSpec3D::from_v0_over_e(double kw0, double v0_over_e,
                                      double theta, double zeta) {
  require(std::isfinite(v0_over_e) && v0_over_e >= 0.0,
          "V0/E must be non-negative");
  return BeamSpec3D(kw0, 1.0 - v0_over_e, theta, zeta);
}

std::optional<double> BeamSpec3D::critical_angle() const {
  if (sin2_theta_c_ <= 0.0) return std::nullopt;
  return std::asin(std::sqrt(sin2_theta_c_));
}

BeamSpec3D BeamSpec3D::with_theta(double theta) const {
  return BeamSpec3D(kw0_, sin2_theta_c_, theta, zeta_);
}

BeamSpec3D BeamSpec3D::with_zeta(double zeta) const {
  return BeamSpec3D(kw0_, sin2_theta_c_, theta_, zeta);
}

double units_to_kw0(const PhysicalUnits& u) {
  require(u.energy_eV > 0.0 && u.waist_um > 0.0 && u.particle_mass > 0.0,
          "energy, waist and mass must be positive");
  const double m = u.particle_mass * kElectronMass;
  const double k = std::sqrt(2.0 * m * u.energy_eV * kElectronVolt) / kHbar;
  return k * u.waist_um * 1e-6;
}

double step_to_k0w0(const PhysicalUnits& u, double v0_eV) {
  require(v0_eV >= 0.0, "step height must be non-negative");
  if (v0_eV == 0.0) return 0.0;
  PhysicalUnits step = u;
  step.energy_eV = v0_eV;
  return units_to_kw0(step);
}

double tau_to_seconds(double tau, const PhysicalUnits& u) {
  require(u.waist_um > 0.0 && u.particle_mass > 0.0,
          "waist and mass must be positive");
  const double w0 = u.waist_um * 1e-6;
  return tau * u.particle_mass * kElectronMass * w0 * w0 / kHbar;
}

}  // namespace ghshift
