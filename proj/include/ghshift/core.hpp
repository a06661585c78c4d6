#pragma once

// Adimensional parameter types shared by every other module. Lengths are in
// units of the beam waist w0, wave numbers are multiplied by w0, time is
// tau = hbar t / (m w0^2) and axial distance is zeta = z / (k w0^2).

#include <optional>
#include <string_view>

namespace ghshift {

enum class Regime { Above, Below, Critical };

std::string_view to_string(Regime r);

/// Relative half-width of the band |kw0 - k0w0| < eps * kw0 that is treated
/// as critical incidence when dispatching estimators.
inline constexpr double kDefaultCriticalEps = 1e-9;

/// One-dimensional incident packet: k w0, k0 w0 and the adimensional time.
class PacketSpec {
 public:
  double kw0() const noexcept { return kw0_; }
  double k0w0() const noexcept { return k0w0_; }
  double tau() const noexcept { return tau_; }

  /// Exact classification by the sign of kw0 - k0w0.
  Regime regime() const noexcept { return regime_; }

  /// Classification used to pick an estimator: Critical inside the band
  /// |kw0 - k0w0| < eps * kw0, otherwise the exact regime.
  Regime dispatch_regime(double eps = kDefaultCriticalEps) const noexcept;

  /// (V0 - E) / E = (k0^2 - k^2) / k^2, the abscissa of the 1D scans.
  double barrier_excess() const noexcept;

  /// delta in the near-critical parametrisation kw0 = k0w0 + delta / kw0.
  double near_critical_delta() const noexcept;

  PacketSpec with_tau(double tau) const;

  friend PacketSpec make_packet_spec(double kw0, double k0w0, double tau);

 private:
  PacketSpec(double kw0, double k0w0, double tau, Regime r)
      : kw0_(kw0), k0w0_(k0w0), tau_(tau), regime_(r) {}

  double kw0_;
  double k0w0_;
  double tau_;
  Regime regime_;
};

/// Throws DomainError unless kw0 > 0, k0w0 >= 0 and tau >= 0.
PacketSpec make_packet_spec(double kw0, double k0w0, double tau);

/// Packet whose step height is given through (V0 - E)/E >= -1.
PacketSpec packet_from_barrier_excess(double kw0, double barrier_excess,
                                      double tau);

/// Three-dimensional Gaussian beam hitting the step at incidence angle theta.
///
/// The step height enters only through sin2_theta_c = (E - V0)/E. For E > V0
/// this is sin^2 of the critical angle; for E < V0 it is negative and every
/// incidence angle gives total reflection.
class BeamSpec3D {
 public:
  static BeamSpec3D from_critical_angle(double kw0, double theta_c,
                                        double theta, double zeta);
  static BeamSpec3D from_v0_over_e(double kw0, double v0_over_e, double theta,
                                   double zeta);

  double kw0() const noexcept { return kw0_; }
  double theta() const noexcept { return theta_; }
  double zeta() const noexcept { return zeta_; }
  double sin2_theta_c() const noexcept { return sin2_theta_c_; }
  double v0_over_e() const noexcept { return 1.0 - sin2_theta_c_; }

  bool above_barrier() const noexcept { return sin2_theta_c_ > 0.0; }

  /// arcsin sqrt((E - V0)/E) when 0 < (E - V0)/E <= 1.
  std::optional<double> critical_angle() const;

  BeamSpec3D with_theta(double theta) const;
  BeamSpec3D with_zeta(double zeta) const;

 private:
  BeamSpec3D(double kw0, double sin2c, double theta, double zeta);

  double kw0_;
  double sin2_theta_c_;
  double theta_;
  double zeta_;
};

/// Laboratory description of the particle, used only for unit conversion.
struct PhysicalUnits {
  double energy_eV = 1.0;
  double waist_um = 1.0;
  double particle_mass = 1.0;  ///< multiples of the electron mass
};

/// sqrt(2 m E) / hbar * w0.
double units_to_kw0(const PhysicalUnits& u);

/// k0 w0 for a step of height v0_eV with the same mass and waist.
double step_to_k0w0(const PhysicalUnits& u, double v0_eV);

/// Physical time in seconds for the adimensional time tau.
double tau_to_seconds(double tau, const PhysicalUnits& u);

}  // namespace ghshift
