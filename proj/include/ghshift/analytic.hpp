#pragma once

// Closed forms: free packets, the first-order reflected packet, the shift and
// delay formulas, the critical-incidence mean values and the optical
// translation. Every shift is in units of w0; slopes are per unit tau (1D)
// or zeta (3D).

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghshift/core.hpp"

namespace ghshift::analytic {

using Complex = std::complex<double>;

enum class ShiftKind {
  VelocityChange,
  DelayTime,
  CriticalMean1D,
  AngularDeviation,
  GoosHanchen,
  CriticalMean3D,
  BelowBarrier3D,
};

std::string_view to_string(ShiftKind k);

/// shift(t) = intercept + slope * t, measured from the geometric-optics
/// position (-k w0 tau in 1D, x* = 0 in 3D).
struct ShiftPrediction {
  ShiftKind kind;
  double slope = 0.0;
  double intercept = 0.0;
  std::string validity;  ///< human-readable predicate under which it holds
  std::vector<std::pair<std::string, double>> derived;

  double value(double evolution) const { return intercept + slope * evolution; }
  std::optional<double> get(std::string_view name) const;
};

/// Free packet exp[i(kx - k^2 tau/2)] / sqrt(1 + 2 i tau) exp[-(x - k tau)^2 / (1 + 2 i tau)].
Complex incident_closed_form(const PacketSpec& spec, double x_over_w0);

/// Free 3D beam on the y = 0 slice, exp[-x^2 / (1 + 2 i zeta)] / (1 + 2 i zeta),
/// without the exp(i k z) carrier.
Complex incident_3d_closed_form(double zeta, double x_over_w0);

/// First-order reflected packet R(k) [1 + 4i (x + k tau) / (p (1 + 2 i tau))] psi_inc(-x),
/// p = sqrt(k^2 - k0^2) on the decaying branch.
/// Throws SingularExpansionError in the critical dispatch band.
Complex reflected_linearized(const PacketSpec& spec, double x_over_w0);

/// Half-width 10 / (k w0) of the excluded band in (V0 - E)/E.
double band_half_width_1d(double kw0);

/// Above-barrier slope 4 / sqrt(k^2 - k0^2); derived: k_tilde, velocity_ratio.
ShiftPrediction shift_velocity_change(const PacketSpec& spec);

/// Below-barrier offset 2 / sqrt(k0^2 - k^2); derived: tau0 (delay in tau units).
ShiftPrediction shift_delay_time(const PacketSpec& spec);

/// 2^(5/4) Gamma(5/4) / sqrt(pi).
double critical_coefficient();

/// <x + k0 tau> = critical_coefficient() / sqrt(k0 w0) (2 tau + 1).
ShiftPrediction critical_mean_1d(double k0w0, double tau);
/// Same, after checking that the packet lies in the critical dispatch band.
ShiftPrediction critical_mean_1d(const PacketSpec& spec);

/// x*-slope 4 sin(theta) / (k sqrt(sin^2 theta_c - sin^2 theta)); derived: theta_ref.
ShiftPrediction shift_angular_deviation(const BeamSpec3D& beam);

/// Offset 2 sin(theta) / (k sqrt(sin^2 theta - sin^2 theta_c)).
ShiftPrediction shift_goos_hanchen(const BeamSpec3D& beam);

/// <x*> = sqrt(tan theta_c) critical_coefficient() / sqrt(k w0) (2 zeta + 1).
ShiftPrediction critical_mean_3d(const BeamSpec3D& beam);

/// Offset 2 sin(theta) / (k sqrt((V0 - E)/E + sin^2 theta)).
ShiftPrediction shift_below_barrier_3d(const BeamSpec3D& beam);

struct OpticalEquivalent {
  double n_squared;               ///< E / (E - V0); negative below the barrier
  Complex n;                      ///< purely imaginary when n_squared < 0
  std::optional<double> theta_c;  ///< arcsin(1/n) when n >= 1
  Complex alpha_te;
  Complex alpha_tm;

  bool imaginary_index() const noexcept { return n_squared < 0.0; }
};

/// n^2 = E/(E - V0), alpha_TE = 2 tan(phi) with n sin(theta) = sin(phi),
/// alpha_TM = alpha_TE / (n^2 sin^2 theta - cos^2 theta). Throws ValidityError
/// for E = V0.
OpticalEquivalent optical_translate(const BeamSpec3D& beam);

}  // namespace ghshift::analytic
