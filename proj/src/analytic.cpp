#include "ghshift/analytic.hpp"

#include <cmath>
#include <numbers>

#include "ghshift/coeffs.hpp"
#include "ghshift/errors.hpp"

namespace ghshift::analytic {

namespace {

// Band edges count as inside the region where the first-order formulas hold.
constexpr double kBandSlack = 1e-12;

const Complex kI{0.0, 1.0};

void require_1d_band(const PacketSpec& spec, Regime want, const char* who) {
  const double excess = spec.barrier_excess();
  const double band = band_half_width_1d(spec.kw0());
  const bool side = want == Regime::Above ? spec.regime() == Regime::Above
                                          : spec.regime() == Regime::Below;
  if (!side || std::abs(excess) < band * (1.0 - kBandSlack)) {
    throw ValidityError(std::string(who) + ": requires " +
                        (want == Regime::Above ? "(E - V0)/E" : "(V0 - E)/E") +
                        " >= 10/(k w0) = " + std::to_string(band) +
                        "; got (V0 - E)/E = " + std::to_string(excess));
  }
}

double critical_angle_or_throw(const BeamSpec3D& beam, const char* who) {
  const auto tc = beam.critical_angle();
  if (!beam.above_barrier() || !tc)
    throw ValidityError(std::string(who) + ": requires E > V0");
  return *tc;
}

void require_outside_critical_band(const BeamSpec3D& beam, double theta_c,
                                   bool below, const char* who) {
  const double band = coeffs::critical_band_half_width(beam);
  const double d = beam.theta() - theta_c;
  const bool side = below ? d < 0.0 : d > 0.0;
  if (!side || std::abs(d) < band * (1.0 - kBandSlack)) {
    throw ValidityError(std::string(who) + ": requires theta " +
                        (below ? "below" : "above") +
                        " theta_c by at least 10/(k w0 cos theta_c) = " +
                        std::to_string(band) + " rad");
  }
}

}  // namespace

std::string_view to_string(ShiftKind k) {
  switch (k) {
    case ShiftKind::VelocityChange: return "velocity_change";
    case ShiftKind::DelayTime: return "delay_time";
    case ShiftKind::CriticalMean1D: return "critical_mean_1d";
    case ShiftKind::AngularDeviation: return "angular_deviation";
    case ShiftKind::GoosHanchen: return "goos_hanchen";
    case ShiftKind::CriticalMean3D: return "critical_mean_3d";
    case ShiftKind::BelowBarrier3D: return "below_barrier_3d";
  }
  return "unknown";
}

std::optional<double> ShiftPrediction::get(std::string_view name) const {
  for (const auto& [key, v] : derived)
    if (key == name) return v;
  return std::nullopt;
}

Complex incident_closed_form(const PacketSpec& spec, double x) {
  const double k = spec.kw0();
  const double tau = spec.tau();
  const Complex den(1.0, 2.0 * tau);
  const double d = x - k * tau;
  return std::polar(1.0, k * x - 0.5 * k * k * tau) / std::sqrt(den) *
         std::exp(-d * d / den);
}

Complex incident_3d_closed_form(double zeta, double x) {
  const Complex den(1.0, 2.0 * zeta);
  return std::exp(-x * x / den) / den;
}

Complex reflected_linearized(const PacketSpec& spec, double x) {
  if (spec.dispatch_regime() == Regime::Critical)
    throw SingularExpansionError(
        "reflected_linearized: k = k0, the first-order expansion diverges; use the mean value");
  const double k = spec.kw0();
  const double tau = spec.tau();
  const Complex r = coeffs::reflection_1d(k, spec.k0w0());
  const Complex p = coeffs::transmitted_wavenumber_1d(k, spec.k0w0());
  const Complex den(1.0, 2.0 * tau);
  const Complex factor = r * (1.0 + 4.0 * kI * (x + k * tau) / (p * den));
  return factor * incident_closed_form(spec, -x);
}

double band_half_width_1d(double kw0) {
  if (!(kw0 > 0.0)) throw DomainError("kw0 must be positive");
  return 10.0 / kw0;
}

ShiftPrediction shift_velocity_change(const PacketSpec& spec) {
  require_1d_band(spec, Regime::Above, "shift_velocity_change");
  const double k = spec.kw0();
  const double p = std::sqrt((k - spec.k0w0()) * (k + spec.k0w0()));
  const double slope = 4.0 / p;
  return {ShiftKind::VelocityChange,
          slope,
          0.0,
          "E > V0 and (E - V0)/E >= 10/(k w0)",
          {{"k_tilde_w0", k - slope}, {"velocity_ratio", 1.0 - slope / k}}};
}

ShiftPrediction shift_delay_time(const PacketSpec& spec) {
  require_1d_band(spec, Regime::Below, "shift_delay_time");
  const double k = spec.kw0();
  const double s = std::sqrt((spec.k0w0() - k) * (spec.k0w0() + k));
  return {ShiftKind::DelayTime,
          0.0,
          2.0 / s,
          "E < V0 and (V0 - E)/E >= 10/(k w0)",
          {{"tau0", 2.0 / (k * s)}}};
}

double critical_coefficient() {
  static const double c =
      std::pow(2.0, 1.25) * std::tgamma(1.25) * std::numbers::inv_sqrtpi;
  return c;
}

ShiftPrediction critical_mean_1d(double k0w0, double tau) {
  if (!(k0w0 > 0.0)) throw DomainError("critical_mean_1d: k0 w0 must be positive");
  if (!(tau >= 0.0)) throw DomainError("critical_mean_1d: tau must be non-negative");
  const double c = critical_coefficient() / std::sqrt(k0w0);
  return {ShiftKind::CriticalMean1D,
          2.0 * c,
          c,
          "k = k0",
          {{"tau", tau}, {"mean_shift", c * (2.0 * tau + 1.0)}}};
}

ShiftPrediction critical_mean_1d(const PacketSpec& spec) {
  if (spec.dispatch_regime() != Regime::Critical)
    throw ValidityError("critical_mean_1d: requires |k - k0| < 1e-9 k");
  return critical_mean_1d(spec.k0w0(), spec.tau());
}

ShiftPrediction shift_angular_deviation(const BeamSpec3D& beam) {
  const double tc = critical_angle_or_throw(beam, "shift_angular_deviation");
  require_outside_critical_band(beam, tc, true, "shift_angular_deviation");
  const double k = beam.kw0();
  const double st = std::sin(beam.theta());
  const double slope = 4.0 * st / (k * std::sqrt(beam.sin2_theta_c() - st * st));
  return {ShiftKind::AngularDeviation,
          slope,
          0.0,
          "E > V0 and theta < theta_c - 10/(k w0 cos theta_c)",
          {{"theta_ref", beam.theta() + slope / k}}};
}

ShiftPrediction shift_goos_hanchen(const BeamSpec3D& beam) {
  const double tc = critical_angle_or_throw(beam, "shift_goos_hanchen");
  require_outside_critical_band(beam, tc, false, "shift_goos_hanchen");
  const double st = std::sin(beam.theta());
  return {ShiftKind::GoosHanchen,
          0.0,
          2.0 * st / (beam.kw0() * std::sqrt(st * st - beam.sin2_theta_c())),
          "E > V0 and theta > theta_c + 10/(k w0 cos theta_c)",
          {}};
}

ShiftPrediction critical_mean_3d(const BeamSpec3D& beam) {
  const double tc = critical_angle_or_throw(beam, "critical_mean_3d");
  const double band = coeffs::critical_band_half_width(beam);
  if (!(std::abs(beam.theta() - tc) < band))
    throw ValidityError("critical_mean_3d: theta must lie within " +
                        std::to_string(band) + " rad of theta_c");
  const double c = std::sqrt(std::tan(tc)) * critical_coefficient() / std::sqrt(beam.kw0());
  return {ShiftKind::CriticalMean3D,
          2.0 * c,
          c,
          "|theta - theta_c| < 10/(k w0 cos theta_c)",
          {{"zeta", beam.zeta()}, {"mean_shift", c * (2.0 * beam.zeta() + 1.0)}}};
}

ShiftPrediction shift_below_barrier_3d(const BeamSpec3D& beam) {
  if (beam.above_barrier() || beam.sin2_theta_c() == 0.0)
    throw ValidityError("shift_below_barrier_3d: requires E < V0");
  const double st = std::sin(beam.theta());
  return {ShiftKind::BelowBarrier3D,
          0.0,
          2.0 * st / (beam.kw0() * std::sqrt(-beam.sin2_theta_c() + st * st)),
          "E < V0",
          {}};
}

OpticalEquivalent optical_translate(const BeamSpec3D& beam) {
  const double inv_n2 = beam.sin2_theta_c();  // (E - V0)/E
  if (inv_n2 == 0.0)
    throw ValidityError("optical_translate: E = V0 has no finite refractive index");
  OpticalEquivalent o;
  o.n_squared = 1.0 / inv_n2;
  o.n = o.n_squared > 0.0 ? Complex(std::sqrt(o.n_squared), 0.0)
                          : Complex(0.0, std::sqrt(-o.n_squared));
  if (o.n_squared >= 1.0) o.theta_c = std::asin(1.0 / o.n.real());
  const double st = std::sin(beam.theta());
  const double ct = std::cos(beam.theta());
  // 2 tan(phi) = 2 sin(theta) / sqrt(1/n^2 - sin^2 theta), the beam's own
  // linear reflection coefficient per unit kx/k.
  o.alpha_te = 2.0 * st / coeffs::branch_sqrt(inv_n2 - st * st);
  o.alpha_tm = o.alpha_te / (o.n_squared * st * st - ct * ct);
  return o;
}

}  // namespace ghshift::analytic
