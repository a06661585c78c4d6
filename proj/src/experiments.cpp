#include "ghshift/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ghshift/coeffs.hpp"
#include "ghshift/errors.hpp"
#include "ghshift/parallel.hpp"
#include "ghshift/stats.hpp"

namespace ghshift::experiments {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void attach_1d(ScanRow& row, const PacketSpec& spec, double kw0) {
  const double band = analytic::band_half_width_1d(kw0);
  if (spec.dispatch_regime() == Regime::Critical) {
    const auto p = analytic::critical_mean_1d(spec);
    row.predicted = p.value(spec.tau());
    row.prediction_kind = p.kind;
    row.prediction_target = "mean";
    return;
  }
  if (std::abs(spec.barrier_excess()) < band * (1.0 - 1e-12)) return;
  row.in_validity_band = true;
  const auto p = spec.regime() == Regime::Below ? analytic::shift_delay_time(spec)
                                                : analytic::shift_velocity_change(spec);
  row.predicted = p.value(spec.tau());
  row.prediction_kind = p.kind;
  row.prediction_target = "peak";
}

void attach_3d(ScanRow& row, const BeamSpec3D& beam) {
  if (!beam.above_barrier()) {
    const auto p = analytic::shift_below_barrier_3d(beam);
    row.in_validity_band = true;
    row.predicted = p.value(beam.zeta());
    row.prediction_kind = p.kind;
    row.prediction_target = "peak";
    return;
  }
  const double tc = *beam.critical_angle();
  const double band = coeffs::critical_band_half_width(beam);
  const double d = beam.theta() - tc;
  analytic::ShiftPrediction p;
  if (std::abs(d) < band) {
    p = analytic::critical_mean_3d(beam);
    row.prediction_target = "mean";
  } else {
    p = d < 0.0 ? analytic::shift_angular_deviation(beam) : analytic::shift_goos_hanchen(beam);
    row.in_validity_band = true;
    row.prediction_target = "peak";
  }
  row.predicted = p.value(beam.zeta());
  row.prediction_kind = p.kind;
}

void measure(ScanRow& row, const ScanConfig& cfg, const synth::BeamProfile& profile,
             double reference) {
  if (cfg.peak) row.measured_peak = stats::peak_position(profile) - reference;
  const stats::MeanEstimate m = stats::mean_position(profile);
  if (cfg.mean) row.measured_mean = m.mean - reference;
  row.truncated = m.truncated;
  row.symmetry_defect = stats::symmetry_defect(profile);
  if (!cfg.peak) row.measured_peak = std::nan("");
  if (!cfg.mean) row.measured_mean = std::nan("");
}

}  // namespace

std::string_view to_string(ScanKind k) {
  switch (k) {
    case ScanKind::Fig1_1D: return "fig1";
    case ScanKind::Fig3_3D_AboveV: return "fig3";
    case ScanKind::Fig4_3D_BelowV: return "fig4";
    case ScanKind::CriticalLinearity: return "critical";
  }
  return "unknown";
}

std::optional<ScanKind> parse_scan_kind(std::string_view s) {
  if (s == "fig1" || s == "Fig1_1D") return ScanKind::Fig1_1D;
  if (s == "fig3" || s == "Fig3_3D_AboveV") return ScanKind::Fig3_3D_AboveV;
  if (s == "fig4" || s == "Fig4_3D_BelowV") return ScanKind::Fig4_3D_BelowV;
  if (s == "critical" || s == "CriticalLinearity") return ScanKind::CriticalLinearity;
  return std::nullopt;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw DomainError("linspace: need at least one point");
  if (n == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  return v;
}

ScanConfig default_config(ScanKind kind, double kw0, double param) {
  ScanConfig c;
  c.kind = kind;
  c.kw0 = kw0;
  switch (kind) {
    case ScanKind::Fig1_1D: c.sweep = linspace(-0.2, 0.2, 61); break;
    case ScanKind::Fig3_3D_AboveV: {
      c.theta_c = param > 0.0 ? param : std::atan(1.0);
      const double tc = c.theta_c / kDeg;
      c.sweep = linspace(tc - 15.0, tc + 15.0, 61);
      break;
    }
    case ScanKind::Fig4_3D_BelowV:
      c.v0_over_e = param > 0.0 ? param : 1.1 * 1.1;
      c.sweep = linspace(5.0, 85.0, 61);
      break;
    case ScanKind::CriticalLinearity: c.sweep = {0.0}; break;
  }
  return c;
}

ScanRow run_point(const ScanConfig& cfg, double abscissa, double evolution) {
  ScanRow row;
  row.abscissa = abscissa;
  row.evolution = evolution;
  try {
    switch (cfg.kind) {
      case ScanKind::Fig1_1D:
      case ScanKind::CriticalLinearity: {
        const PacketSpec spec = packet_from_barrier_excess(cfg.kw0, abscissa, evolution);
        attach_1d(row, spec, cfg.kw0);
        const auto grid = synth::default_grid_1d(synth::Component::Reflected, spec,
                                                 cfg.grid_points);
        const auto profile =
            synth::profile_1d(synth::Component::Reflected, spec, grid, cfg.settings);
        measure(row, cfg, profile, -spec.kw0() * spec.tau());
        break;
      }
      case ScanKind::Fig3_3D_AboveV:
      case ScanKind::Fig4_3D_BelowV: {
        const BeamSpec3D beam =
            cfg.kind == ScanKind::Fig3_3D_AboveV
                ? BeamSpec3D::from_critical_angle(cfg.kw0, cfg.theta_c, abscissa * kDeg,
                                                  evolution)
                : BeamSpec3D::from_v0_over_e(cfg.kw0, cfg.v0_over_e, abscissa * kDeg,
                                             evolution);
        attach_3d(row, beam);
        const auto grid = synth::default_grid_3d(beam, cfg.grid_points);
        measure(row, cfg, synth::reflected_3d_profile(beam, grid, cfg.settings), 0.0);
        break;
      }
    }
  } catch (const NumericError& e) {
    row.error = std::string("numeric: ") + e.what();
  } catch (const WindowError& e) {
    row.error = std::string("window: ") + e.what();
  } catch (const DegenerateError& e) {
    row.error = std::string("degenerate: ") + e.what();
  } catch (const DomainError& e) {
    row.error = std::string("domain: ") + e.what();
  } catch (const std::exception& e) {
    row.error = std::string("error: ") + e.what();
  }
  return row;
}

std::vector<ScanRow> run_scan(const ScanConfig& cfg) {
  if (!(cfg.kw0 > 0.0)) throw DomainError("scan: kw0 must be positive");
  if (cfg.sweep.empty() || cfg.evolution_values.empty())
    throw DomainError("scan: empty sweep");
  for (std::size_t i = 1; i < cfg.sweep.size(); ++i)
    if (!(cfg.sweep[i] > cfg.sweep[i - 1]))
      throw DomainError("scan: sweep must be strictly increasing");
  for (double t : cfg.evolution_values)
    if (!(t > 0.0)) throw DomainError("scan: evolution values must be positive");
  if (cfg.kind == ScanKind::Fig3_3D_AboveV && !(cfg.theta_c > 0.0))
    throw DomainError("scan: fig3 needs a critical angle");
  if (cfg.kind == ScanKind::Fig4_3D_BelowV && !(cfg.v0_over_e > 1.0))
    throw DomainError("scan: fig4 needs V0/E > 1");

  std::vector<double> ev = cfg.evolution_values;
  std::sort(ev.begin(), ev.end());
  const std::size_t ne = ev.size();
  std::vector<ScanRow> rows(cfg.sweep.size() * ne);
  parallel_for(rows.size(), [&](std::size_t i) {
    rows[i] = run_point(cfg, cfg.sweep[i / ne], ev[i % ne]);
  });
  return rows;
}

std::pair<double, double> validity_band(ScanKind kind, double kw0, double theta_c) {
  if (!(kw0 > 0.0)) throw DomainError("validity_band: kw0 must be positive");
  switch (kind) {
    case ScanKind::Fig1_1D:
    case ScanKind::CriticalLinearity: {
      const double b = analytic::band_half_width_1d(kw0);
      return {-b, b};
    }
    case ScanKind::Fig3_3D_AboveV: {
      const double b = 10.0 / (kw0 * std::cos(theta_c));
      return {(theta_c - b) / kDeg, (theta_c + b) / kDeg};
    }
    case ScanKind::Fig4_3D_BelowV: return {0.0, 0.0};
  }
  return {0.0, 0.0};
}

AffineFit fit_affine(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("fit_affine: need matching samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateError("fit_affine: abscissae coincide");
  AffineFit f{sxy / sxx, 0.0, 0.0};
  f.intercept = my - f.slope * mx;
  double ymax = 0.0, rmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ymax = std::max(ymax, std::abs(y[i]));
    rmax = std::max(rmax, std::abs(y[i] - (f.intercept + f.slope * x[i])));
  }
  f.max_relative_residual = ymax > 0.0 ? rmax / ymax : 0.0;
  return f;
}

}  // namespace ghshift::experiments
