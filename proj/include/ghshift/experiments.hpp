#pragma once

// Parameter sweeps behind the 1D and 3D shift figures: synthesize the
// reflected profile, measure it and attach the applicable closed form.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghshift/analytic.hpp"
#include "ghshift/synth.hpp"

namespace ghshift::experiments {

enum class ScanKind { Fig1_1D, Fig3_3D_AboveV, Fig4_3D_BelowV, CriticalLinearity };

std::string_view to_string(ScanKind k);
/// Accepts fig1, fig3, fig4, critical (and the enum spellings).
std::optional<ScanKind> parse_scan_kind(std::string_view s);

struct ScanConfig {
  ScanKind kind = ScanKind::Fig1_1D;
  double kw0 = 500.0;
  /// (V0 - E)/E for 1D kinds, incidence angle in degrees for 3D kinds.
  std::vector<double> sweep;
  /// tau (1D) or zeta (3D).
  std::vector<double> evolution_values{0.5, 1.0, 2.0};
  bool peak = true;
  bool mean = true;
  double theta_c = 0.0;    ///< radians, Fig3 only
  double v0_over_e = 0.0;  ///< Fig4 only, > 1
  int grid_points = synth::kDefaultGridPoints;
  synth::Settings settings{};
};

/// Default sweeps: 61 points over (V0 - E)/E in [-0.2, 0.2]; theta_c +- 15
/// degrees; 5..85 degrees; a single critical point for CriticalLinearity.
/// `param` is theta_c in radians for Fig3 and V0/E for Fig4 (ignored otherwise).
ScanConfig default_config(ScanKind kind, double kw0, double param = 0.0);

/// Inclusive linspace with exact end points.
std::vector<double> linspace(double lo, double hi, int n);

struct ScanRow {
  double abscissa = 0.0;
  double evolution = 0.0;
  /// Measured shifts relative to the geometric position (-k w0 tau, or x* = 0).
  double measured_peak = 0.0;
  double measured_mean = 0.0;
  double symmetry_defect = 0.0;
  std::optional<double> predicted;
  std::optional<analytic::ShiftKind> prediction_kind;
  /// Estimator the prediction refers to: "peak" outside the critical zone,
  /// "mean" for the critical mean formulas.
  std::string prediction_target;
  bool in_validity_band = false;
  bool truncated = false;
  std::string error;  ///< empty on success

  bool ok() const noexcept { return error.empty(); }
};

/// Rows ordered by (abscissa, evolution). Per-row failures are recorded in
/// ScanRow::error and never abort the scan.
std::vector<ScanRow> run_scan(const ScanConfig& config);

/// Single row, for callers that drive their own sweeps.
ScanRow run_point(const ScanConfig& config, double abscissa, double evolution);

/// Excluded band around the critical point: (V0 - E)/E for 1D kinds, degrees
/// for Fig3. Fig4 has no critical point and returns (0, 0).
std::pair<double, double> validity_band(ScanKind kind, double kw0, double theta_c = 0.0);

struct AffineFit {
  double slope;
  double intercept;
  /// max |y_i - fit_i| / max |y_i|.
  double max_relative_residual;
};

/// Least-squares line through (x_i, y_i); needs two distinct abscissae.
AffineFit fit_affine(std::span<const double> x, std::span<const double> y);

}  // namespace ghshift::experiments
