#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ghshift/analytic.hpp"
#include "ghshift/cli.hpp"
#include "ghshift/coeffs.hpp"
#include "ghshift/errors.hpp"
#include "ghshift/experiments.hpp"
#include "ghshift/stats.hpp"
#include "ghshift/synth.hpp"

namespace ghshift::cli {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Common {
  std::string output = "csv";
  std::string out_file;
  int quad_panels = 24;
  int quad_nodes = 32;
  double spectral_half_width = 12.0;
  bool seed_free = false;

  synth::Settings settings() const {
    if (quad_panels < 1 || quad_nodes < 2 || !(spectral_half_width > 0.0))
      throw DomainError("quadrature flags must be positive");
    synth::Settings s;
    s.rule.panels = quad_panels;
    s.rule.nodes = quad_nodes;
    s.spectral_half_width = spectral_half_width;
    return s;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--output", c.output, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out-file", c.out_file, "write to PATH instead of stdout");
  sub->add_option("--quad-panels", c.quad_panels, "Gauss-Legendre panels")->capture_default_str();
  sub->add_option("--quad-nodes", c.quad_nodes, "nodes per panel")->capture_default_str();
  sub->add_option("--spectral-half-width", c.spectral_half_width,
                  "spectral support |kx - k| w0 <= H")
      ->capture_default_str();
  sub->add_flag("--seed-free", c.seed_free, "accepted for scripts; nothing is random");
}

/// Radians, or degrees with a "deg" suffix.
double parse_angle(const std::string& s) {
  std::string body = s;
  double scale = 1.0;
  if (body.size() > 3 && body.compare(body.size() - 3, 3, "deg") == 0) {
    body.resize(body.size() - 3);
    scale = kDeg;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(body, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != body.size() || !std::isfinite(v))
    throw DomainError("cannot parse angle '" + s + "'");
  return v * scale;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw DomainError(std::string("cannot parse ") + what + " list '" + s + "'");
    v.push_back(x);
  }
  if (v.empty()) throw DomainError(std::string("empty ") + what + " list");
  return v;
}

void record_parameters(const CLI::App* sub, OutputRecord& rec) {
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (opt->count() == 0 || name == "--help" || name == "--out-file") continue;
    std::string joined;
    for (const std::string& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
    rec.parameters.emplace_back(name.substr(name.find_first_not_of('-')), joined);
  }
}

using Row = std::vector<Cell>;

// predict and optical share a key/value schema.
void push_quantity(OutputRecord& rec, const std::string& name, Cell value, bool valid = true,
                   const std::string& message = {}) {
  rec.rows.push_back({name, std::move(value), valid, message});
}

void push_prediction(OutputRecord& rec, const std::string& kind,
                     const std::function<analytic::ShiftPrediction()>& make,
                     double evolution) {
  try {
    const analytic::ShiftPrediction p = make();
    push_quantity(rec, kind + ".slope", p.slope, true, p.validity);
    push_quantity(rec, kind + ".intercept", p.intercept, true, p.validity);
    push_quantity(rec, kind + ".value", p.value(evolution), true, p.validity);
    for (const auto& [name, v] : p.derived) push_quantity(rec, kind + "." + name, v, true, p.validity);
  } catch (const ValidityError& e) {
    push_quantity(rec, kind, std::monostate{}, false, e.what());
  }
}

void push_optical(OutputRecord& rec, double v0_over_e, std::optional<double> theta) {
  // Only the index depends on V0/E; the angle enters the alpha coefficients.
  const BeamSpec3D beam = BeamSpec3D::from_v0_over_e(
      1.0, v0_over_e, theta.value_or(std::numbers::pi / 4), 0.0);
  const analytic::OpticalEquivalent o = analytic::optical_translate(beam);
  push_quantity(rec, "optical.n_squared", o.n_squared);
  push_quantity(rec, "optical.n_re", o.n.real());
  push_quantity(rec, "optical.n_im", o.n.imag());
  push_quantity(rec, "optical.imaginary_index", o.imaginary_index(), true,
                o.imaginary_index() ? "E < V0: imaginary refractive index" : "");
  if (o.theta_c) {
    push_quantity(rec, "optical.theta_c", *o.theta_c);
    push_quantity(rec, "optical.theta_c_deg", *o.theta_c / kDeg);
  } else {
    push_quantity(rec, "optical.theta_c", std::monostate{}, false, "no critical angle");
  }
  if (theta) {
    push_quantity(rec, "optical.alpha_te_re", o.alpha_te.real());
    push_quantity(rec, "optical.alpha_te_im", o.alpha_te.imag());
    push_quantity(rec, "optical.alpha_tm_re", o.alpha_tm.real());
    push_quantity(rec, "optical.alpha_tm_im", o.alpha_tm.imag());
  }
}

double v0_over_e_from(const std::optional<std::string>& theta_c,
                      const std::optional<double>& ratio) {
  if (theta_c && ratio) throw DomainError("give either --theta-c or --ratio-v-over-e");
  if (ratio) return *ratio;
  if (theta_c) {
    const double s = std::sin(parse_angle(*theta_c));
    return 1.0 - s * s;
  }
  throw DomainError("the step needs --theta-c or --ratio-v-over-e");
}

BeamSpec3D make_beam(double kw0, const std::optional<std::string>& theta_c,
                     const std::optional<double>& ratio, double theta, double zeta) {
  if (theta_c && !ratio)
    return BeamSpec3D::from_critical_angle(kw0, parse_angle(*theta_c), theta, zeta);
  return BeamSpec3D::from_v0_over_e(kw0, v0_over_e_from(theta_c, ratio), theta, zeta);
}

// ---------------------------------------------------------------- packet1d

struct Packet1dArgs {
  double kw0 = 0.0;
  double k0w0 = 0.0;
  double tau = 0.0;
  int grid_points = synth::kDefaultGridPoints;
  std::string which = "all";
};

OutputRecord cmd_packet1d(const Packet1dArgs& a, const Common& c) {
  const PacketSpec spec = make_packet_spec(a.kw0, a.k0w0, a.tau);
  const synth::Settings settings = c.settings();
  OutputRecord rec{"packet1d", {}, {"component", "x_over_w0", "intensity", "re", "im"}, {}};
  const std::pair<const char*, synth::Component> all[] = {
      {"incident", synth::Component::Incident},
      {"reflected", synth::Component::Reflected},
      {"transmitted", synth::Component::Transmitted}};
  for (const auto& [name, comp] : all) {
    if (a.which != "all" && a.which != name) continue;
    const synth::Grid1D grid = synth::default_grid_1d(comp, spec, a.grid_points);
    const synth::FieldProfile f = synth::synthesize_1d(comp, spec, grid, settings);
    for (int i = 0; i < grid.size(); ++i) {
      const auto& v = f.values[i];
      rec.rows.push_back({std::string(name), grid.x(i), std::norm(v), v.real(), v.imag()});
    }
  }
  return rec;
}

// -------------------------------------------------------------------- scan

struct ScanArgs {
  std::string kind;
  double kw0 = 500.0;
  std::optional<std::string> sweep;
  std::optional<double> sweep_lo, sweep_hi;
  int sweep_points = 61;
  std::optional<std::string> theta_c;
  std::optional<double> ratio;
  std::optional<double> sqrt_ratio;
  std::string evolution = "0.5,1,2";
  std::string estimators = "peak,mean";
  int grid_points = synth::kDefaultGridPoints;
};

OutputRecord cmd_scan(const ScanArgs& a, const Common& c) {
  const auto kind = experiments::parse_scan_kind(a.kind);
  if (!kind) throw DomainError("unknown scan kind '" + a.kind + "'");
  if (a.ratio && a.sqrt_ratio)
    throw DomainError("give either --ratio-v-over-e or --sqrt-v0-over-e");
  double param = 0.0;
  if (*kind == experiments::ScanKind::Fig3_3D_AboveV && a.theta_c) param = parse_angle(*a.theta_c);
  if (*kind == experiments::ScanKind::Fig4_3D_BelowV) {
    if (a.ratio) param = *a.ratio;
    if (a.sqrt_ratio) param = *a.sqrt_ratio * *a.sqrt_ratio;
  }
  experiments::ScanConfig cfg = experiments::default_config(*kind, a.kw0, param);
  if (a.sweep) {
    cfg.sweep = parse_list(*a.sweep, "sweep");
  } else if (a.sweep_lo || a.sweep_hi) {
    if (!a.sweep_lo || !a.sweep_hi) throw DomainError("--sweep-lo and --sweep-hi go together");
    cfg.sweep = experiments::linspace(*a.sweep_lo, *a.sweep_hi, a.sweep_points);
  } else if (a.sweep_points != 61 && cfg.sweep.size() > 1) {
    cfg.sweep = experiments::linspace(cfg.sweep.front(), cfg.sweep.back(), a.sweep_points);
  }
  cfg.evolution_values = parse_list(a.evolution, "evolution");
  cfg.peak = a.estimators.find("peak") != std::string::npos;
  cfg.mean = a.estimators.find("mean") != std::string::npos;
  if (!cfg.peak && !cfg.mean) throw DomainError("--estimators must name peak and/or mean");
  cfg.grid_points = a.grid_points;
  cfg.settings = c.settings();

  OutputRecord rec{"scan",
                   {},
                   {"abscissa", "evolution", "measured_peak", "measured_mean", "symmetry_defect",
                    "predicted", "prediction_kind", "prediction_target", "in_validity_band",
                    "truncated", "status"},
                   {}};
  for (const experiments::ScanRow& r : experiments::run_scan(cfg)) {
    Row row{r.abscissa, r.evolution};
    if (r.ok()) {
      row.push_back(r.measured_peak);
      row.push_back(r.measured_mean);
      row.push_back(r.symmetry_defect);
    } else {
      row.insert(row.end(), 3, std::monostate{});
    }
    row.push_back(r.predicted ? Cell{*r.predicted} : Cell{});
    row.push_back(r.prediction_kind ? Cell{std::string(analytic::to_string(*r.prediction_kind))}
                                    : Cell{});
    row.push_back(r.prediction_target);
    row.push_back(r.in_validity_band);
    row.push_back(r.truncated);
    row.push_back(r.ok() ? std::string("ok") : r.error);
    rec.rows.push_back(std::move(row));
  }
  return rec;
}

// ----------------------------------------------------------------- predict

struct PredictArgs {
  std::optional<double> kw0;
  std::optional<double> k0w0;
  double tau = 0.0;
  std::string regime = "auto";
  std::optional<std::string> theta_c;
  std::optional<std::string> theta;
  std::optional<double> ratio;
  double zeta = 0.0;
  bool optical = false;
};

OutputRecord cmd_predict(const PredictArgs& a) {
  OutputRecord rec{"predict", {}, {"quantity", "value", "valid", "message"}, {}};
  bool any = false;
  if (a.k0w0) {
    if (!a.kw0) throw DomainError("1D predictions need --kw0");
    const PacketSpec spec = make_packet_spec(*a.kw0, *a.k0w0, a.tau);
    std::string r = a.regime;
    if (r == "auto") r = std::string(to_string(spec.dispatch_regime()));
    if (r == "above")
      push_prediction(rec, "velocity_change", [&] { return analytic::shift_velocity_change(spec); }, a.tau);
    else if (r == "below")
      push_prediction(rec, "delay_time", [&] { return analytic::shift_delay_time(spec); }, a.tau);
    else if (r == "critical")
      push_prediction(rec, "critical_mean_1d", [&] { return analytic::critical_mean_1d(spec); }, a.tau);
    else
      throw DomainError("--regime must be auto, above, below or critical");
    any = true;
  }
  if (a.theta) {
    if (!a.kw0) throw DomainError("3D predictions need --kw0");
    const BeamSpec3D beam = make_beam(*a.kw0, a.theta_c, a.ratio, parse_angle(*a.theta), a.zeta);
    std::string kind;
    std::function<analytic::ShiftPrediction()> make;
    if (!beam.above_barrier()) {
      kind = "below_barrier_3d";
      make = [&] { return analytic::shift_below_barrier_3d(beam); };
    } else {
      const double tc = beam.critical_angle().value_or(std::numbers::pi / 2);
      const double band = coeffs::critical_band_half_width(beam);
      if (std::abs(beam.theta() - tc) < band) {
        kind = "critical_mean_3d";
        make = [&] { return analytic::critical_mean_3d(beam); };
      } else if (beam.theta() < tc) {
        kind = "angular_deviation";
        make = [&] { return analytic::shift_angular_deviation(beam); };
      } else {
        kind = "goos_hanchen";
        make = [&] { return analytic::shift_goos_hanchen(beam); };
      }
    }
    push_prediction(rec, kind, make, a.zeta);
    any = true;
  }
  if (a.optical) {
    push_optical(rec, v0_over_e_from(a.theta_c, a.ratio),
                 a.theta ? std::optional<double>(parse_angle(*a.theta)) : std::nullopt);
    any = true;
  }
  if (!any)
    throw DomainError("nothing to predict: give --k0w0 (1D), --theta (3D) or --optical");
  return rec;
}

// ----------------------------------------------------------- critical-mean

struct CriticalArgs {
  std::optional<double> k0w0;
  std::optional<double> kw0;
  std::optional<std::string> theta_c;
  std::string evolution = "0.5,1,2";
  bool measure = false;
  int grid_points = synth::kDefaultGridPoints;
};

OutputRecord cmd_critical_mean(const CriticalArgs& a, const Common& c) {
  const synth::Settings settings = c.settings();
  const std::vector<double> ev = parse_list(a.evolution, "evolution");
  OutputRecord rec{"critical-mean",
                   {},
                   {"evolution", "predicted", "measured_mean", "spectral_mean", "coefficient",
                    "truncated"},
                   {}};
  if (a.k0w0 && a.theta_c) throw DomainError("give --k0w0 (1D) or --kw0 with --theta-c (3D)");
  if (a.k0w0) {
    for (double tau : ev) {
      const PacketSpec spec = make_packet_spec(*a.k0w0, *a.k0w0, tau);
      const auto p = analytic::critical_mean_1d(spec);
      Row row{tau, p.value(tau)};
      if (a.measure) {
        const auto grid = synth::default_grid_1d(synth::Component::Reflected, spec, a.grid_points);
        const auto prof = synth::profile_1d(synth::Component::Reflected, spec, grid, settings);
        const auto m = stats::mean_position(prof);
        row.push_back(m.mean + spec.kw0() * tau);
        row.push_back(synth::reflected_centroid_spectral(spec, settings));
        row.push_back(analytic::critical_coefficient());
        row.push_back(m.truncated);
      } else {
        row.insert(row.end(), {std::monostate{}, std::monostate{}, analytic::critical_coefficient(),
                               std::monostate{}});
      }
      rec.rows.push_back(std::move(row));
    }
    return rec;
  }
  if (!a.kw0 || !a.theta_c) throw DomainError("critical-mean needs --k0w0, or --kw0 and --theta-c");
  const double tc = parse_angle(*a.theta_c);
  for (double zeta : ev) {
    const BeamSpec3D beam = BeamSpec3D::from_critical_angle(*a.kw0, tc, tc, zeta);
    const auto p = analytic::critical_mean_3d(beam);
    Row row{zeta, p.value(zeta)};
    if (a.measure) {
      const auto prof =
          synth::reflected_3d_profile(beam, synth::default_grid_3d(beam, a.grid_points), settings);
      const auto m = stats::mean_position(prof);
      row.push_back(m.mean);
      row.push_back(std::monostate{});
      row.push_back(analytic::critical_coefficient());
      row.push_back(m.truncated);
    } else {
      row.insert(row.end(), {std::monostate{}, std::monostate{}, analytic::critical_coefficient(),
                             std::monostate{}});
    }
    rec.rows.push_back(std::move(row));
  }
  return rec;
}

// ----------------------------------------------------------------- optical

struct OpticalArgs {
  std::optional<double> ratio;
  std::optional<std::string> theta_c;
  std::optional<std::string> theta;
};

OutputRecord cmd_optical(const OpticalArgs& a) {
  OutputRecord rec{"optical", {}, {"quantity", "value", "valid", "message"}, {}};
  push_optical(rec, v0_over_e_from(a.theta_c, a.ratio),
               a.theta ? std::optional<double>(parse_angle(*a.theta)) : std::nullopt);
  return rec;
}

void emit(const OutputRecord& rec, const Common& c, std::ostream& out) {
  auto write = [&](std::ostream& os) {
    if (c.output == "json")
      write_json(os, rec);
    else
      write_csv(os, rec);
  };
  if (c.out_file.empty()) {
    write(out);
    return;
  }
  std::ofstream f(c.out_file, std::ios::binary);
  if (!f) throw DomainError("cannot open output file '" + c.out_file + "'");
  write(f);
  if (!f) throw DomainError("failed writing '" + c.out_file + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian wave packets on a potential step: synthesis, shifts, scans"};
  app.name("ghshift");
  app.require_subcommand(1);

  Common common;

  Packet1dArgs pk;
  CLI::App* packet = app.add_subcommand("packet1d", "incident/reflected/transmitted 1D packet");
  packet->add_option("--kw0", pk.kw0, "k w0")->required();
  packet->add_option("--k0w0", pk.k0w0, "k0 w0 (step height)")->capture_default_str();
  packet->add_option("--tau", pk.tau, "adimensional time")->capture_default_str();
  packet->add_option("--grid-points", pk.grid_points)->capture_default_str();
  packet->add_option("--which", pk.which)
      ->check(CLI::IsMember({"incident", "reflected", "transmitted", "all"}))
      ->capture_default_str();
  add_common(packet, common);

  ScanArgs sc;
  CLI::App* scan = app.add_subcommand("scan", "figure sweeps: fig1, fig3, fig4, critical");
  scan->add_option("--kind", sc.kind, "fig1 | fig3 | fig4 | critical")->required();
  scan->add_option("--kw0", sc.kw0)->capture_default_str();
  scan->add_option("--sweep", sc.sweep, "comma-separated abscissae");
  scan->add_option("--sweep-lo", sc.sweep_lo);
  scan->add_option("--sweep-hi", sc.sweep_hi);
  scan->add_option("--sweep-points", sc.sweep_points)->capture_default_str();
  scan->add_option("--theta-c", sc.theta_c, "critical angle (fig3), radians or NNdeg");
  scan->add_option("--ratio-v-over-e", sc.ratio, "V0/E (fig4)");
  scan->add_option("--sqrt-v0-over-e", sc.sqrt_ratio, "sqrt(V0/E) (fig4)");
  scan->add_option("--evolution", sc.evolution, "tau or zeta values")->capture_default_str();
  scan->add_option("--estimators", sc.estimators)->capture_default_str();
  scan->add_option("--grid-points", sc.grid_points)->capture_default_str();
  add_common(scan, common);

  PredictArgs pr;
  CLI::App* predict = app.add_subcommand("predict", "closed-form shift predictions");
  predict->add_option("--kw0", pr.kw0);
  predict->add_option("--k0w0", pr.k0w0);
  predict->add_option("--tau", pr.tau)->capture_default_str();
  predict->add_option("--regime", pr.regime, "auto | above | below | critical")
      ->capture_default_str();
  predict->add_option("--theta-c", pr.theta_c);
  predict->add_option("--theta", pr.theta);
  predict->add_option("--ratio-v-over-e", pr.ratio, "V0/E");
  predict->add_option("--zeta", pr.zeta)->capture_default_str();
  predict->add_flag("--optical", pr.optical, "add the optical translation");
  add_common(predict, common);

  CriticalArgs cr;
  CLI::App* critical = app.add_subcommand("critical-mean", "mean shift at critical incidence");
  critical->add_option("--k0w0", cr.k0w0, "1D: k w0 = k0 w0");
  critical->add_option("--kw0", cr.kw0, "3D: k w0");
  critical->add_option("--theta-c", cr.theta_c, "3D: critical angle, radians or NNdeg");
  critical->add_option("--evolution,--tau,--zeta", cr.evolution)->capture_default_str();
  critical->add_flag("--measure", cr.measure, "also synthesize and measure the mean");
  critical->add_option("--grid-points", cr.grid_points)->capture_default_str();
  add_common(critical, common);

  OpticalArgs op;
  CLI::App* optical = app.add_subcommand("optical", "quantum to optics translation");
  optical->add_option("--ratio-v-over-e", op.ratio, "V0/E");
  optical->add_option("--theta-c", op.theta_c);
  optical->add_option("--theta", op.theta);
  add_common(optical, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << sub->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ghshift: " << e.what() << '\n';
    return kUsage;
  }

  try {
    OutputRecord rec;
    CLI::App* used = app.get_subcommands().front();
    if (used == packet)
      rec = cmd_packet1d(pk, common);
    else if (used == scan)
      rec = cmd_scan(sc, common);
    else if (used == predict)
      rec = cmd_predict(pr);
    else if (used == critical)
      rec = cmd_critical_mean(cr, common);
    else
      rec = cmd_optical(op);
    record_parameters(used, rec);
    emit(rec, common, out);
    return kOk;
  } catch (const DomainError& e) {
    err << "ghshift: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidityError& e) {
    err << "ghshift: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "ghshift: numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "ghshift: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace ghshift::cli
