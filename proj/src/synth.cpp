#include "ghshift/synth.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numbers>
#include <string>

#include "ghshift/coeffs.hpp"
#include "ghshift/errors.hpp"
#include "ghshift/parallel.hpp"

namespace ghshift::synth {

namespace {

constexpr double kInvTwoSqrtPi = 0.5 * std::numbers::inv_sqrtpi;

double spectral_weight(double u) { return kInvTwoSqrtPi * std::exp(-0.25 * u * u); }

// value(D) = sum_j c_j exp(i a_j D) exp(-b_j D)
struct SpectralSum {
  std::vector<double> rate;
  std::vector<double> decay;  // empty unless rates are complex
  std::vector<double> cre, cim;
  double l1 = 0.0;

  void push(double a, Complex c, double b = 0.0) {
    rate.push_back(a);
    cre.push_back(c.real());
    cim.push_back(c.imag());
    l1 += std::abs(c);
    if (b != 0.0 || !decay.empty()) {
      decay.resize(rate.size() - 1, 0.0);
      decay.push_back(b);
    }
  }

  Complex operator()(double d) const {
    double re = 0.0, im = 0.0;
    const std::size_t n = rate.size();
    if (decay.empty()) {
      for (std::size_t j = 0; j < n; ++j) {
        const double ph = rate[j] * d;
        const double c = std::cos(ph), s = std::sin(ph);
        re += cre[j] * c - cim[j] * s;
        im += cre[j] * s + cim[j] * c;
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        const double ph = rate[j] * d;
        const double m = std::exp(-decay[j] * d);
        const double c = m * std::cos(ph), s = m * std::sin(ph);
        re += cre[j] * c - cim[j] * s;
        im += cre[j] * s + cim[j] * c;
      }
    }
    return {re, im};
  }
};

void require_spectral_support(const PacketSpec& spec, const Settings& s) {
  if (!(s.spectral_half_width > 0.0))
    throw DomainError("spectral half-width must be positive");
  if (!(spec.kw0() > s.spectral_half_width))
    throw DomainError("kw0 must exceed the spectral half-width " +
                      std::to_string(s.spectral_half_width));
}

SpectralSum build_1d(Component c, const PacketSpec& spec,
                     const quad::QuadratureRule& rule) {
  const double k = spec.kw0();
  const double k0 = spec.k0w0();
  const double tau = spec.tau();
  SpectralSum sum;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double u = rule.nodes()[j];
    const double wg = rule.weights()[j] * spectral_weight(u);
    switch (c) {
      case Component::Incident:
        sum.push(u, wg * std::polar(1.0, -0.5 * u * u * tau));
        break;
      case Component::Reflected: {
        const Complex r = coeffs::reflection_1d(k + u, k0);
        sum.push(-u, wg * r * std::polar(1.0, -0.5 * u * u * tau));
        break;
      }
      case Component::Transmitted:
        throw DomainError("transmitted sums are built by build_transmitted_1d");
    }
  }
  return sum;
}

// Phase change one Gauss-Legendre panel is asked to resolve in the
// transmitted sums, and a cap on the resulting panel count.
constexpr double kRadiansPerPanel = 8.0;
constexpr int kMaxPanels = 1 << 16;

int panels_for(const quad::RuleOptions& opt, double variation) {
  const double n = std::ceil(variation / kRadiansPerPanel);
  return n >= kMaxPanels ? kMaxPanels : std::max(opt.panels, static_cast<int>(n));
}

// The transmitted packet is integrated in p = sqrt(kx^2 - k0^2) on the
// propagating side and in s = sqrt(k0^2 - kx^2) on the evanescent side. Both
// variables are smooth across the branch point, and d/dp of the phase
// p x - (k u + u^2/2) tau is x - tau p, so the panel count follows the phase
// variation over the grid [x_lo, x_hi].
SpectralSum build_transmitted_1d(const PacketSpec& spec, const Settings& settings,
                                 const quad::RuleOptions& opt, double x_lo, double x_hi) {
  const double k = spec.kw0();
  const double k0 = spec.k0w0();
  const double tau = spec.tau();
  const double kmin = k - settings.spectral_half_width;
  const double kmax = k + settings.spectral_half_width;
  SpectralSum sum;
  auto coefficient = [&](double kx, double jacobian, Complex q) {
    const double u = kx - k;
    const Complex t = 2.0 * kx / (kx + q);
    return jacobian * spectral_weight(u) * t * std::polar(1.0, -(k * u + 0.5 * u * u) * tau);
  };

  if (kmax > k0) {
    const double a = kmin > k0 ? std::sqrt((kmin - k0) * (kmin + k0)) : 0.0;
    const double b = std::sqrt((kmax - k0) * (kmax + k0));
    const double rate = std::max({std::abs(x_hi - tau * a), std::abs(x_lo - tau * a),
                                  std::abs(x_hi - tau * b), std::abs(x_lo - tau * b)});
    quad::RuleOptions o = opt;
    o.panels = panels_for(opt, rate * (b - a));
    const auto rule = quad::QuadratureRule::composite(a, b, o);
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double p = rule.nodes()[j];
      const double kx = std::hypot(p, k0);
      sum.push(p, coefficient(kx, rule.weights()[j] * p / kx, p));
    }
  }
  if (kmin < k0) {
    const double top = std::min(kmax, k0);
    const double a = top < k0 ? std::sqrt((k0 - top) * (k0 + top)) : 0.0;
    const double b = std::sqrt((k0 - kmin) * (k0 + kmin));
    quad::RuleOptions o = opt;
    o.panels = panels_for(opt, 0.5 * tau * (b * b - a * a));
    const auto rule = quad::QuadratureRule::composite(a, b, o);
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double sd = rule.nodes()[j];
      const double kx = std::sqrt((k0 - sd) * (k0 + sd));
      sum.push(0.0, coefficient(kx, rule.weights()[j] * sd / kx, Complex(0.0, sd)), sd);
    }
  }
  return sum;
}

// Carrier factored out of the spectral sum and the point about which the sum
// is evaluated (D = x - centre).
struct Carrier {
  double centre;
  Complex operator()(Component c, const PacketSpec& spec, double x) const {
    const double k = spec.kw0();
    const double tau = spec.tau();
    switch (c) {
      case Component::Incident: return std::polar(1.0, k * x - 0.5 * k * k * tau);
      case Component::Reflected: return std::polar(1.0, -k * x - 0.5 * k * k * tau);
      case Component::Transmitted: return std::polar(1.0, -0.5 * k * k * tau);
    }
    return 1.0;
  }
};

double carrier_centre(Component c, const PacketSpec& spec) {
  switch (c) {
    case Component::Incident: return spec.kw0() * spec.tau();
    case Component::Reflected: return -spec.kw0() * spec.tau();
    case Component::Transmitted: return 0.0;
  }
  return 0.0;
}

std::vector<int> check_indices(int n, int stride) {
  std::vector<int> idx;
  stride = std::max(1, stride);
  for (int i = 0; i < n; i += stride) idx.push_back(i);
  if (idx.empty() || idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

void raise_unconverged(const char* who, double achieved, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                ": quadrature refinement changed the result by %.3e (relative to the "
                "integrand L1 norm; tol %.1e)",
                achieved, tol);
  throw NumericError(std::string(who) + buf, achieved);
}

Complex point_1d(Component c, const PacketSpec& spec, double x,
                 const Settings& settings) {
  const Grid1D g = Grid1D::from_offsets(x, 0.0, 1.0, 2);
  FieldProfile f = synthesize_1d(c, spec, g, settings);
  return f.values[0];
}

// Sign changes and exact zeros of f on [lo, hi], refined with TOMS 748.
template <class F>
std::vector<double> find_roots(F&& f, double lo, double hi, int samples) {
  std::vector<double> roots;
  std::vector<double> xs(static_cast<std::size_t>(samples) + 1);
  std::vector<double> fs(xs.size());
  for (int i = 0; i <= samples; ++i) {
    xs[i] = i == samples ? hi : lo + (hi - lo) * i / samples;
    fs[i] = f(xs[i]);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (fs[i] == 0.0) {
      roots.push_back(xs[i]);
      continue;
    }
    if (i + 1 < xs.size() && fs[i + 1] != 0.0 && (fs[i] < 0.0) != (fs[i + 1] < 0.0)) {
      std::uintmax_t iters = 200;
      const auto tol = boost::math::tools::eps_tolerance<double>(52);
      const auto [a, b] = boost::math::tools::toms748_solve(f, xs[i], xs[i + 1], fs[i],
                                                             fs[i + 1], tol, iters);
      if (iters >= 200)
        throw NumericError("branch point could not be bracketed", std::abs(b - a));
      roots.push_back(0.5 * (a + b));
    }
  }
  return roots;
}

}  // namespace

Grid1D Grid1D::centered(double origin, double half_width, int points) {
  return from_offsets(origin, -half_width, half_width, points);
}

Grid1D Grid1D::from_offsets(double origin, double first, double last, int points) {
  if (points < 2) throw DomainError("grid needs at least two points");
  if (!(last > first) || !std::isfinite(first) || !std::isfinite(last) ||
      !std::isfinite(origin))
    throw DomainError("grid bounds must be finite and increasing");
  return Grid1D(origin, first, (last - first) / (points - 1), points);
}

double default_window_half_width(double evolution) {
  const double sigma = 0.5 * std::sqrt(1.0 + 4.0 * evolution * evolution);
  return std::max(8.0, 8.0 * sigma);
}

BeamProfile to_beam_profile(const FieldProfile& field,
                            std::variant<PacketSpec, BeamSpec3D> meta) {
  BeamProfile p{field.grid, {}, 0.0, std::move(meta)};
  p.intensity.reserve(field.values.size());
  for (const Complex& v : field.values) p.intensity.push_back(std::norm(v));
  const std::vector<double> w = quad::simpson_weights(field.grid.size(), field.grid.spacing());
  for (std::size_t i = 0; i < w.size(); ++i) p.norm += w[i] * p.intensity[i];
  return p;
}

quad::QuadratureRule spectral_rule_1d(const PacketSpec& spec,
                                      const Settings& settings,
                                      bool split_at_branch) {
  require_spectral_support(spec, settings);
  const double h = settings.spectral_half_width;
  std::vector<double> splits;
  if (split_at_branch && spec.k0w0() > 0.0) {
    const double ub = spec.k0w0() - spec.kw0();
    if (ub >= -h && ub <= h) splits.push_back(ub);
  }
  return quad::QuadratureRule::composite(-h, h, settings.rule, splits);
}

double zeroth_order_centre(Component c, const PacketSpec& spec) {
  switch (c) {
    case Component::Incident: return spec.kw0() * spec.tau();
    case Component::Reflected: return -spec.kw0() * spec.tau();
    case Component::Transmitted:
      if (spec.kw0() > spec.k0w0())
        return std::sqrt((spec.kw0() - spec.k0w0()) * (spec.kw0() + spec.k0w0())) *
               spec.tau();
      return 0.0;
  }
  return 0.0;
}

Grid1D default_grid_1d(Component c, const PacketSpec& spec, int points) {
  const double centre = zeroth_order_centre(c, spec);
  double hw = default_window_half_width(spec.tau());
  if (c == Component::Transmitted) {
    // A propagating transmitted packet spreads k/q times faster.
    if (centre > 0.0) hw = default_window_half_width(spec.tau() * spec.kw0() * spec.tau() / centre);
    const double lo = std::max(0.0, centre - hw);
    return Grid1D::from_offsets(centre, lo - centre, hw, points);
  }
  return Grid1D::centered(centre, hw, points);
}

FieldProfile synthesize_1d(Component c, const PacketSpec& spec,
                           const Grid1D& grid, const Settings& settings) {
  if (c == Component::Transmitted && grid.x(0) < 0.0)
    throw DomainError("transmitted packet is only defined for x >= 0");
  require_spectral_support(spec, settings);
  const bool absolute = c == Component::Transmitted;
  const double x_lo = grid.x(0), x_hi = grid.x(grid.size() - 1);
  auto build = [&](const Settings& st) {
    return absolute ? build_transmitted_1d(spec, st, st.rule, x_lo, x_hi)
                    : build_1d(c, spec, spectral_rule_1d(spec, st, true));
  };
  const SpectralSum sum = build(settings);
  const Carrier carrier{carrier_centre(c, spec)};
  const double shift = grid.origin() - carrier.centre;

  auto d_at = [&](int i) { return absolute ? grid.x(i) : shift + grid.offset(i); };

  FieldProfile out{grid, std::vector<Complex>(grid.size()), spec.tau(), 0.0};
  parallel_for(static_cast<std::size_t>(grid.size()), [&](std::size_t i) {
    const int ii = static_cast<int>(i);
    out.values[i] = carrier(c, spec, grid.x(ii)) * sum(d_at(ii));
  });

  if (settings.check_convergence) {
    Settings fine = settings;
    fine.rule = quad::refined(settings.rule);
    const SpectralSum sum2 = build(fine);
    const double scale = std::max(sum.l1, sum2.l1);
    for (int i : check_indices(grid.size(), settings.check_stride)) {
      const double diff = std::abs(sum(d_at(i)) - sum2(d_at(i))) / scale;
      out.error_estimate = std::max(out.error_estimate, diff);
    }
    if (out.error_estimate > settings.convergence_tol)
      raise_unconverged("synthesize_1d", out.error_estimate, settings.convergence_tol);
  }
  return out;
}

Complex incident_1d(const PacketSpec& spec, double x_over_w0, const Settings& settings) {
  return point_1d(Component::Incident, spec, x_over_w0, settings);
}

Complex reflected_1d(const PacketSpec& spec, double x_over_w0, const Settings& settings) {
  if (x_over_w0 > 0.0) throw DomainError("reflected_1d requires x <= 0");
  return point_1d(Component::Reflected, spec, x_over_w0, settings);
}

Complex transmitted_1d(const PacketSpec& spec, double x_over_w0, const Settings& settings) {
  if (x_over_w0 < 0.0) throw DomainError("transmitted_1d requires x >= 0");
  return point_1d(Component::Transmitted, spec, x_over_w0, settings);
}

BeamProfile profile_1d(Component c, const PacketSpec& spec, const Grid1D& grid,
                       const Settings& settings) {
  return to_beam_profile(synthesize_1d(c, spec, grid, settings), spec);
}

BeamProfile profile_1d(Component c, const PacketSpec& spec, const Settings& settings) {
  return profile_1d(c, spec, default_grid_1d(c, spec), settings);
}

SpectralBalance spectral_balance_1d(const PacketSpec& spec, const Settings& settings) {
  const quad::QuadratureRule rule = spectral_rule_1d(spec, settings, true);
  const double k = spec.kw0();
  SpectralBalance b{0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double u = rule.nodes()[j];
    const double g = spectral_weight(u);
    const double w = 2.0 * std::numbers::pi * rule.weights()[j] * g * g;
    const coeffs::StepCoefficients sc = coeffs::step_1d(k + u, spec.k0w0());
    b.incident += w;
    b.reflected += w * std::norm(sc.r);
    b.transmitted += w * sc.qz_out.real() / (k + u) * std::norm(sc.t);
  }
  return b;
}

double reflected_centroid_spectral(const PacketSpec& spec, const Settings& settings) {
  require_spectral_support(spec, settings);
  const double h = settings.spectral_half_width;
  const double k = spec.kw0();
  const double k0 = spec.k0w0();
  const double tau = spec.tau();
  const quad::QuadratureRule rule = spectral_rule_1d(spec, settings, true);

  // |R g|^2 moments over u.
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double u = rule.nodes()[j];
    const double g = spectral_weight(u);
    const double w = rule.weights()[j] * g * g * std::norm(coeffs::reflection_1d(k + u, k0));
    m0 += w;
    m1 += w * u;
  }
  if (!(m0 > 0.0)) throw DegenerateError("reflected spectrum vanishes");

  // Phase derivative 2/sqrt(k0^2 - kx^2) on the total-reflection side, with
  // u = ub - t^2 removing the inverse square-root endpoint.
  double phase = 0.0;
  const double ub = std::min(k0 - k, h);
  if (ub > -h) {
    const double tmax = std::sqrt(ub + h);
    const double umax_gap = k0 - k - ub;  // > 0 when the branch point is beyond +H
    const quad::QuadratureRule tr = quad::QuadratureRule::composite(
        0.0, tmax, settings.rule, std::span<const double>{});
    for (std::size_t j = 0; j < tr.size(); ++j) {
      const double t = tr.nodes()[j];
      const double u = ub - t * t;
      const double kx = k + u;
      const double g = spectral_weight(u);
      // 2/s du with s = sqrt((k0 - kx)(k0 + kx)), k0 - kx = gap + t^2.
      const double a = umax_gap + t * t;
      const double jac = umax_gap == 0.0 ? 4.0 / std::sqrt(k0 + kx)
                                         : 4.0 * t / std::sqrt(a * (k0 + kx));
      phase += tr.weights()[j] * g * g * jac;  // |R| = 1 here
    }
  }
  return phase / m0 - tau * m1 / m0;
}

StepKernel3D::StepKernel3D(const BeamSpec3D& beam) : geom_(beam) {}

Complex StepKernel3D::coefficient(double kx, double ky) const {
  return geom_.at(kx, ky).r;
}

std::vector<double> StepKernel3D::kx_splits(double half_width) const {
  return find_roots([&](double kx) { return geom_.branch_function(kx, 0.0); },
                    -half_width, half_width, 2048);
}

std::vector<double> StepKernel3D::ky_splits(double kx, double half_width) const {
  return find_roots([&](double ky) { return geom_.branch_function(kx, ky); }, 0.0,
                    half_width, 256);
}

Grid1D default_grid_3d(const BeamSpec3D& beam, int points) {
  return Grid1D::centered(0.0, default_window_half_width(beam.zeta()), points);
}

namespace {

SpectralSum build_3d(const Kernel3D& kernel, double zeta, double h,
                     const quad::RuleOptions& opt) {
  const std::vector<double> xs = kernel.kx_splits(h);
  const quad::QuadratureRule outer = quad::QuadratureRule::composite(-h, h, opt, xs);
  const bool even = kernel.even_in_ky();
  std::vector<Complex> inner(outer.size());
  std::vector<double> inner_l1(outer.size());

  parallel_for(outer.size(), [&](std::size_t j) {
    const double kx = outer.nodes()[j];
    const std::vector<double> ys = kernel.ky_splits(kx, h);
    const quad::QuadratureRule rule =
        quad::QuadratureRule::composite(even ? 0.0 : -h, h, opt, ys);
    Complex acc = 0.0;
    double l1 = 0.0;
    for (std::size_t m = 0; m < rule.size(); ++m) {
      const double ky = rule.nodes()[m];
      const Complex term = rule.weights()[m] * spectral_weight(ky) *
                           std::polar(1.0, -0.5 * ky * ky * zeta) *
                           kernel.coefficient(kx, ky);
      acc += term;
      l1 += std::abs(term);
    }
    inner[j] = even ? 2.0 * acc : acc;
    inner_l1[j] = even ? 2.0 * l1 : l1;
  });

  SpectralSum sum;
  for (std::size_t j = 0; j < outer.size(); ++j) {
    const double kx = outer.nodes()[j];
    const double wg = outer.weights()[j] * spectral_weight(kx);
    sum.push(kx, wg * std::polar(1.0, -0.5 * kx * kx * zeta) * inner[j]);
  }
  sum.l1 = 0.0;
  for (std::size_t j = 0; j < outer.size(); ++j)
    sum.l1 += outer.weights()[j] * spectral_weight(outer.nodes()[j]) * inner_l1[j];
  return sum;
}

}  // namespace

FieldProfile synthesize_3d_slice(const Kernel3D& kernel, double zeta,
                                 const Grid1D& grid, const Settings& settings) {
  if (!(zeta >= 0.0)) throw DomainError("zeta must be non-negative");
  const double h = settings.spectral_half_width;
  if (!(h > 0.0)) throw DomainError("spectral half-width must be positive");
  const SpectralSum sum = build_3d(kernel, zeta, h, settings.rule);

  FieldProfile out{grid, std::vector<Complex>(grid.size()), zeta, 0.0};
  parallel_for(static_cast<std::size_t>(grid.size()), [&](std::size_t i) {
    out.values[i] = sum(grid.x(static_cast<int>(i)));
  });

  if (settings.check_convergence) {
    const SpectralSum sum2 = build_3d(kernel, zeta, h, quad::refined(settings.rule));
    const double scale = std::max(sum.l1, sum2.l1);
    for (int i : check_indices(grid.size(), settings.check_stride)) {
      const double x = grid.x(i);
      out.error_estimate = std::max(out.error_estimate, std::abs(sum(x) - sum2(x)) / scale);
    }
    if (out.error_estimate > settings.convergence_tol)
      raise_unconverged("synthesize_3d_slice", out.error_estimate, settings.convergence_tol);
  }
  return out;
}

BeamProfile reflected_3d_profile(const BeamSpec3D& beam, const Grid1D& grid,
                                 const Settings& settings) {
  const StepKernel3D kernel(beam);
  return to_beam_profile(synthesize_3d_slice(kernel, beam.zeta(), grid, settings), beam);
}

BeamProfile reflected_3d_profile(const BeamSpec3D& beam, const Settings& settings) {
  return reflected_3d_profile(beam, default_grid_3d(beam), settings);
}

}  // namespace ghshift::synth
