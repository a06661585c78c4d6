#pragma once

// Numerical synthesis of the incident, reflected and transmitted packets by
// quadrature over the Gaussian spectral distribution. This is the reference
// against which every closed form in analytic.hpp is checked, so it uses the
// exact step coefficients and never a Taylor expansion.
//
// 1D amplitudes are normalised so that the incident packet at tau = 0 is
// exp(i k x) exp(-x^2 / w0^2); the 3D slice is normalised to
// psi_inc(0, 0, 0) = 1.

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "ghshift/coeffs.hpp"
#include "ghshift/core.hpp"
#include "ghshift/quadrature.hpp"

namespace ghshift::synth {

using Complex = std::complex<double>;

struct Settings {
  /// Spectral support is |kx - k| <= spectral_half_width / w0.
  double spectral_half_width = 12.0;
  quad::RuleOptions rule{};
  /// Largest accepted change between the rule and its node-doubled refinement,
  /// relative to the L1 norm of the integrand.
  double convergence_tol = 1e-9;
  bool check_convergence = true;
  /// Every check_stride-th grid point (plus the last) is re-evaluated on the
  /// refined rule.
  int check_stride = 16;
};

/// Uniform grid x_i = origin + first + i * spacing. Offsets from the origin
/// are kept separately so that quantities near a distant packet centre keep
/// full precision.
class Grid1D {
 public:
  static Grid1D centered(double origin, double half_width, int points);
  static Grid1D from_offsets(double origin, double first, double last, int points);

  double origin() const noexcept { return origin_; }
  double first() const noexcept { return first_; }
  double spacing() const noexcept { return spacing_; }
  int size() const noexcept { return n_; }
  double offset(int i) const noexcept { return first_ + spacing_ * i; }
  double x(int i) const noexcept { return origin_ + offset(i); }

 private:
  Grid1D(double origin, double first, double spacing, int n)
      : origin_(origin), first_(first), spacing_(spacing), n_(n) {}

  double origin_;
  double first_;
  double spacing_;
  int n_;
};

/// max(8, 8 sigma) with sigma = sqrt(1 + 4 t^2) / 2 the intensity standard
/// deviation of the free packet after evolution t (tau or zeta).
double default_window_half_width(double evolution);

inline constexpr int kDefaultGridPoints = 4096;

struct FieldSample {
  double x_over_w0;
  Complex value;
  double tau_or_zeta;
};

struct FieldProfile {
  Grid1D grid;
  std::vector<Complex> values;
  double evolution = 0.0;
  /// Largest refinement change observed, relative to the integrand L1 norm.
  double error_estimate = 0.0;

  FieldSample sample(int i) const { return {grid.x(i), values[i], evolution}; }
};

struct BeamProfile {
  Grid1D grid;
  std::vector<double> intensity;
  double norm = 0.0;  ///< integral of |psi|^2 d(x/w0), composite Simpson
  std::variant<PacketSpec, BeamSpec3D> meta;
};

BeamProfile to_beam_profile(const FieldProfile& field,
                            std::variant<PacketSpec, BeamSpec3D> meta);

enum class Component { Incident, Reflected, Transmitted };

/// Spectral rule in u = (kx - k) w0 over [-H, H] with a panel boundary at the
/// branch point u = (k0 - k) w0 when it lies inside.
quad::QuadratureRule spectral_rule_1d(const PacketSpec& spec,
                                      const Settings& settings,
                                      bool split_at_branch);

/// Zeroth-order packet centre for each component: k w0 tau for the incident
/// packet, -k w0 tau for the reflected one, q w0 tau for a propagating
/// transmitted packet and 0 for an evanescent one.
double zeroth_order_centre(Component c, const PacketSpec& spec);

/// Window of default_window_half_width around the zeroth-order centre. The
/// transmitted window uses the effective time tau k/q and never starts
/// before x = 0.
Grid1D default_grid_1d(Component c, const PacketSpec& spec,
                       int points = kDefaultGridPoints);

Complex incident_1d(const PacketSpec& spec, double x_over_w0,
                    const Settings& settings = {});
/// Requires x <= 0.
Complex reflected_1d(const PacketSpec& spec, double x_over_w0,
                     const Settings& settings = {});
/// Requires x >= 0.
Complex transmitted_1d(const PacketSpec& spec, double x_over_w0,
                       const Settings& settings = {});

/// Amplitudes on a grid. No half-line restriction is applied, so the
/// reflected integral can also be inspected for x > 0.
FieldProfile synthesize_1d(Component c, const PacketSpec& spec,
                           const Grid1D& grid, const Settings& settings = {});

BeamProfile profile_1d(Component c, const PacketSpec& spec, const Grid1D& grid,
                       const Settings& settings = {});
BeamProfile profile_1d(Component c, const PacketSpec& spec,
                       const Settings& settings = {});

/// Spatial norms predicted from the spectrum (Parseval):
/// incident = 2 pi int |A|^2, reflected = 2 pi int |R A|^2,
/// transmitted = 2 pi int Re(q)/kx |T A|^2.
struct SpectralBalance {
  double incident;
  double reflected;
  double transmitted;
};
SpectralBalance spectral_balance_1d(const PacketSpec& spec,
                                    const Settings& settings = {});

/// Centroid <x/w0 + k w0 tau> of the reflected packet evaluated in the
/// spectral domain over the whole real line: <d arg R / dkx> - tau <u>,
/// weighted by |R g|^2.
double reflected_centroid_spectral(const PacketSpec& spec,
                                   const Settings& settings = {});

/// Reflection kernel of the 3D slice synthesis, in incident-frame spectral
/// coordinates (kx w0, ky w0).
class Kernel3D {
 public:
  virtual ~Kernel3D() = default;
  virtual Complex coefficient(double kx, double ky) const = 0;
  /// Branch points of the kernel along ky = 0 inside [-H, H].
  virtual std::vector<double> kx_splits(double /*half_width*/) const { return {}; }
  /// Branch points in ky at fixed kx inside [-H, H] (only ky >= 0 when even).
  virtual std::vector<double> ky_splits(double /*kx*/, double /*half_width*/) const {
    return {};
  }
  virtual bool even_in_ky() const { return false; }
};

/// Exact step reflection coefficient R(kx, ky) with its critical circle.
class StepKernel3D final : public Kernel3D {
 public:
  explicit StepKernel3D(const BeamSpec3D& beam);
  Complex coefficient(double kx, double ky) const override;
  std::vector<double> kx_splits(double half_width) const override;
  std::vector<double> ky_splits(double kx, double half_width) const override;
  bool even_in_ky() const override { return true; }

 private:
  coeffs::StepGeometry3D geom_;
};

Grid1D default_grid_3d(const BeamSpec3D& beam, int points = kDefaultGridPoints);

/// psi_ref(x*, y = 0, z*) / exp(i k z*) on a grid of x*/w0 by tensor
/// quadrature over (kx, ky) with the paraxial propagation kernel.
FieldProfile synthesize_3d_slice(const Kernel3D& kernel, double zeta,
                                 const Grid1D& grid,
                                 const Settings& settings = {});

BeamProfile reflected_3d_profile(const BeamSpec3D& beam, const Grid1D& grid,
                                 const Settings& settings = {});
BeamProfile reflected_3d_profile(const BeamSpec3D& beam,
                                 const Settings& settings = {});

}  // namespace ghshift::synth
