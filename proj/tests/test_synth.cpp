#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ghshift/analytic.hpp"
#include "ghshift/coeffs.hpp"
#include "ghshift/errors.hpp"
#include "ghshift/stats.hpp"
#include "ghshift/synth.hpp"

using namespace ghshift;
using namespace ghshift::synth;

namespace {

const double kIncidentNorm = std::sqrt(std::numbers::pi / 2.0);

// A kernel that ignores ky reduces the 3D slice to a 1D sum times the free
// ky factor 1/sqrt(1 + 2 i zeta).
class OneDimensionalKernel final : public Kernel3D {
 public:
  OneDimensionalKernel(double k, double k0) : k_(k), k0_(k0) {}
  Complex coefficient(double kx, double) const override {
    return coeffs::reflection_1d(k_ - kx, k0_);
  }
  std::vector<double> kx_splits(double h) const override {
    const double s = k_ - k0_;
    return std::abs(s) < h ? std::vector<double>{s} : std::vector<double>{};
  }

 private:
  double k_, k0_;
};

class UnitKernel final : public Kernel3D {
 public:
  Complex coefficient(double, double) const override { return 1.0; }
  bool even_in_ky() const override { return true; }
};

}  // namespace

TEST(Incident1D, MatchesClosedForm) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> kd(50.0, 1500.0), td(0.0, 3.0), xd(-4.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const PacketSpec spec = make_packet_spec(kd(rng), 100.0, td(rng));
    const double x = spec.kw0() * spec.tau() + xd(rng);
    const Complex got = incident_1d(spec, x);
    const Complex want = analytic::incident_closed_form(spec, x);
    ASSERT_LT(std::abs(got - want), 1e-8) << spec.kw0() << " " << spec.tau() << " " << x;
  }
}

TEST(Incident1D, FreePacketMomentsAndNorm) {
  for (double tau : {0.0, 0.5, 1.0, 2.0}) {
    const PacketSpec spec = make_packet_spec(500.0, 0.0, tau);
    const BeamProfile p = profile_1d(Component::Incident, spec);
    const auto st = stats::analyse(p);
    EXPECT_NEAR(st.peak_x_over_w0 - 500.0 * tau, 0.0, 1e-3 * p.grid.spacing());
    EXPECT_NEAR(st.mean_x_over_w0 - 500.0 * tau, 0.0, 1e-9);
    EXPECT_NEAR(p.norm, kIncidentNorm, 1e-8);

    double var = 0.0;
    for (int i = 0; i < p.grid.size(); ++i) {
      const double d = p.grid.x(i) - st.mean_x_over_w0;
      var += d * d * p.intensity[i];
    }
    var *= p.grid.spacing() / p.norm;
    EXPECT_NEAR(var, (1.0 + 4.0 * tau * tau) / 4.0, 1e-6);
  }
}

TEST(Reflected1D, NoStepMeansNoReflection) {
  const PacketSpec spec = make_packet_spec(500.0, 0.0, 1.0);
  for (double x : {-510.0, -500.0, -495.0}) EXPECT_EQ(std::abs(reflected_1d(spec, x)), 0.0);
  for (double x : {495.0, 500.0, 503.0})
    EXPECT_LT(std::abs(transmitted_1d(spec, x) - incident_1d(spec, x)), 1e-10);
}

TEST(Reflected1D, DeepBelowBarrierReflectsEverything) {
  const PacketSpec spec = make_packet_spec(500.0, 700.0, 2.0);
  const BeamProfile r = profile_1d(Component::Reflected, spec);
  EXPECT_NEAR(r.norm, kIncidentNorm, 1e-6);
}

TEST(Reflected1D, DelayBelowBarrier) {
  const PacketSpec spec = packet_from_barrier_excess(500.0, 0.1, 1.0);
  const double shift = stats::peak_position(profile_1d(Component::Reflected, spec)) + 500.0;
  const double want = 2.0 / std::sqrt(spec.k0w0() * spec.k0w0() - 500.0 * 500.0);
  EXPECT_NEAR(shift, want, 0.05 * want);
}

TEST(Reflected1D, LinearizedFormAwayFromThreshold) {
  // Far above the barrier the first-order reflected packet is accurate to
  // O(1/p^2) relative to the amplitude scale.
  const PacketSpec spec = make_packet_spec(800.0, 300.0, 1.0);
  const double scale = std::abs(coeffs::reflection_1d(800.0, 300.0)) / std::sqrt(std::sqrt(5.0));
  for (double d : {-1.5, -0.5, 0.0, 0.7, 1.4}) {
    const double x = -800.0 + d;
    EXPECT_LT(std::abs(reflected_1d(spec, x) - analytic::reflected_linearized(spec, x)),
              1e-3 * scale);
  }
}

TEST(Transmitted1D, EvanescentTailVanishes) {
  const PacketSpec spec = make_packet_spec(500.0, 600.0, 1.0);
  EXPECT_LT(std::abs(transmitted_1d(spec, 10.0)), 1e-6);
  EXPECT_THROW(transmitted_1d(spec, -1.0), DomainError);
  EXPECT_THROW(reflected_1d(spec, 1.0), DomainError);
}

TEST(Balance1D, FluxConservedAfterSeparation) {
  for (double k0 : {300.0, 450.0, 490.0}) {
    const PacketSpec spec = make_packet_spec(500.0, k0, 1.0);
    const double r = profile_1d(Component::Reflected, spec).norm;
    const double t = profile_1d(Component::Transmitted, spec).norm;
    EXPECT_NEAR((r + t) / kIncidentNorm, 1.0, 1e-4) << k0;

    const SpectralBalance b = spectral_balance_1d(spec);
    EXPECT_NEAR(b.incident, kIncidentNorm, 1e-10);
    EXPECT_NEAR(b.reflected + b.transmitted, b.incident, 1e-10);
    EXPECT_NEAR(r, b.reflected, 1e-4 * b.incident);
    EXPECT_NEAR(t, b.transmitted, 1e-4 * b.incident);
  }
}

TEST(Balance1D, IncidentNormIndependentOfTime) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> td(0.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    const PacketSpec spec = make_packet_spec(500.0, 0.0, td(rng));
    ASSERT_NEAR(profile_1d(Component::Incident, spec).norm, kIncidentNorm, 1e-8);
  }
}

TEST(Reflected1D, SpectralCentroidMatchesSpatialOneWhenUntruncated) {
  const PacketSpec spec = packet_from_barrier_excess(500.0, -0.1, 1.0);
  const auto m = stats::mean_position(profile_1d(Component::Reflected, spec));
  EXPECT_FALSE(m.truncated);
  EXPECT_NEAR(m.mean + 500.0, reflected_centroid_spectral(spec), 1e-6);
}

TEST(Reflected1D, RefinementChangeBelowTolerance) {
  const PacketSpec spec = make_packet_spec(500.0, 500.0, 1.0);
  const Grid1D grid = default_grid_1d(Component::Reflected, spec, 256);
  Settings fine;
  fine.rule = quad::refined(fine.rule);
  const FieldProfile a = synthesize_1d(Component::Reflected, spec, grid);
  const FieldProfile b = synthesize_1d(Component::Reflected, spec, grid, fine);
  double l1 = 0.0, diff = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    l1 = std::max(l1, std::abs(b.values[i]));
    diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
  }
  EXPECT_LT(diff / l1, 1e-9);
  EXPECT_LT(a.error_estimate, 1e-9);
}

TEST(Settings1D, CoarseRuleFailsLoudly) {
  Settings coarse;
  coarse.rule.panels = 1;
  coarse.rule.nodes = 2;
  const PacketSpec spec = make_packet_spec(500.0, 400.0, 1.0);
  EXPECT_THROW(profile_1d(Component::Reflected, spec, coarse), NumericError);
}

TEST(Settings1D, SpectralSupportMustFitBelowK) {
  EXPECT_THROW(incident_1d(make_packet_spec(10.0, 0.0, 0.0), 0.0), DomainError);
}

TEST(Slice3D, UnitKernelIsFreeBeam) {
  const UnitKernel kernel;
  for (double zeta : {0.0, 0.5, 2.0}) {
    const Grid1D grid = Grid1D::centered(0.0, default_window_half_width(zeta), 257);
    const FieldProfile f = synthesize_3d_slice(kernel, zeta, grid);
    for (int i = 0; i < grid.size(); ++i) {
      ASSERT_LT(std::abs(f.values[i] - analytic::incident_3d_closed_form(zeta, grid.x(i))), 1e-8);
      ASSERT_NEAR(std::abs(f.values[i]), std::abs(f.values[grid.size() - 1 - i]), 1e-12);
    }
  }
}

TEST(Slice3D, KyIndependentKernelReducesToOneDimension) {
  const double k = 500.0, k0 = 495.0;
  const OneDimensionalKernel kernel(k, k0);
  for (double t : {0.5, 1.5}) {
    const PacketSpec spec = make_packet_spec(k, k0, t);
    const Grid1D grid = Grid1D::centered(0.0, 4.0, 33);
    const FieldProfile f = synthesize_3d_slice(kernel, t, grid);
    const Complex ky_factor = 1.0 / std::sqrt(Complex(1.0, 2.0 * t));
    for (int i = 0; i < grid.size(); ++i) {
      const double x = grid.x(i);
      const Complex one_d = reflected_1d(spec, x - k * t) *
                            std::polar(1.0, k * x - 0.5 * k * k * t);
      ASSERT_LT(std::abs(f.values[i] - ky_factor * one_d), 1e-7) << t << " " << x;
    }
  }
}

TEST(Slice3D, StepKernelFluxBelowBarrier) {
  // Total reflection keeps the y = 0 slice norm of the free beam when the
  // reflection phase is nearly flat across the spectrum.
  const BeamSpec3D beam = BeamSpec3D::from_v0_over_e(500.0, 4.0, 0.3, 1.0);
  const BeamProfile p = reflected_3d_profile(beam, default_grid_3d(beam, 1024));
  const Grid1D grid = default_grid_3d(beam, 1024);
  double free_norm = 0.0;
  const auto w = quad::simpson_weights(grid.size(), grid.spacing());
  for (int i = 0; i < grid.size(); ++i)
    free_norm += w[i] * std::norm(analytic::incident_3d_closed_form(1.0, grid.x(i)));
  EXPECT_NEAR(p.norm / free_norm, 1.0, 1e-3);
}

TEST(Grid, WindowHalfWidth) {
  EXPECT_EQ(default_window_half_width(0.0), 8.0);
  EXPECT_NEAR(default_window_half_width(2.0), 4.0 * std::sqrt(17.0), 1e-14);
  const Grid1D g = Grid1D::centered(-1000.0, 8.0, 4096);
  EXPECT_EQ(g.x(0), -1008.0);
  EXPECT_NEAR(g.x(4095), -992.0, 1e-12);
  EXPECT_THROW(Grid1D::from_offsets(0.0, 1.0, 0.0, 10), DomainError);
}
