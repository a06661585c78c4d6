#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ghshift/coeffs.hpp"
#include "ghshift/errors.hpp"

using namespace ghshift;
using namespace ghshift::coeffs;
using Complex = std::complex<double>;

TEST(Reflection1D, NoStepNoReflection) {
  for (double kx : {0.5, 10.0, 500.0, 1e4}) {
    EXPECT_EQ(reflection_1d(kx, 0.0), Complex(0.0, 0.0));
    EXPECT_EQ(transmission_1d(kx, 0.0), Complex(1.0, 0.0));
  }
}

TEST(Reflection1D, AtThresholdFullReflection) {
  EXPECT_EQ(reflection_1d(500.0, 500.0), Complex(1.0, 0.0));
  EXPECT_EQ(transmission_1d(500.0, 500.0), Complex(2.0, 0.0));
}

TEST(Reflection1D, RationalPoint) {
  // kx : k0 = 5 : 3 gives sqrt(25 - 9) = 4, R = 1/9, T = 10/9.
  const Complex r = reflection_1d(500.0, 300.0);
  const Complex t = transmission_1d(500.0, 300.0);
  EXPECT_NEAR(r.real(), 1.0 / 9.0, 1e-15);
  EXPECT_EQ(r.imag(), 0.0);
  EXPECT_NEAR(t.real(), 10.0 / 9.0, 1e-15);
  EXPECT_NEAR(std::abs(1.0 + r - t), 0.0, 1e-15);
}

TEST(Reflection1D, RejectsNonPositiveWaveNumber) {
  EXPECT_THROW(reflection_1d(0.0, 1.0), DomainError);
  EXPECT_THROW(reflection_1d(-3.0, 1.0), DomainError);
  EXPECT_THROW(transmission_1d(-3.0, 1.0), DomainError);
  EXPECT_THROW(reflection_1d(3.0, -1.0), DomainError);
}

TEST(Reflection1D, EvanescentBranchDecays) {
  const Complex q = transmitted_wavenumber_1d(300.0, 500.0);
  EXPECT_EQ(q.real(), 0.0);
  EXPECT_NEAR(q.imag(), 400.0, 1e-12);
  EXPECT_TRUE(step_1d(300.0, 500.0).evanescent());
}

TEST(Reflection1D, FluxConservationAndUnimodularity) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> k(1.0, 2000.0);
  for (int i = 0; i < 10000; ++i) {
    const double kx = k(rng), k0 = k(rng);
    const StepCoefficients c = step_1d(kx, k0);
    ASSERT_LE(std::abs(1.0 + c.r - c.t), 1e-14);
    if (kx > k0) {
      const double q = std::sqrt((kx - k0) * (kx + k0));
      const double flux = std::norm(c.r) + q / kx * std::norm(c.t);
      ASSERT_NEAR(flux, 1.0, 1e-12) << kx << " " << k0;
    } else {
      ASSERT_NEAR(std::abs(c.r), 1.0, 1e-12) << kx << " " << k0;
    }
  }
}

TEST(Reflection1D, ContinuousAcrossThreshold) {
  // R = 1 + a sqrt(d) + b d + O(d^(3/2)) on each side; the combination
  // (8 R(d) - 6 R(4d) + R(16d)) / 3 cancels the first two terms and exposes
  // the one-sided limits.
  auto limit = [](double k0, double d) {
    return (8.0 * reflection_1d(k0 + d, k0) - 6.0 * reflection_1d(k0 + 4.0 * d, k0) +
            reflection_1d(k0 + 16.0 * d, k0)) /
           3.0;
  };
  for (double k0 : {1.0, 500.0, 1000.0}) {
    const double d = 1e-10 * k0;
    const Complex above = limit(k0, d);
    const Complex below = limit(k0, -d);
    EXPECT_LT(std::abs(above - below), 1e-9);
    EXPECT_LT(std::abs(above - 1.0), 1e-9);
  }
}

namespace {

BeamSpec3D beam(double tc, double theta) {
  return BeamSpec3D::from_critical_angle(500.0, tc, theta, 1.0);
}

}  // namespace

TEST(Reflection3D, CentralPlaneWaveFollowsSnell) {
  const double tc = std::atan(2.0);
  for (double theta : {0.2, 0.5, 0.9}) {
    const double k = 500.0;
    const double q = k * std::sin(tc);
    const double sin_phi = k * std::sin(theta) / q;
    const double q_cos_phi = q * std::sqrt(1.0 - sin_phi * sin_phi);
    const double want = (k * std::cos(theta) - q_cos_phi) / (k * std::cos(theta) + q_cos_phi);
    const Complex r = reflection_3d(0.0, 0.0, beam(tc, theta));
    EXPECT_NEAR(r.real(), want, 1e-13);
    EXPECT_EQ(r.imag(), 0.0);
  }
}

TEST(Reflection3D, TotalReflectionBeyondCriticalAngle) {
  const double tc = std::atan(1.0);
  for (double theta : {0.9, 1.1, 1.4})
    EXPECT_NEAR(std::abs(reflection_3d(0.0, 0.0, beam(tc, theta))), 1.0, 1e-14);
  EXPECT_EQ(reflection_3d(0.0, 0.0, beam(tc, tc)), Complex(1.0, 0.0));
}

TEST(Reflection3D, FluxConservationOffAxis) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> s(-10.0, 10.0), th(0.1, 1.4), c(0.2, 1.3);
  int real_samples = 0, evanescent = 0;
  for (int i = 0; i < 10000; ++i) {
    const BeamSpec3D b = beam(c(rng), th(rng));
    const StepGeometry3D g(b);
    const StepCoefficients sc = g.at(s(rng), s(rng));
    ASSERT_LE(std::abs(1.0 + sc.r - sc.t), 1e-14);
    if (sc.qz_out.imag() == 0.0) {
      ++real_samples;
      const double flux = std::norm(sc.r) + sc.qz_out.real() / sc.kz_in.real() * std::norm(sc.t);
      ASSERT_NEAR(flux, 1.0, 1e-12);
    } else {
      ++evanescent;
      ASSERT_NEAR(std::abs(sc.r), 1.0, 1e-12);
    }
  }
  EXPECT_GT(real_samples, 100);
  EXPECT_GT(evanescent, 100);
}

TEST(Reflection3D, BranchFunctionVanishesOnCriticalAxis) {
  const double tc = std::atan(2.0);
  EXPECT_EQ(StepGeometry3D(beam(tc, tc)).branch_function(0.0, 0.0), 0.0);
}

TEST(Reflection3DLinearized, NormalIncidenceLimit) {
  const auto lin = reflection_3d_linearized(beam(std::atan(1.0), 1e-9));
  EXPECT_LT(std::abs(lin.slope), 1e-10);
}

TEST(Reflection3DLinearized, BelowBarrierCoefficient) {
  const double v0_over_e = 1.69, theta = 0.6, k = 500.0;
  const auto lin = reflection_3d_linearized(BeamSpec3D::from_v0_over_e(k, v0_over_e, theta, 1.0));
  const Complex want = 2.0 * std::sin(theta) /
                       (Complex(0.0, 1.0) * k *
                        std::sqrt(v0_over_e - 1.0 + std::sin(theta) * std::sin(theta)));
  EXPECT_NEAR(std::abs(lin.slope - want), 0.0, 1e-14 * std::abs(want));
  EXPECT_NEAR(std::abs(lin.r00), 1.0, 1e-14);
}

TEST(Reflection3DLinearized, MatchesFiniteDifference) {
  // Central difference of R(kx, 0) with step 1e-6 k, both sides of theta_c,
  // at least five divergences (5/(k w0)) away from it.
  const double k = 500.0;
  for (double tc : {std::atan(1.0), std::atan(2.0)}) {
    for (double theta : {tc / 2.0, tc - 0.05, tc - 10.0 / k, tc + 10.0 / k, tc + 0.1}) {
      const BeamSpec3D b = BeamSpec3D::from_critical_angle(k, tc, theta, 1.0);
      if (std::abs(theta - tc) < critical_band_half_width(b)) continue;
      const auto lin = reflection_3d_linearized(b);
      const double h = 1e-6 * k;
      const Complex fd = (reflection_3d(h, 0.0, b) - reflection_3d(-h, 0.0, b)) / (2.0 * h);
      const Complex ratio = fd / reflection_3d(0.0, 0.0, b);
      EXPECT_LT(std::abs(ratio - lin.slope), 1e-6 * std::abs(lin.slope))
          << "tc=" << tc << " theta=" << theta;
    }
  }
}

TEST(Reflection3DLinearized, SingularInsideCriticalBand) {
  const double tc = std::atan(1.0);
  const double band = 10.0 / (500.0 * std::cos(tc));
  EXPECT_NEAR(critical_band_half_width(beam(tc, 0.3)), band, 1e-15);
  EXPECT_THROW(reflection_3d_linearized(beam(tc, tc)), SingularExpansionError);
  EXPECT_THROW(reflection_3d_linearized(beam(tc, tc + 0.5 * band)), SingularExpansionError);
  EXPECT_NO_THROW(reflection_3d_linearized(beam(tc, tc + 1.5 * band)));
}

TEST(Reflection3D, RejectsComponentsBeyondK) {
  EXPECT_THROW(reflection_3d(600.0, 0.0, beam(0.8, 0.5)), DomainError);
}
