#include <gtest/gtest.h>

#include <cmath>

#include <pinnedgeo/damped.hpp>

#include "oracles.hpp"

using namespace pinnedgeo;

TEST(Damped, ClosedValuesForUnitCurvatureInThreeDimensions) {
  const auto m = CurvatureModel::hyperbolic(3, 1.0);
  const double c = ricci_scalar_factor(m);
  EXPECT_DOUBLE_EQ(c, 2.0);
  const double e = std::exp(1.0);
  EXPECT_NEAR(damped::T(c, 1.0), e, 1e-15);
  EXPECT_NEAR(damped::K(c, 1.0), (e * e - 1) / 2, 1e-14);
  EXPECT_NEAR(damped::Z(c, 1.0), std::sinh(1.0), 1e-15);
  EXPECT_NEAR(damped::J_factor(c, 1.0), 1.0, 1e-15);
}

TEST(Damped, KMatchesQuadrature) {
  for (double c : {0.5, 2.0, 6.0}) {
    for (double s : {0.1, 0.5, 1.0}) {
      const double integral = oracle::simpson([c](double r) { return std::exp(-c * r); }, 0.0, s, 2000);
      const double expect = std::exp(0.5 * c * s) * integral * std::exp(0.5 * c);
      EXPECT_NEAR(damped::K(c, s), expect, 1e-10 * expect);
    }
  }
}

TEST(Damped, ZSolvesItsOde) {
  for (double c : {1.0, 2.0, 4.0}) {
    // Z' = (c/2) Z + e^{-c s/2}, integrated by RK4.
    const int steps = 2000;
    const double h = 1.0 / steps;
    double z = 0.0, s = 0.0;
    auto rhs = [c](double t, double y) { return 0.5 * c * y + std::exp(-0.5 * c * t); };
    for (int k = 0; k < steps; ++k) {
      const double k1 = rhs(s, z), k2 = rhs(s + h / 2, z + h / 2 * k1);
      const double k3 = rhs(s + h / 2, z + h / 2 * k2), k4 = rhs(s + h, z + h * k3);
      z += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      s += h;
    }
    EXPECT_NEAR(damped::Z(c, 1.0), z, 1e-12);
  }
}

TEST(Damped, FlatReducesToIdentity) {
  const auto dt = damped_transport(CurvatureModel::flat(2), refined_grid(4, 2));
  ASSERT_EQ(dt.grid.size(), 9u);
  for (std::size_t i = 0; i < dt.grid.size(); ++i) {
    EXPECT_TRUE(dt.T[i].isApprox(Mat::Identity(2, 2)));
    EXPECT_NEAR(dt.K[i](0, 0), dt.grid[i], 1e-15);
  }
  EXPECT_NEAR(dt.Ctilde(0, 0), 1.0, 1e-15);
  Vec H(2);
  H << 1, -2;
  EXPECT_TRUE(dt.J(H, 0.25).isApprox(0.25 * H));
}

TEST(Damped, InverseGramIdentity) {
  for (double c : {0.4, 2.0, 5.0}) {
    EXPECT_NEAR(1.0 / damped::K(c, 1.0), damped::Ctilde(c) / damped::T(c, 1.0), 1e-14);
  }
}

TEST(Damped, GrowthBounds) {
  const double c = 4.0;
  for (double s = 0.0; s <= 1.0; s += 0.125) {
    EXPECT_GE(damped::K(c, s), s - 1e-15);
    EXPECT_LE(damped::J_factor(c, s), 1.0 + 1e-15);
    EXPECT_GE(damped::J_factor(c, s), 0.0);
    EXPECT_LE(damped::Z(c, s), std::exp(0.5 * c * s) * s + 1e-15);
  }
}

TEST(Damped, TransportFieldAccessors) {
  const auto m = CurvatureModel::hyperbolic(3, 1.0);
  const auto dt = damped_transport(m, refined_grid(2, 1));
  EXPECT_NEAR(dt.z_alpha(1, 1.0)(1), std::sinh(1.0), 1e-15);
  EXPECT_EQ(dt.z_alpha(1, 1.0)(0), 0.0);
  EXPECT_THROW(dt.z_alpha(3, 1.0), std::invalid_argument);
  EXPECT_NEAR(dt.K_at(1.0)(2, 2), (std::exp(2.0) - 1) / 2, 1e-14);
  EXPECT_THROW(damped_transport(m, {0.0, 0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(refined_grid(0, 1), std::invalid_argument);
}
