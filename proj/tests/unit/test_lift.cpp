#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <pinnedgeo/lift.hpp>
#include <pinnedgeo/measures.hpp>

#include "oracles.hpp"

using namespace pinnedgeo;

TEST(Lift, FlatTwoIntervalExample) {
  const auto m = CurvatureModel::flat(1);
  const Partition p(2);
  std::vector<Vec> inc(2, Vec::Constant(1, 0.3));
  const JacobiFamily fam = build_family(m, roll(m, p, inc));
  const Eigen::MatrixXd A = endpoint_map(fam);
  EXPECT_NEAR(A(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(A(0, 1), 0.5, 1e-15);
  const Eigen::MatrixXd Z = null_space_basis(fam);
  ASSERT_EQ(Z.cols(), 1);
  EXPECT_NEAR(std::abs(Z(0, 0)), 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(Z(0, 0) + Z(1, 0), 0.0, 1e-14);

  const Lift L = lift_build(fam, Vec::Constant(1, 2.0));
  EXPECT_NEAR(L.slopes[0](0), 2.0, 1e-14);
  EXPECT_NEAR(L.slopes[1](0), 2.0, 1e-14);
  EXPECT_NEAR(L.J[2](0), 2.0, 1e-14);
  EXPECT_NEAR(L.J[1](0), 1.0, 1e-14);
}

TEST(Lift, EndpointAndOrthogonality) {
  std::mt19937_64 g(71);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto m = CurvatureModel::hyperbolic(3, 1.5);
    const Partition p(8);
    const BrokenGeodesic path = sample_nu1P(m, p, 2, s);
    const JacobiFamily fam = build_family(m, path);
    const Vec H = oracle::gaussian(g, 3);
    const Lift L = lift_build(fam, H);
    EXPECT_LT((L.J[p.n] - H).norm(), 1e-10 * std::max(1.0, H.norm()));
    EXPECT_LT((endpoint_map(fam) * stack(L.slopes) - Eigen::VectorXd(H)).norm(), 1e-10 * std::max(1.0, H.norm()));
    EXPECT_LT(lift_orthogonality(fam, L.slopes), 1e-10 * std::max(1.0, H.norm()));
    EXPECT_EQ(null_space_basis(fam).cols(), 3 * 7);
  }
}

TEST(Lift, LiftIsTheMinimalNormSolution) {
  std::mt19937_64 g(73);
  const auto m = CurvatureModel::hyperbolic(2, 1.0);
  const Partition p(6);
  const JacobiFamily fam = build_family(m, sample_nu1P(m, p, 3, 0));
  const Vec H = oracle::gaussian(g, 2);
  const Lift L = lift_build(fam, H);
  const double base = g1p_inner(p, L.slopes, L.slopes);
  const Eigen::MatrixXd Z = null_space_basis(fam);
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd w = Z * oracle::gaussian(g, static_cast<int>(Z.cols()));
    const Slopes other = unstack(stack(L.slopes) + w, 2);
    EXPECT_LT((jacobi_from_slopes(fam, other)[p.n] - H).norm(), 1e-10);
    EXPECT_GT(g1p_inner(p, other, other), base);
  }
}

TEST(Lift, FieldsAreTangent) {
  const auto m = CurvatureModel::hyperbolic(2, 1.0);
  Vec dir(2);
  dir << 0.3, 1;
  const Vec y = point_from_origin(m, dir, 1.7);
  for (const VectorField& X : {default_field(m), zero_field(), projected_field(Vec::Unit(3, 1))}) {
    EXPECT_NEAR(ambient_inner(m, X.at(m, y), y), 0.0, 1e-12) << X.name;
  }
  const auto f = CurvatureModel::flat(2);
  EXPECT_EQ(default_field(f).at(f, y.head(2)), Vec::Unit(2, 0));
}

TEST(Lift, StackRoundTrip) {
  Slopes k{Vec::Unit(3, 0), Vec::Unit(3, 2)};
  const Slopes back = unstack(stack(k), 3);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1], k[1]);
  EXPECT_THROW(unstack(Eigen::VectorXd::Zero(4), 3), std::invalid_argument);
}
