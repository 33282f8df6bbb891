#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <pinnedgeo/heat_kernel.hpp>
#include <pinnedgeo/measures.hpp>

using namespace pinnedgeo;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

TEST(Measures, UnpinnedFlatEndpointIsStandardNormal) {
  // Kolmogorov-Smirnov against N(0,1) for each endpoint coordinate.
  const auto m = CurvatureModel::flat(2);
  const Partition p(16);
  const std::size_t N = 5000;
  for (int a = 0; a < 2; ++a) {
    std::vector<double> xs;
    for (std::size_t s = 0; s < N; ++s) xs.push_back(sample_nu1P(m, p, 77, s).endpoint()(a));
    std::sort(xs.begin(), xs.end());
    double D = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double F = normal_cdf(xs[i]);
      D = std::max({D, std::abs(F - double(i) / N), std::abs(F - double(i + 1) / N)});
    }
    EXPECT_LT(D * std::sqrt(double(N)), 1.63);  // 1% critical value
  }
}

TEST(Measures, PinnedPathEndsAtTarget) {
  const auto m = CurvatureModel::hyperbolic(3, 1.0);
  const Partition p(8);
  Vec dir(3);
  dir << 1, 1, 0;
  const Vec x = point_from_origin(m, dir, 1.5);
  const PinnedSample s = pinned_sample(m, p, x, 3, 0);
  EXPECT_EQ(s.full.endpoint(), x);
  EXPECT_EQ(s.full.intervals(), 8);
  EXPECT_EQ(s.body.intervals(), 7);
  EXPECT_GE(s.Vx, 1.0);
  EXPECT_GE(s.JP, 1.0 - 1e-12);
  EXPECT_NEAR(s.tip_distance, distance(m, s.body.endpoint(), x), 1e-12);
}

TEST(Measures, FlatWeightIsGaussianDensityOfTheGap) {
  const auto m = CurvatureModel::flat(3);
  const Partition p(4);
  Vec x(3);
  x << 0.3, -0.2, 1.0;
  const PinnedSample s = pinned_sample(m, p, x, 9, 2);
  const double r2 = (x - s.body.endpoint()).squaredNorm();
  // N(body end, I/n) density at x.
  const double expect = std::pow(p.n / (2 * std::numbers::pi), 1.5) * std::exp(-0.5 * p.n * r2);
  EXPECT_NEAR(std::exp(s.log_weight), expect, 1e-12 * expect);
}

TEST(Measures, FlatEstimateRecoversHeatKernel) {
  const auto m = CurvatureModel::flat(2);
  Vec x(2);
  x << 1.0, 0.5;
  const double exact = heat_kernel_exact(m, 1.0, origin_frame(m).point, x);
  for (int n : {1, 2, 8}) {
    const Estimate e = pinned_estimate(m, Partition(n), x, constant_one(), {.N = 20000, .seed = 4, .workers = 1});
    if (n == 1) {
      EXPECT_NEAR(e.mean, exact, 1e-14);
      EXPECT_EQ(e.stderr_, 0.0);
    } else {
      EXPECT_NEAR(e.mean, exact, 4 * e.stderr_) << "n=" << n;
    }
  }
}

TEST(Measures, ResultDoesNotDependOnWorkerCount) {
  const auto m = CurvatureModel::hyperbolic(2, 1.0);
  const Partition p(8);
  Vec dir(2);
  dir << 1, 0;
  const Vec x = point_from_origin(m, dir, 1.0);
  const auto f = observable_by_name("mid_dist");
  const Estimate a = pinned_estimate(m, p, x, f, {.N = 10000, .seed = 5, .workers = 1});
  const Estimate b = pinned_estimate(m, p, x, f, {.N = 10000, .seed = 5, .workers = 3});
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.stderr_, b.stderr_);
}

TEST(Measures, NonFiniteObservableIsReported) {
  const auto m = CurvatureModel::flat(1);
  CylinderObservable bad{"nan", {0.5}, [](const CurvatureModel&, const std::vector<Vec>&) {
                           return std::numeric_limits<double>::quiet_NaN();
                         }, 1.0};
  Vec x = Vec::Zero(1);
  try {
    pinned_estimate(m, Partition(4), x, bad, {.N = 10, .seed = 1, .workers = 1});
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("increments"), std::string::npos);
  }
}

TEST(Measures, InvalidSampleCount) {
  const auto m = CurvatureModel::flat(1);
  EXPECT_THROW(pinned_estimate(m, Partition(4), Vec::Zero(1), constant_one(), {.N = 1}), std::invalid_argument);
  EXPECT_THROW(weighted_mean({0.0}, {1.0}), std::invalid_argument);
}

TEST(Measures, ObservableRequiresKnotTimes) {
  const auto f = observable_by_name("mid_dist");
  const auto m = CurvatureModel::flat(1);
  std::vector<Vec> pts(4, Vec::Zero(1));
  EXPECT_THROW(f.evaluate(m, 3, pts), std::invalid_argument);
  EXPECT_THROW(observable_by_name("nope"), std::invalid_argument);
}

TEST(Measures, WeightedMeanOfKnownValues) {
  const Estimate e = weighted_mean({std::log(2.0), std::log(4.0), 0.0}, {1.0, 0.5, 3.0});
  EXPECT_NEAR(e.mean, 7.0 / 3, 1e-14);
  EXPECT_NEAR(e.stderr_, std::sqrt((1.0 / 9 + 1.0 / 9 + 4.0 / 9) / 2 / 3), 1e-14);
}

TEST(Measures, GaussianMomentExactValues) {
  EXPECT_NEAR(gaussian_moment_exact(Partition(4), 1, 0.1), std::pow(0.95, -2.0), 1e-14);
  EXPECT_NEAR(gaussian_moment_exact(Partition(4), 2, 0.1), std::pow(0.95, -4.0), 1e-14);
  EXPECT_THROW(gaussian_moment_exact(Partition(2), 1, 1.0), std::invalid_argument);
  const Estimate e = gaussian_moment_estimate(Partition(4), 1, 0.1, 20000, 3);
  EXPECT_NEAR(e.mean, std::pow(0.95, -2.0), 4 * e.stderr_);
}
