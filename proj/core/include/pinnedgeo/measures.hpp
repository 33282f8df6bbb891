#pragma once

#include <cstdint>
#include <vector>

#include "pinnedgeo/jacobi.hpp"
#include "pinnedgeo/observables.hpp"
#include "pinnedgeo/paths.hpp"

namespace pinnedgeo {

// A rolled path distributed as nu^1_P (Gaussian increments, variance 1/n).
BrokenGeodesic sample_nu1P(const CurvatureModel& m, const Partition& p, std::uint64_t seed,
                           std::uint64_t sample);

// Body on [0, tau], tau = s_{n-1}, closed by the geodesic to x.
struct PinnedSample {
  BrokenGeodesic body;
  BrokenGeodesic full;  // psi_x(body); full.endpoint() == x
  double log_weight = 0.0;
  double tip_distance = 0.0;
  double Vx = 1.0;
  double JP = 1.0;
};

// Builds the pinned sample from explicit body increments.
PinnedSample pin_body(const CurvatureModel& m, const Partition& p, const std::vector<Vec>& body_increments,
                      const Vec& x);
PinnedSample pinned_sample(const CurvatureModel& m, const Partition& p, const Vec& x, std::uint64_t seed,
                           std::uint64_t sample);

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t N = 0;
};

struct PinnedOptions {
  std::size_t N = 100000;
  std::uint64_t seed = 1;
  int workers = 0;
  std::vector<double>* log_weights = nullptr;  // optional sink, one entry per sample
};

// Monte Carlo estimate of the integral of f against nu^1_{P,x}.
Estimate pinned_estimate(const CurvatureModel& m, const Partition& p, const Vec& x,
                         const CylinderObservable& f, const PinnedOptions& opt);

// E[exp(q sum |Delta_j beta|^2)] by plain Monte Carlo and its exact value.
Estimate gaussian_moment_estimate(const Partition& p, int d, double q, std::size_t N, std::uint64_t seed);
double gaussian_moment_exact(const Partition& p, int d, double q);

// Mean and standard error of y_i = exp(lw_i) f_i, reduced in fixed blocks so
// the result does not depend on evaluation order.
Estimate weighted_mean(const std::vector<double>& log_w, const std::vector<double>& f);

}  // namespace pinnedgeo
