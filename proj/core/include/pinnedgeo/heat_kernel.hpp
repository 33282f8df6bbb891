#pragma once

#include <functional>

#include "pinnedgeo/geom.hpp"

namespace pinnedgeo {

// Heat kernel of (1/2) Laplacian. Flat: any d. Hyperbolic: d = 3 only.
double heat_kernel_radial(const CurvatureModel& m, double t, double rho);
double heat_kernel_exact(const CurvatureModel& m, double t, const Vec& x, const Vec& y);

struct RadialPdeOptions {
  double rmax = 30.0;
  int cells = 10000;
  double t0 = 0.01;  // start time of the parametrix initial datum
  double dt = 1e-3;
};

struct OracleValue {
  double value = 0.0;
  double error = 0.0;  // self-convergence estimate
};

// Radial heat equation p_t = (1/2) w^{-1} (w p')' with w = (sinh(sqrt(k) r)/sqrt(k))^{d-1}
// (r^{d-1} when flat), finite volumes + Crank-Nicolson, Richardson in t0.
OracleValue heat_kernel_pde(const CurvatureModel& m, double t, double rho, const RadialPdeOptions& opt = {});

struct QuadratureOptions {
  double rmax = 10.0;
  int nr = 800;      // Simpson panels in r (even)
  int ntheta = 400;  // Simpson panels in theta (even)
};

// Integral of g(d(o,y)) p_{t}(o,y) p_{1-t}(y,x) over y, with d(o,x) = rho, d >= 2.
// The error field compares against a run at doubled resolution.
OracleValue pinned_fdd_oracle(const CurvatureModel& m, double rho, const std::function<double(double)>& g,
                              double t = 0.5, const QuadratureOptions& opt = {});

// Flat d = 3: E[|sigma(1/2)|] p_1(0,x) for the Brownian bridge to x, |x| = rho.
double flat_bridge_mid_distance(double rho);

}  // namespace pinnedgeo
