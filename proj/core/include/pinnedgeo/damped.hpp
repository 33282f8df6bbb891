#pragma once

#include <vector>

#include "pinnedgeo/geom.hpp"

namespace pinnedgeo {

// Damped transport for a constant Ricci operator c I, c = kappa (d - 1).
// T solves T' = (c/2) T, T_0 = I; every object below is a scalar multiple of I.
namespace damped {

double T(double c, double s);
double K(double c, double s);       // T_s (int_0^s T_r^{-2} dr) T_1
double Ctilde(double c);            // (int_0^1 T_r^{-2} dr)^{-1} T_1^{-1}
double J_factor(double c, double s);  // K_s K_1^{-1}
double Z(double c, double s);       // Z' = (c/2) Z + T_s^{-1}, Z_0 = 0

}  // namespace damped

struct DampedTransport {
  CurvatureModel model;
  double c = 0.0;
  std::vector<double> grid;
  std::vector<Mat> T, Tinv, K;
  Mat Ctilde;

  Mat K_at(double s) const;
  Vec J(const Vec& H, double s) const;
  Vec z_alpha(int alpha, double s) const;  // alpha in 0..d-1
};

DampedTransport damped_transport(const CurvatureModel& model, const std::vector<double>& grid);

// Knots of an n-interval partition refined by `refine`.
std::vector<double> refined_grid(int n, int refine);

}  // namespace pinnedgeo
