#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pinnedgeo/lift.hpp"

namespace pinnedgeo {

// A function of the knot points sigma(s_0..s_n) of a full path.
using PathFunction = std::function<double(const CurvatureModel&, const std::vector<Vec>&)>;

struct IbpConfig {
  CurvatureModel model;
  int n = 4;
  std::size_t N = 100000;
  std::uint64_t seed = 1;
  int workers = 0;
  double h_chart = 1e-5;  // central difference step for chart perturbations
  double h_div = 1e-4;    // step for the divergence of V
  double max_cond = 1e10;
  VectorField field;
  PathFunction f, g;
};

// Lifted field expressed on standardized increment space z (Delta beta = z / sqrt(n)).
struct ChartField {
  Eigen::VectorXd V;     // M^{-1} k
  double log_abs_det_M = 0.0;
  double cond = 0.0;
  Slopes lift;           // k
  std::vector<Vec> inc;  // Delta beta
};

// Returns false if M is too ill-conditioned.
bool chart_field(const IbpConfig& cfg, const Eigen::VectorXd& z, ChartField& out);

// Column (i, alpha) of M: slopes of the variation of the rolled path under z_(i,alpha).
Eigen::MatrixXd chart_slope_matrix(const CurvatureModel& m, const Partition& p, const Eigen::VectorXd& z, double h);

std::vector<Vec> knot_points(const CurvatureModel& m, const Partition& p, const Eigen::VectorXd& z);

struct IbpResult {
  double lhs_mean = 0, lhs_se = 0;
  double rhs_mean = 0, rhs_se = 0;
  double combined_se = 0;   // sqrt(lhs_se^2 + rhs_se^2)
  double paired_se = 0;     // stderr of the per-sample difference
  std::size_t used = 0, skipped = 0;
  // Ungated: per-sample (z.V - div V) against sum <k_{i-1}, Delta_i beta> - div_{G1}.
  double term_gap_mean = 0, term_gap_abs_mean = 0;
  bool pass = false;  // |lhs - rhs| <= 3 combined_se
};

IbpResult ibp_check(const IbpConfig& cfg);

}  // namespace pinnedgeo

namespace pinnedgeo {

// exp(-d(o, sigma(s_{n/2}))^2 / 4) and tanh of the first ambient coordinate of sigma(1).
PathFunction ibp_default_f();
PathFunction ibp_default_g();

}  // namespace pinnedgeo
