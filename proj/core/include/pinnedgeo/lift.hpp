#pragma once

#include <functional>
#include <string>

#include "pinnedgeo/jacobi.hpp"

namespace pinnedgeo {

// A smooth vector field on M, returned in ambient coordinates.
struct VectorField {
  std::string name;
  std::function<Vec(const CurvatureModel&, const Vec&)> at;
};

// Tangent projection of the fixed ambient vector w, damped by exp(-d(o,y)^2 / (2 R^2)).
VectorField bump_field(const Vec& w, double radius);
// Constant field w (flat) or its tangent projection (hyperbolic); no damping.
VectorField projected_field(const Vec& w);
VectorField zero_field();
// e_1 constant when flat, bump_field(e_1, 2) when hyperbolic.
VectorField default_field(const CurvatureModel& m);

// u_1^{-1} X(sigma(1)) in frame coordinates at the last knot.
Vec endpoint_frame_value(const CurvatureModel& m, const BrokenGeodesic& path, const VectorField& X);

struct Lift {
  Slopes slopes;        // k_i = f_{P,i+1}(1)^T K_P(1)^{-1} H
  std::vector<Vec> J;   // J_P(s_j) rebuilt from the slopes
  Vec v;                // K_P(1)^{-1} H
};

Lift lift_build(const JacobiFamily& fam, const Vec& H);

// Endpoint map L_1: stacked slopes -> J(1), as a d x (m d) matrix.
Eigen::MatrixXd endpoint_map(const JacobiFamily& fam);
// Orthonormal (Euclidean) basis of Nul(L_1), one column per vector.
Eigen::MatrixXd null_space_basis(const JacobiFamily& fam);

Eigen::VectorXd stack(const Slopes& k);
Slopes unstack(const Eigen::VectorXd& v, int d);

// max over basis vectors z of |<lift, z>_{G1}| / |z|_{G1}.
double lift_orthogonality(const JacobiFamily& fam, const Slopes& lift);

}  // namespace pinnedgeo
