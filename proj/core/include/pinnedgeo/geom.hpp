#pragma once

#include "pinnedgeo/types.hpp"

namespace pinnedgeo {

enum class ModelKind { Flat, Hyperbolic };

// Flat R^d (kappa = 0) or hyperbolic space of sectional curvature -kappa,
// realized as the hyperboloid <x,x>_M = -1/kappa, x_d > 0 in R^{d+1}.
struct CurvatureModel {
  ModelKind kind = ModelKind::Flat;
  int dim = 1;
  double kappa = 0.0;

  static CurvatureModel flat(int d);
  static CurvatureModel hyperbolic(int d, double kappa = 1.0);

  int ambient_dim() const { return kind == ModelKind::Flat ? dim : dim + 1; }
  bool is_flat() const { return kind == ModelKind::Flat; }
};

// A point together with an orthonormal tangent frame (columns, ambient coords).
struct FramePoint {
  Vec point;
  Mat frame;
};

// Ambient bilinear form: Euclidean for flat, Minkowski for hyperbolic.
double ambient_inner(const CurvatureModel& m, const Vec& a, const Vec& b);

// Base point o with its standard frame u0.
FramePoint origin_frame(const CurvatureModel& m);

FramePoint exp_map(const CurvatureModel& m, const FramePoint& fp, const Vec& v);
Vec log_map(const CurvatureModel& m, const FramePoint& fp, const Vec& y);
double distance(const CurvatureModel& m, const Vec& x, const Vec& y);

// Point at geodesic distance r from o in frame direction dir (dir != 0).
Vec point_from_origin(const CurvatureModel& m, const Vec& dir, double r);

// Frame coordinates of an ambient tangent vector at fp, and the inverse.
Vec frame_coords(const CurvatureModel& m, const FramePoint& fp, const Vec& w);
Vec to_ambient(const FramePoint& fp, const Vec& v);

// Orthogonal projection of an ambient vector onto T_y M.
Vec project_tangent(const CurvatureModel& m, const Vec& y, const Vec& w);

// Curvature in frame coordinates: R(a,b)c = -kappa(<b,c>a - <a,c>b).
Vec curvature_apply(const CurvatureModel& m, const Vec& a, const Vec& b, const Vec& c);
// A_xi = R(xi, .)xi as a d x d matrix: kappa(|xi|^2 I - xi xi^T).
Mat curvature_operator(const CurvatureModel& m, const Vec& xi);
Vec ricci_apply(const CurvatureModel& m, const Vec& v);
double ricci_scalar_factor(const CurvatureModel& m);  // kappa (d - 1)

// Deviation from the manifold constraint and from frame orthonormality.
double constraint_error(const CurvatureModel& m, const FramePoint& fp);

// Pull the point back onto the manifold and re-orthonormalize the frame.
void renormalize(const CurvatureModel& m, FramePoint& fp);

}  // namespace pinnedgeo
