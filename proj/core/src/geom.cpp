#include "pinnedgeo/geom.hpp"

#include <cmath>
#include <stdexcept>

namespace pinnedgeo {

namespace {

// asinh(z)/z, accurate near zero.
double asinh_ratio(double z) {
  if (z < 1e-6) return 1.0 - z * z / 6.0;
  return std::asinh(z) / z;
}

}  // namespace

CurvatureModel CurvatureModel::flat(int d) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension out of range");
  return {ModelKind::Flat, d, 0.0};
}

CurvatureModel CurvatureModel::hyperbolic(int d, double kappa) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension out of range");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be positive");
  return {ModelKind::Hyperbolic, d, kappa};
}

double ambient_inner(const CurvatureModel& m, const Vec& a, const Vec& b) {
  if (m.is_flat()) return a.dot(b);
  const int last = m.dim;
  return a.head(last).dot(b.head(last)) - a(last) * b(last);
}

FramePoint origin_frame(const CurvatureModel& m) {
  const int D = m.ambient_dim();
  FramePoint fp;
  fp.point = Vec::Zero(D);
  fp.frame = Mat::Zero(D, m.dim);
  for (int i = 0; i < m.dim; ++i) fp.frame(i, i) = 1.0;
  if (!m.is_flat()) fp.point(m.dim) = 1.0 / std::sqrt(m.kappa);
  return fp;
}

Vec to_ambient(const FramePoint& fp, const Vec& v) { return fp.frame * v; }

Vec frame_coords(const CurvatureModel& m, const FramePoint& fp, const Vec& w) {
  Vec c(m.dim);
  for (int i = 0; i < m.dim; ++i) c(i) = ambient_inner(m, fp.frame.col(i), w);
  return c;
}

Vec project_tangent(const CurvatureModel& m, const Vec& y, const Vec& w) {
  if (m.is_flat()) return w;
  return w + m.kappa * ambient_inner(m, w, y) * y;
}

FramePoint exp_map(const CurvatureModel& m, const FramePoint& fp, const Vec& v) {
  if (!v.allFinite()) throw std::invalid_argument("exp_map: non-finite tangent vector");
  if (m.is_flat()) return {fp.point + fp.frame * v, fp.frame};

  const double len = v.norm();
  if (len == 0.0) return fp;
  const double sk = std::sqrt(m.kappa);
  const double r = sk * len;
  const Vec w = fp.frame * (v / len);  // unit tangent direction
  const double ch = std::cosh(r), sh = std::sinh(r);

  FramePoint out;
  out.point = ch * fp.point + (sh / sk) * w;
  // Parallel transport: v -> v + <v,w>[(cosh - 1) w + sqrt(kappa) sinh x].
  const Vec kick = (ch - 1.0) * w + sk * sh * fp.point;
  out.frame = fp.frame;
  for (int i = 0; i < m.dim; ++i) {
    out.frame.col(i) += ambient_inner(m, fp.frame.col(i), w) * kick;
  }
  renormalize(m, out);
  return out;
}

Vec log_map(const CurvatureModel& m, const FramePoint& fp, const Vec& y) {
  if (m.is_flat()) return fp.frame.transpose() * (y - fp.point);
  const double alpha = -m.kappa * ambient_inner(m, fp.point, y);
  const Vec u = y - alpha * fp.point;
  const double un = std::sqrt(std::max(0.0, ambient_inner(m, u, u)));
  const double sk = std::sqrt(m.kappa);
  // d = asinh(sqrt(k)|u|)/sqrt(k); log = d u/|u|.
  return frame_coords(m, fp, u) * asinh_ratio(sk * un);
}

double distance(const CurvatureModel& m, const Vec& x, const Vec& y) {
  if (m.is_flat()) return (x - y).norm();
  const double alpha = -m.kappa * ambient_inner(m, x, y);
  const Vec u = y - alpha * x;
  const double un = std::sqrt(std::max(0.0, ambient_inner(m, u, u)));
  const double sk = std::sqrt(m.kappa);
  return un * asinh_ratio(sk * un);
}

Vec point_from_origin(const CurvatureModel& m, const Vec& dir, double r) {
  const double nd = dir.norm();
  if (!(nd > 0.0)) throw std::invalid_argument("point_from_origin: zero direction");
  return exp_map(m, origin_frame(m), dir * (r / nd)).point;
}

Vec curvature_apply(const CurvatureModel& m, const Vec& a, const Vec& b, const Vec& c) {
  return -m.kappa * (b.dot(c) * a - a.dot(c) * b);
}

Mat curvature_operator(const CurvatureModel& m, const Vec& xi) {
  const int d = m.dim;
  Mat A = Mat::Identity(d, d) * xi.squaredNorm() - xi * xi.transpose();
  return m.kappa * A;
}

Vec ricci_apply(const CurvatureModel& m, const Vec& v) { return ricci_scalar_factor(m) * v; }

double ricci_scalar_factor(const CurvatureModel& m) { return m.kappa * (m.dim - 1); }

double constraint_error(const CurvatureModel& m, const FramePoint& fp) {
  double err = 0.0;
  if (!m.is_flat()) {
    err = std::abs(ambient_inner(m, fp.point, fp.point) + 1.0 / m.kappa) * m.kappa;
    if (fp.point(m.dim) <= 0.0) err = std::max(err, 1.0);
  }
  for (int i = 0; i < m.dim; ++i) {
    if (!m.is_flat()) {
      err = std::max(err, std::abs(ambient_inner(m, fp.point, fp.frame.col(i))) * std::sqrt(m.kappa));
    }
    for (int j = 0; j <= i; ++j) {
      const double g = ambient_inner(m, fp.frame.col(i), fp.frame.col(j));
      err = std::max(err, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  return err;
}

void renormalize(const CurvatureModel& m, FramePoint& fp) {
  if (m.is_flat()) return;  // flat transport is exact
  // Rescaling by the Minkowski norm loses digits far from o; solving for
  // the last coordinate keeps full relative precision.
  const int d = m.dim;
  fp.point(d) = std::sqrt(1.0 / m.kappa + fp.point.head(d).squaredNorm());
  for (int i = 0; i < m.dim; ++i) {
    Vec e = project_tangent(m, fp.point, fp.frame.col(i));
    for (int j = 0; j < i; ++j) e -= ambient_inner(m, e, fp.frame.col(j)) * fp.frame.col(j);
    e /= std::sqrt(ambient_inner(m, e, e));
    fp.frame.col(i) = e;
  }
}

}  // namespace pinnedgeo
