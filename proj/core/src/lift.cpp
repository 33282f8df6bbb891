#include "pinnedgeo/lift.hpp"

#include <cmath>
#include <stdexcept>

namespace pinnedgeo {

VectorField bump_field(const Vec& w, double radius) {
  return {"bump", [w, radius](const CurvatureModel& m, const Vec& y) -> Vec {
            const double r = distance(m, origin_frame(m).point, y);
            return std::exp(-0.5 * r * r / (radius * radius)) * project_tangent(m, y, w);
          }};
}

VectorField projected_field(const Vec& w) {
  return {"projected", [w](const CurvatureModel& m, const Vec& y) -> Vec { return project_tangent(m, y, w); }};
}

VectorField zero_field() {
  return {"zero", [](const CurvatureModel& m, const Vec&) -> Vec { return Vec::Zero(m.ambient_dim()); }};
}

VectorField default_field(const CurvatureModel& m) {
  Vec w = Vec::Zero(m.ambient_dim());
  w(0) = 1.0;
  if (m.is_flat()) return projected_field(w);
  return bump_field(w, 2.0);
}

Vec endpoint_frame_value(const CurvatureModel& m, const BrokenGeodesic& path, const VectorField& X) {
  const FramePoint& end = path.knots.back();
  return frame_coords(m, end, X.at(m, end.point));
}

Lift lift_build(const JacobiFamily& fam, const Vec& H) {
  Lift L;
  L.v = solve_checked(fam.K[fam.m], H);
  L.slopes.resize(fam.m);
  for (int i = 1; i <= fam.m; ++i) L.slopes[i - 1] = fam.fm(i, fam.m).transpose() * L.v;
  L.J = jacobi_from_slopes(fam, L.slopes);
  return L;
}

Eigen::MatrixXd endpoint_map(const JacobiFamily& fam) {
  const int d = fam.dim();
  Eigen::MatrixXd A(d, fam.m * d);
  for (int i = 1; i <= fam.m; ++i) A.block(0, (i - 1) * d, d, d) = fam.fm(i, fam.m) / fam.partition.n;
  return A;
}

Eigen::MatrixXd null_space_basis(const JacobiFamily& fam) {
  const Eigen::MatrixXd A = endpoint_map(fam);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::MatrixXd ker = lu.kernel();
  if (ker.cols() == 0 || (ker.cols() == 1 && ker.norm() == 0.0)) return Eigen::MatrixXd(A.cols(), 0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ker);
  return qr.householderQ() * Eigen::MatrixXd::Identity(ker.rows(), ker.cols());
}

Eigen::VectorXd stack(const Slopes& k) {
  if (k.empty()) return {};
  const int d = static_cast<int>(k[0].size());
  Eigen::VectorXd v(static_cast<Eigen::Index>(k.size()) * d);
  for (std::size_t i = 0; i < k.size(); ++i) v.segment(static_cast<Eigen::Index>(i) * d, d) = k[i];
  return v;
}

Slopes unstack(const Eigen::VectorXd& v, int d) {
  if (v.size() % d) throw std::invalid_argument("unstack: size not a multiple of d");
  Slopes k(v.size() / d);
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = v.segment(static_cast<Eigen::Index>(i) * d, d);
  return k;
}

double lift_orthogonality(const JacobiFamily& fam, const Slopes& lift) {
  const Eigen::MatrixXd Z = null_space_basis(fam);
  const Eigen::VectorXd k = stack(lift);
  const double n = fam.partition.n;
  double worst = 0.0;
  for (Eigen::Index c = 0; c < Z.cols(); ++c) {
    const double ip = k.dot(Z.col(c)) / n;
    const double zn = Z.col(c).norm() / std::sqrt(n);
    worst = std::max(worst, std::abs(ip) / zn);
  }
  return worst;
}

}  // namespace pinnedgeo
