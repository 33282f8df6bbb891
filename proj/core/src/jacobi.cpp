#include "pinnedgeo/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pinnedgeo {

namespace {

// sinh(z)/z with a short series near zero.
double sinhc(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
  }
  return std::sinh(z) / z;
}

CosSin closed_form(const CurvatureModel& m, const Vec& xi, double s) {
  const int d = m.dim;
  const double len = xi.norm();
  const Mat I = Mat::Identity(d, d);
  if (m.is_flat() || len == 0.0) return {I, s * I};
  const double w = std::sqrt(m.kappa) * len;
  const Mat P = xi * xi.transpose() / (len * len);
  const Mat Q = I - P;
  return {P + std::cosh(w * s) * Q, s * P + (s * sinhc(w * s)) * Q};
}

// Fixed-step RK4 on the first-order system (Y, Y')' = (Y', A Y).
CosSin runge_kutta(const CurvatureModel& m, const Vec& xi, double s, int steps) {
  const int d = m.dim;
  const Eigen::MatrixXd A = curvature_operator(m, xi);
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(d, 2 * d);
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(d, 2 * d);
  Y.leftCols(d).setIdentity();
  Z.rightCols(d).setIdentity();
  const double h = s / steps;
  for (int k = 0; k < steps; ++k) {
    const Eigen::MatrixXd k1y = Z, k1z = A * Y;
    const Eigen::MatrixXd k2y = Z + 0.5 * h * k1z, k2z = A * (Y + 0.5 * h * k1y);
    const Eigen::MatrixXd k3y = Z + 0.5 * h * k2z, k3z = A * (Y + 0.5 * h * k2y);
    const Eigen::MatrixXd k4y = Z + h * k3z, k4z = A * (Y + h * k3y);
    Y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    Z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
  }
  return {Y.leftCols(d), Y.rightCols(d)};
}

// Sum over i = 1..m of f_{P,i}(s_m) f_{P,i}(s_m)^T using backward products.
Mat backward_gram(const CurvatureModel& model, const Partition& p, const std::vector<Vec>& inc) {
  const int d = model.dim;
  const int n = p.n;
  Mat G = Mat::Zero(d, d);
  Mat prod = Mat::Identity(d, d);
  for (int i = static_cast<int>(inc.size()); i >= 1; --i) {
    const CosSin cs = closed_form(model, n * inc[i - 1], p.delta());
    const Mat fi = prod * (n * cs.S);
    G.noalias() += fi * fi.transpose();
    prod = prod * cs.C;
  }
  return G;
}

}  // namespace

CosSin solve_cs(const CurvatureModel& m, const Vec& xi, double s, JacobiMethod method, int substeps) {
  if (!xi.allFinite()) throw std::invalid_argument("solve_cs: non-finite velocity");
  if (s < 0.0 || !std::isfinite(s)) throw std::invalid_argument("solve_cs: bad evaluation time");
  if (method == JacobiMethod::ClosedForm) return closed_form(m, xi, s);
  if (substeps < 1) throw std::invalid_argument("solve_cs: substeps must be positive");
  return runge_kutta(m, xi, s, substeps);
}

IntervalCS::IntervalCS(const CurvatureModel& m, const Vec& xi, double h, JacobiMethod method,
                       int substeps)
    : model_(m), xi_(xi), h_(h), method_(method), substeps_(substeps) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("IntervalCS: h must be positive");
  if (!xi.allFinite()) throw std::invalid_argument("IntervalCS: non-finite velocity");
}

CosSin IntervalCS::eval(double s) const {
  if (s < 0.0 || s > h_ * (1.0 + 1e-12)) throw std::invalid_argument("IntervalCS: s outside interval");
  if (method_ == JacobiMethod::RungeKutta) {
    const int steps = std::max(1, static_cast<int>(std::ceil(substeps_ * s / h_)));
    return solve_cs(model_, xi_, s, method_, steps);
  }
  return solve_cs(model_, xi_, s, method_);
}

JacobiFamily build_family(const CurvatureModel& model, const BrokenGeodesic& path, JacobiMethod method,
                          int substeps) {
  JacobiFamily fam;
  fam.model = model;
  fam.partition = path.partition;
  const int n = path.partition.n;
  const int m = path.intervals();
  const int d = model.dim;
  fam.m = m;
  fam.xi.assign(m + 1, Vec::Zero(d));
  fam.C.assign(m + 1, Mat::Identity(d, d));
  fam.S.assign(m + 1, Mat::Zero(d, d));
  for (int i = 1; i <= m; ++i) {
    fam.xi[i] = n * path.increments[i - 1];
    const CosSin cs = solve_cs(model, fam.xi[i], path.partition.delta(), method, substeps);
    if (!cs.C.allFinite() || !cs.S.allFinite()) throw NumericalError("build_family: non-finite C/S");
    fam.C[i] = cs.C;
    fam.S[i] = cs.S;
  }

  const Mat I = Mat::Identity(d, d);
  const Mat Z = Mat::Zero(d, d);
  fam.f.assign(static_cast<std::size_t>(m + 1) * (m + 1), Z);
  for (int j = 0; j <= m; ++j) fam.f[j] = I;  // f_{P,0} == I
  for (int i = 1; i <= m; ++i) {
    Mat* row = &fam.f[static_cast<std::size_t>(i) * (m + 1)];
    row[i] = n * fam.S[i];
    for (int j = i + 1; j <= m; ++j) row[j] = fam.C[j] * row[j - 1];
  }

  fam.K.assign(m + 1, Z);
  for (int j = 1; j <= m; ++j) {
    Mat acc = Z;
    for (int i = 1; i <= j; ++i) acc.noalias() += fam.fm(i, j) * fam.fm(i, m).transpose();
    fam.K[j] = acc / n;
  }
  return fam;
}

std::vector<Vec> jacobi_from_slopes(const JacobiFamily& fam, const Slopes& k) {
  if (static_cast<int>(k.size()) != fam.m) throw std::invalid_argument("jacobi_from_slopes: need m slopes");
  const int n = fam.partition.n;
  std::vector<Vec> J(fam.m + 1, Vec::Zero(fam.dim()));
  for (int j = 1; j <= fam.m; ++j) {
    Vec acc = Vec::Zero(fam.dim());
    for (int i = 1; i <= j; ++i) acc.noalias() += fam.fm(i, j) * k[i - 1];
    J[j] = acc / n;
  }
  return J;
}

Vec jacobi_at(const JacobiFamily& fam, const Slopes& k, double s) {
  const Partition& p = fam.partition;
  if (s <= 0.0) return Vec::Zero(fam.dim());
  int l = static_cast<int>(std::ceil(s * p.n - 1e-12));
  l = std::clamp(l, 1, fam.m);
  const std::vector<Vec> J = jacobi_from_slopes(fam, k);
  const CosSin cs = solve_cs(fam.model, fam.xi[l], s - p.knot(l - 1));
  return cs.C * J[l - 1] + cs.S * k[l - 1];
}

Slopes slopes_from_knots(const CurvatureModel& model, const Partition& p, const std::vector<Vec>& increments,
                         const std::vector<Vec>& J) {
  const int m = static_cast<int>(increments.size());
  if (static_cast<int>(J.size()) != m + 1) throw std::invalid_argument("slopes_from_knots: size mismatch");
  Slopes k(m);
  for (int j = 1; j <= m; ++j) {
    const CosSin cs = closed_form(model, p.n * increments[j - 1], p.delta());
    k[j - 1] = solve_checked(cs.S, J[j] - cs.C * J[j - 1]);
  }
  return k;
}

double normal_jacobian(const JacobiFamily& fam) { return std::sqrt(fam.K[fam.m].determinant()); }

double rho_P(const JacobiFamily& fam) {
  const int n = fam.partition.n;
  double r = 1.0;
  for (int i = 1; i <= std::min(fam.m, n - 1); ++i) r *= (n * fam.S[i]).determinant();
  return r;
}

Mat endpoint_gram(const CurvatureModel& model, const Partition& p, const std::vector<Vec>& increments) {
  return backward_gram(model, p, increments) / p.n;
}

double volume_change_Vx(const CurvatureModel& model, const Partition& p, const std::vector<Vec>& body,
                        const Vec& tip) {
  const int n = p.n;
  const int d = model.dim;
  const Mat F = backward_gram(model, p, body) / (static_cast<double>(n) * n);
  const CosSin cs = closed_form(model, n * tip, p.delta());
  const Mat L = solve_checked(cs.S, cs.C);  // C S^{-1}; C and S commute
  const Mat G = Mat::Identity(d, d) + L * F * L.transpose();
  return std::sqrt(G.determinant());
}

double volume_change_Vx(const JacobiFamily& body, const Vec& tip) {
  std::vector<Vec> inc(body.m);
  for (int i = 1; i <= body.m; ++i) inc[i - 1] = body.xi[i] / body.partition.n;
  return volume_change_Vx(body.model, body.partition, inc, tip);
}

double volume_change_bound(const CurvatureModel& model, const Partition& p, const std::vector<Vec>& body,
                           double tip_distance) {
  const int d = model.dim;
  const double N = model.kappa;
  double seg = 0.0;
  for (const Vec& b : body) seg += b.squaredNorm();
  double total = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= d; ++k) {
    if (k > 0) binom = binom * (d - k + 1) / k;
    const double logterm = 0.5 * k * std::log(static_cast<double>(p.n)) +
                           0.5 * N * k * tip_distance * tip_distance + k * N * seg;
    total += binom * std::exp(logterm);
  }
  return total;
}

DetIdentity det_identity_check(const Eigen::MatrixXd& A) {
  const Eigen::Index nd = A.cols();
  const Eigen::Index d = A.rows();
  Eigen::MatrixXd S(nd + d, nd);
  S.topRows(nd).setIdentity();
  S.bottomRows(d) = A;
  DetIdentity r;
  r.lhs = (S.transpose() * S).determinant();
  r.rhs = (Eigen::MatrixXd::Identity(d, d) + A * A.transpose()).determinant();
  r.rel_diff = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.rhs), 1e-300);
  return r;
}

}  // namespace pinnedgeo
