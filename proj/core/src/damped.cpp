#include "pinnedgeo/damped.hpp"

#include <cmath>
#include <stdexcept>

namespace pinnedgeo {

namespace damped {

namespace {
// (1 - e^{-c s}) / c, continuous at c = 0.
double decay_integral(double c, double s) {
  if (std::abs(c * s) < 1e-12) return s;
  return -std::expm1(-c * s) / c;
}
}  // namespace

double T(double c, double s) { return std::exp(0.5 * c * s); }

double K(double c, double s) { return T(c, s) * decay_integral(c, s) * T(c, 1.0); }

double Ctilde(double c) { return 1.0 / (decay_integral(c, 1.0) * T(c, 1.0)); }

double J_factor(double c, double s) { return K(c, s) / K(c, 1.0); }

double Z(double c, double s) { return T(c, s) * decay_integral(c, s); }

}  // namespace damped

Mat DampedTransport::K_at(double s) const {
  const int d = model.dim;
  return damped::K(c, s) * Mat::Identity(d, d);
}

Vec DampedTransport::J(const Vec& H, double s) const { return damped::J_factor(c, s) * H; }

Vec DampedTransport::z_alpha(int alpha, double s) const {
  if (alpha < 0 || alpha >= model.dim) throw std::invalid_argument("z_alpha: index out of range");
  Vec e = Vec::Zero(model.dim);
  e(alpha) = damped::Z(c, s);
  return e;
}

DampedTransport damped_transport(const CurvatureModel& model, const std::vector<double>& grid) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("damped_transport: grid must increase");
  }
  DampedTransport dt;
  dt.model = model;
  dt.c = ricci_scalar_factor(model);
  dt.grid = grid;
  const Mat I = Mat::Identity(model.dim, model.dim);
  for (double s : grid) {
    const double t = damped::T(dt.c, s);
    dt.T.push_back(t * I);
    dt.Tinv.push_back(I / t);
    dt.K.push_back(damped::K(dt.c, s) * I);
  }
  dt.Ctilde = damped::Ctilde(dt.c) * I;
  return dt;
}

std::vector<double> refined_grid(int n, int refine) {
  if (n < 1 || refine < 1) throw std::invalid_argument("refined_grid: bad sizes");
  const int M = n * refine;
  std::vector<double> g(M + 1);
  for (int i = 0; i <= M; ++i) g[i] = static_cast<double>(i) / M;
  return g;
}

}  // namespace pinnedgeo
