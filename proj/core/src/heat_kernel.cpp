#include "pinnedgeo/heat_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace pinnedgeo {

namespace {

constexpr double kPi = std::numbers::pi;

// x / sinh(x), accurate near zero.
double x_over_sinh(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return x / std::sinh(x);
}

double radial_weight(const CurvatureModel& m, double r) {
  if (m.dim == 1) return 1.0;
  if (m.is_flat()) return std::pow(r, m.dim - 1);
  const double sk = std::sqrt(m.kappa);
  return std::pow(std::sinh(sk * r) / sk, m.dim - 1);
}

// Solves the tridiagonal system (lower a, diag b, upper c) in place into x.
void thomas(const std::vector<double>& a, std::vector<double> b, const std::vector<double>& c,
            std::vector<double>& x) {
  const std::size_t n = b.size();
  std::vector<double> cp(n);
  cp[0] = c[0] / b[0];
  x[0] /= b[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double den = b[i] - a[i] * cp[i - 1];
    cp[i] = c[i] / den;
    x[i] = (x[i] - a[i] * x[i - 1]) / den;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
}

double pde_run(const CurvatureModel& m, double t, double rho, const RadialPdeOptions& opt) {
  const int N = opt.cells;
  const double h = opt.rmax / N;
  const int d = m.dim;
  std::vector<double> r(N), lo(N, 0.0), up(N, 0.0), diag(N, 0.0), p(N);
  for (int i = 0; i < N; ++i) {
    r[i] = (i + 0.5) * h;
    const double wc = radial_weight(m, r[i]);
    const double wl = i == 0 ? (d == 1 ? 0.0 : radial_weight(m, 0.0)) : radial_weight(m, i * h);
    const double wr = i == N - 1 ? 0.0 : radial_weight(m, (i + 1) * h);
    lo[i] = 0.5 * wl / (h * h * wc);
    up[i] = 0.5 * wr / (h * h * wc);
    diag[i] = -(lo[i] + up[i]);
  }
  if (d == 1) lo[0] = 0.0;  // reflection: zero flux through the origin

  // Parametrix at t0: Euclidean Gaussian times the volume-density correction.
  const double t0 = opt.t0;
  const double sk = m.is_flat() ? 0.0 : std::sqrt(m.kappa);
  for (int i = 0; i < N; ++i) {
    double corr = 1.0;
    if (!m.is_flat()) corr = std::pow(x_over_sinh(sk * r[i]), 0.5 * (d - 1));
    p[i] = std::pow(2.0 * kPi * t0, -0.5 * d) * std::exp(-r[i] * r[i] / (2.0 * t0)) * corr;
  }

  auto step = [&](double dt, double theta) {
    std::vector<double> rhs(N), a(N), b(N), c(N);
    for (int i = 0; i < N; ++i) {
      double lp = diag[i] * p[i];
      if (i > 0) lp += lo[i] * p[i - 1];
      if (i < N - 1) lp += up[i] * p[i + 1];
      rhs[i] = p[i] + (1.0 - theta) * dt * lp;
      a[i] = -theta * dt * lo[i];
      b[i] = 1.0 - theta * dt * diag[i];
      c[i] = -theta * dt * up[i];
    }
    thomas(a, b, c, rhs);
    p.swap(rhs);
  };

  const double span = t - t0;
  const int steps = std::max(2, static_cast<int>(std::ceil(span / opt.dt)));
  const double dt = span / steps;
  // Two implicit half steps damp the stiff modes of the narrow datum.
  step(0.5 * dt, 1.0);
  step(0.5 * dt, 1.0);
  for (int k = 1; k < steps; ++k) step(dt, 0.5);

  if (rho <= r[0]) {
    // Even in rho: fit a + b rho^2 through the first two cells.
    const double b2 = (p[1] - p[0]) / (r[1] * r[1] - r[0] * r[0]);
    return p[0] + b2 * (rho * rho - r[0] * r[0]);
  }
  const double pos = rho / h - 0.5;
  const int i = static_cast<int>(pos);
  if (i >= N - 1) return p[N - 1];
  const double w = pos - i;
  return (1.0 - w) * p[i] + w * p[i + 1];
}

double simpson_weight(int i, int n) {
  if (i == 0 || i == n) return 1.0;
  return i % 2 ? 4.0 : 2.0;
}

double fdd_quadrature(const CurvatureModel& m, double rho, const std::function<double(double)>& g, double t,
                      int nr, int nth, double rmax) {
  const int d = m.dim;
  const double sk = m.is_flat() ? 0.0 : std::sqrt(m.kappa);
  // Area of the unit (d-2)-sphere swept by the angle around the o->x axis.
  const double omega = 2.0 * std::pow(kPi, 0.5 * (d - 1)) / std::tgamma(0.5 * (d - 1));
  const double hr = rmax / nr, hth = kPi / nth;
  const double chr = m.is_flat() ? 0.0 : std::cosh(sk * rho), shr = m.is_flat() ? 0.0 : std::sinh(sk * rho);
  double total = 0.0;
  for (int i = 0; i <= nr; ++i) {
    const double r = i * hr;
    const double vol = m.is_flat() ? std::pow(r, d - 1) : std::pow(std::sinh(sk * r) / sk, d - 1);
    if (vol == 0.0) continue;
    const double inner_fac = g(r) * heat_kernel_radial(m, t, r) * vol;
    const double ch = m.is_flat() ? 0.0 : std::cosh(sk * r), sh = m.is_flat() ? 0.0 : std::sinh(sk * r);
    double inner = 0.0;
    for (int j = 0; j <= nth; ++j) {
      const double th = j * hth;
      const double st = std::sin(th);
      const double ang = d == 2 ? 1.0 : std::pow(st, d - 2);
      if (ang == 0.0) continue;
      double dist;
      if (m.is_flat()) {
        dist = std::sqrt(std::max(0.0, r * r + rho * rho - 2.0 * r * rho * std::cos(th)));
      } else {
        const double c = ch * chr - sh * shr * std::cos(th);
        dist = std::acosh(std::max(1.0, c)) / sk;
      }
      inner += simpson_weight(j, nth) * ang * heat_kernel_radial(m, 1.0 - t, dist);
    }
    total += simpson_weight(i, nr) * inner_fac * inner * hth / 3.0;
  }
  return omega * total * hr / 3.0;
}

}  // namespace

double heat_kernel_radial(const CurvatureModel& m, double t, double rho) {
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel: t must be positive");
  const int d = m.dim;
  const double gauss = std::pow(2.0 * kPi * t, -0.5 * d) * std::exp(-rho * rho / (2.0 * t));
  if (m.is_flat()) return gauss;
  if (d != 3) throw std::invalid_argument("heat kernel: closed form wired only for hyperbolic d = 3");
  const double sk = std::sqrt(m.kappa);
  return gauss * x_over_sinh(sk * rho) * std::exp(-0.5 * m.kappa * t);
}

double heat_kernel_exact(const CurvatureModel& m, double t, const Vec& x, const Vec& y) {
  return heat_kernel_radial(m, t, distance(m, x, y));
}

OracleValue heat_kernel_pde(const CurvatureModel& m, double t, double rho, const RadialPdeOptions& opt) {
  if (!(t > opt.t0)) throw std::invalid_argument("heat_kernel_pde: t must exceed t0");
  RadialPdeOptions half = opt;
  half.t0 = 0.5 * opt.t0;
  const double v1 = pde_run(m, t, rho, opt);
  const double v2 = pde_run(m, t, rho, half);
  // The parametrix error is first order in t0.
  return {2.0 * v2 - v1, std::abs(v2 - v1)};
}

OracleValue pinned_fdd_oracle(const CurvatureModel& m, double rho, const std::function<double(double)>& g,
                              double t, const QuadratureOptions& opt) {
  if (m.dim < 2) throw std::invalid_argument("pinned_fdd_oracle: needs d >= 2");
  if (!m.is_flat() && m.dim != 3) throw std::invalid_argument("pinned_fdd_oracle: hyperbolic d = 3 only");
  if (opt.nr % 2 || opt.ntheta % 2) throw std::invalid_argument("pinned_fdd_oracle: panel counts must be even");
  const double coarse = fdd_quadrature(m, rho, g, t, opt.nr, opt.ntheta, opt.rmax);
  const double fine = fdd_quadrature(m, rho, g, t, 2 * opt.nr, 2 * opt.ntheta, opt.rmax);
  return {fine, std::abs(fine - coarse)};
}

double flat_bridge_mid_distance(double rho) {
  // sigma(1/2) ~ N(x/2, I/4) in R^3: noncentral chi mean, times p_1(0, x).
  const double sigma = 0.5;
  const double a = 0.5 * rho / sigma;
  double mean;
  if (a < 1e-8) {
    mean = sigma * 2.0 * std::sqrt(2.0 / kPi);
  } else {
    mean = sigma * (std::sqrt(2.0 / kPi) * std::exp(-0.5 * a * a) + (a + 1.0 / a) * std::erf(a / std::sqrt(2.0)));
  }
  return mean * std::pow(2.0 * kPi, -1.5) * std::exp(-0.5 * rho * rho);
}

}  // namespace pinnedgeo
