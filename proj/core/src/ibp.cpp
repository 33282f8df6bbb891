#include "pinnedgeo/ibp.hpp"

#include <cmath>
#include <stdexcept>

#include "pinnedgeo/parallel.hpp"
#include "pinnedgeo/rng.hpp"

namespace pinnedgeo {

namespace {

std::vector<Vec> increments_of(const Partition& p, int d, const Eigen::VectorXd& z) {
  const double sc = 1.0 / std::sqrt(static_cast<double>(p.n));
  std::vector<Vec> inc(p.n);
  for (int i = 0; i < p.n; ++i) inc[i] = z.segment(i * d, d) * sc;
  return inc;
}

struct Sample {
  double lhs = 0, rhs = 0, gap = 0;
  bool ok = false;
};

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / v.size();
}

double se_of(const std::vector<double>& v, double mean) {
  double s = 0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / (v.size() - 1) / v.size());
}

}  // namespace

std::vector<Vec> knot_points(const CurvatureModel& m, const Partition& p, const Eigen::VectorXd& z) {
  const BrokenGeodesic path = roll(m, p, increments_of(p, m.dim, z));
  std::vector<Vec> pts;
  pts.reserve(path.knots.size());
  for (const FramePoint& k : path.knots) pts.push_back(k.point);
  return pts;
}

Eigen::MatrixXd chart_slope_matrix(const CurvatureModel& m, const Partition& p, const Eigen::VectorXd& z,
                                   double h) {
  const int d = m.dim;
  const int D = p.n * d;
  const std::vector<Vec> inc = increments_of(p, d, z);
  const BrokenGeodesic base = roll(m, p, inc);
  Eigen::MatrixXd M(D, D);
  for (int c = 0; c < D; ++c) {
    Eigen::VectorXd zp = z, zm = z;
    zp(c) += h;
    zm(c) -= h;
    const std::vector<Vec> pp = knot_points(m, p, zp);
    const std::vector<Vec> pm = knot_points(m, p, zm);
    std::vector<Vec> J(p.n + 1);
    for (int j = 0; j <= p.n; ++j) J[j] = frame_coords(m, base.knots[j], (pp[j] - pm[j]) / (2.0 * h));
    J[0].setZero();
    const Slopes k = slopes_from_knots(m, p, inc, J);
    for (int i = 0; i < p.n; ++i) M.block(i * d, c, d, 1) = k[i];
  }
  return M;
}

bool chart_field(const IbpConfig& cfg, const Eigen::VectorXd& z, ChartField& out) {
  const CurvatureModel& m = cfg.model;
  const Partition p(cfg.n);
  out.inc = increments_of(p, m.dim, z);
  const BrokenGeodesic path = roll(m, p, out.inc);
  const JacobiFamily fam = build_family(m, path);
  const Lift lift = lift_build(fam, endpoint_frame_value(m, path, cfg.field));
  out.lift = lift.slopes;

  const Eigen::MatrixXd M = chart_slope_matrix(m, p, z, cfg.h_chart);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const double rc = lu.rcond();
  out.cond = rc > 0 ? 1.0 / rc : INFINITY;
  if (!(out.cond <= cfg.max_cond)) return false;
  out.V = lu.solve(stack(lift.slopes));
  out.log_abs_det_M = std::log(std::abs(lu.determinant()));
  return true;
}

IbpResult ibp_check(const IbpConfig& cfg) {
  if (!cfg.f || !cfg.g || !cfg.field.at) throw std::invalid_argument("ibp_check: f, g and field are required");
  if (cfg.N < 2) throw std::invalid_argument("ibp_check: N must be at least 2");
  const CurvatureModel& m = cfg.model;
  const Partition p(cfg.n);
  const int D = cfg.n * m.dim;
  std::vector<Sample> all(cfg.N);

  parallel_blocks(cfg.N, 256, cfg.workers, [&](std::size_t b, std::size_t e) {
    std::vector<double> zbuf(D);
    for (std::size_t s = b; s < e; ++s) {
      rng::normals(cfg.seed, rng::kMisc, s, 0, zbuf.data(), D);
      const Eigen::VectorXd z = Eigen::Map<Eigen::VectorXd>(zbuf.data(), D);
      ChartField cf;
      if (!chart_field(cfg, z, cf)) continue;

      // div_z V by central differences of each component.
      double div = 0.0;
      bool ok = true;
      for (int c = 0; c < D && ok; ++c) {
        Eigen::VectorXd zp = z, zm = z;
        zp(c) += cfg.h_div;
        zm(c) -= cfg.h_div;
        ChartField a, bb;
        ok = chart_field(cfg, zp, a) && chart_field(cfg, zm, bb);
        if (ok) div += (a.V(c) - bb.V(c)) / (2.0 * cfg.h_div);
      }
      if (!ok) continue;

      const double vn = std::max(1.0, cf.V.norm());
      const double eps = cfg.h_chart / vn;
      const Eigen::VectorXd zp = z + eps * cf.V, zm = z - eps * cf.V;
      const auto P0 = knot_points(m, p, z), Pp = knot_points(m, p, zp), Pm = knot_points(m, p, zm);
      const double F = cfg.f(m, P0), G = cfg.g(m, P0);
      const double dF = (cfg.f(m, Pp) - cfg.f(m, Pm)) / (2.0 * eps);
      const double dG = (cfg.g(m, Pp) - cfg.g(m, Pm)) / (2.0 * eps);
      const double zV = z.dot(cf.V);

      Sample& out = all[s];
      out.lhs = dF * G;
      out.rhs = F * (-dG + G * (zV - div));

      // Volume density of the G1 metric in z coordinates is proportional to |det M|.
      const double h2 = cfg.h_div / vn;
      ChartField a, bb;
      if (chart_field(cfg, z + h2 * cf.V, a) && chart_field(cfg, z - h2 * cf.V, bb)) {
        const double dlogdet = (a.log_abs_det_M - bb.log_abs_det_M) / (2.0 * h2);
        double adjoint_term = 0.0;
        for (int i = 0; i < cfg.n; ++i) adjoint_term += cf.lift[i].dot(cf.inc[i]);
        out.gap = (zV - div) - (adjoint_term - (div + dlogdet));
      }
      out.ok = true;
    }
  });

  IbpResult r;
  std::vector<double> L, R, Dv, gaps;
  for (const Sample& s : all) {
    if (!s.ok) {
      ++r.skipped;
      continue;
    }
    L.push_back(s.lhs);
    R.push_back(s.rhs);
    Dv.push_back(s.lhs - s.rhs);
    gaps.push_back(s.gap);
  }
  r.used = L.size();
  if (r.used < 2) throw NumericalError("ibp_check: too few usable samples");
  r.lhs_mean = mean_of(L);
  r.rhs_mean = mean_of(R);
  r.lhs_se = se_of(L, r.lhs_mean);
  r.rhs_se = se_of(R, r.rhs_mean);
  r.combined_se = std::hypot(r.lhs_se, r.rhs_se);
  r.paired_se = se_of(Dv, mean_of(Dv));
  r.term_gap_mean = mean_of(gaps);
  double ga = 0;
  for (double g : gaps) ga += std::abs(g);
  r.term_gap_abs_mean = ga / gaps.size();
  r.pass = std::abs(r.lhs_mean - r.rhs_mean) <= 3.0 * r.combined_se;
  return r;
}

}  // namespace pinnedgeo

namespace pinnedgeo {

PathFunction ibp_default_f() {
  return [](const CurvatureModel& m, const std::vector<Vec>& pts) {
    const double r = distance(m, origin_frame(m).point, pts[pts.size() / 2]);
    return std::exp(-0.25 * r * r);
  };
}

PathFunction ibp_default_g() {
  return [](const CurvatureModel&, const std::vector<Vec>& pts) { return std::tanh(pts.back()(0)); };
}

}  // namespace pinnedgeo
