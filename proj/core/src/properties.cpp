#include "pinnedgeo/properties.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "pinnedgeo/jacobi.hpp"
#include "pinnedgeo/measures.hpp"
#include "pinnedgeo/parallel.hpp"
#include "pinnedgeo/rng.hpp"

namespace pinnedgeo {

namespace {

enum Check {
  kGramEig,
  kNormalJacobian,
  kRho,
  kCosEig,
  kSinEig,
  kCosNorm,
  kSinDev,
  kCosDev,
  kVxLower,
  kVxBound,
  kCount
};

const char* kNames[kCount] = {"K_P(1) eigenvalues >= 1",  "J_P >= 1",
                              "rho_P >= 1",               "|eig C| >= 1",
                              "|eig S(h)| >= h",          "|C(h)| <= cosh",
                              "|S(h) - hI| bound",        "|C(h) - I| bound",
                              "V_x >= 1",                 "V_x upper bound"};

struct Tally {
  std::size_t evaluated[kCount] = {};
  std::size_t violations[kCount] = {};
  double worst[kCount];
  Tally() { std::fill(std::begin(worst), std::end(worst), INFINITY); }

  // margin >= 0 means the property holds.
  void record(int c, double margin) {
    ++evaluated[c];
    if (margin < 0.0) ++violations[c];
    worst[c] = std::min(worst[c], margin);
  }
};

double min_abs_eig(const Mat& A) {
  const Eigen::EigenSolver<Mat> es(A, false);
  return es.eigenvalues().cwiseAbs().minCoeff();
}

void check_path(const PropertyConfig& cfg, std::size_t idx, Tally& t) {
  const std::uint64_t s = cfg.seed;
  const int n = 1 + static_cast<int>(rng::uniform_at(s, rng::kModelParams, idx, 0, 0) * cfg.n_max);
  const int d = 1 + static_cast<int>(rng::uniform_at(s, rng::kModelParams, idx, 1, 0) * cfg.d_max);
  const double kappa = cfg.kappa_max * rng::uniform_at(s, rng::kModelParams, idx, 2, 0);
  const CurvatureModel m = CurvatureModel::hyperbolic(std::min(d, kMaxDim), kappa);
  const Partition p(n);
  const std::vector<Vec> inc = sample_increments(p, m.dim, s, idx);
  const BrokenGeodesic path = roll(m, p, inc);
  const JacobiFamily fam = build_family(m, path);

  // Lower bounds: relative slack at the stated tolerances.
  const Eigen::SelfAdjointEigenSolver<Mat> kes(0.5 * (fam.K[n] + fam.K[n].transpose()));
  t.record(kGramEig, kes.eigenvalues().minCoeff() - (1.0 - 1e-10));
  t.record(kNormalJacobian, normal_jacobian(fam) - (1.0 - 1e-12));
  if (n >= 2) t.record(kRho, rho_P(fam) - (1.0 - 1e-12));

  const double h = p.delta();
  const double N = kappa;
  for (int i = 1; i <= n; ++i) {
    const double xi2 = fam.xi[i].squaredNorm();
    const double a = N * xi2 * h * h;
    const double tol = 1e-12;
    t.record(kCosEig, min_abs_eig(fam.C[i]) - (1.0 - tol));
    t.record(kSinEig, min_abs_eig(fam.S[i]) - h * (1.0 - tol));
    const double cb = std::cosh(std::sqrt(N * xi2) * h);
    t.record(kCosNorm, cb * (1.0 + tol) - op_norm(fam.C[i]));
    const double sb = a * h / 6.0 * std::exp(0.5 * a);
    t.record(kSinDev, sb * (1.0 + tol) + 1e-15 - op_norm(fam.S[i] - h * Mat::Identity(m.dim, m.dim)));
    const double cdb = a / 2.0 * std::exp(0.5 * a);
    t.record(kCosDev, cdb * (1.0 + tol) + 1e-15 - op_norm(fam.C[i] - Mat::Identity(m.dim, m.dim)));
  }

  if (n >= 2) {
    Vec dir(m.dim);
    rng::normals(s, rng::kModelParams, idx, 3, dir.data(), m.dim);
    const double r = cfg.x_radius_max * rng::uniform_at(s, rng::kModelParams, idx, 4, 0);
    const Vec x = dir.norm() > 0 ? point_from_origin(m, dir, r) : origin_frame(m).point;
    const std::vector<Vec> body(inc.begin(), inc.end() - 1);
    const PinnedSample ps = pin_body(m, p, body, x);
    t.record(kVxLower, ps.Vx - (1.0 - 1e-12));
    const double bound = volume_change_bound(m, p, body, ps.tip_distance);
    t.record(kVxBound, (bound * (1.0 + 1e-12) - ps.Vx) / bound);
  }
}

}  // namespace

std::vector<PropertyCheck> run_property_sweep(const PropertyConfig& cfg) {
  std::mutex mu;
  Tally total;
  parallel_blocks(cfg.paths, 16, cfg.workers, [&](std::size_t b, std::size_t e) {
    Tally local;
    for (std::size_t i = b; i < e; ++i) check_path(cfg, i, local);
    std::lock_guard<std::mutex> lock(mu);
    for (int c = 0; c < kCount; ++c) {
      total.evaluated[c] += local.evaluated[c];
      total.violations[c] += local.violations[c];
      total.worst[c] = std::min(total.worst[c], local.worst[c]);
    }
  });
  std::vector<PropertyCheck> out;
  for (int c = 0; c < kCount; ++c) {
    out.push_back({kNames[c], total.evaluated[c], total.violations[c],
                   total.evaluated[c] ? total.worst[c] : 0.0});
  }
  return out;
}

}  // namespace pinnedgeo
