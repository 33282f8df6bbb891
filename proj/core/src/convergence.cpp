#include "pinnedgeo/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pinnedgeo/damped.hpp"
#include "pinnedgeo/parallel.hpp"

namespace pinnedgeo {

namespace {

constexpr double kZeroTol = 1e-12;

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * (v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  const double w = pos - i;
  return (1.0 - w) * v[i] + w * v[i + 1];
}

struct SampleStats {
  std::vector<double> f, K, J, adj;  // one entry per n value
};

SampleStats one_sample(const ConvergenceConfig& cfg, std::size_t sample, int M) {
  const CurvatureModel& m = cfg.model;
  const int d = m.dim;
  const double c = ricci_scalar_factor(m);
  const Partition fine_p(M);
  const std::vector<Vec> fine = sample_increments(fine_p, d, cfg.seed, sample);
  const BrokenGeodesic fine_path = roll(m, fine_p, fine);
  const Vec Htil = endpoint_frame_value(m, fine_path, cfg.field);
  const Vec CH = damped::Ctilde(c) * Htil;

  // Continuum adjoint side: sum <C~ H~, T~^{-1}_{r} d beta_r> on the fine grid (left points).
  double cont = 0.0;
  for (int k = 0; k < M; ++k) cont += CH.dot(fine[k]) / damped::T(c, static_cast<double>(k) / M);

  SampleStats out;
  for (int n : cfg.n_values) {
    const Partition p(n);
    const std::vector<Vec> inc = coarsen(fine, M / n);
    const BrokenGeodesic path = roll(m, p, inc);
    const JacobiFamily fam = build_family(m, path);

    double fs = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double ti = damped::T(c, p.knot(i));
      for (int j = i; j <= n; ++j) {
        Mat D = fam.fm(i, j);
        D.diagonal().array() -= damped::T(c, p.knot(j)) / ti;
        fs = std::max(fs, op_norm(D));
      }
    }

    double ks = 0.0;
    for (int j = 0; j <= n; ++j) {
      Mat D = fam.K[j];
      D.diagonal().array() -= damped::K(c, p.knot(j));
      ks = std::max(ks, op_norm(D));
    }

    const Vec HP = endpoint_frame_value(m, path, cfg.field);
    const Lift lift = lift_build(fam, HP);
    double js = 0.0;
    for (int j = 0; j <= n; ++j) {
      const Vec D = fam.K[j] * lift.v - damped::J_factor(c, p.knot(j)) * Htil;
      js = std::max(js, D.norm());
    }

    double disc = 0.0;
    for (int i = 0; i < n; ++i) disc += lift.slopes[i].dot(inc[i]);

    out.f.push_back(fs);
    out.K.push_back(ks);
    out.J.push_back(js);
    out.adj.push_back(std::abs(disc - cont));
  }
  return out;
}

}  // namespace

const char* stat_name(ConvStat s) {
  switch (s) {
    case ConvStat::F: return "f";
    case ConvStat::K: return "K";
    case ConvStat::J: return "J";
    case ConvStat::Adjoint: return "adjoint";
  }
  return "?";
}

ConvStat stat_from_name(const std::string& s) {
  if (s == "f") return ConvStat::F;
  if (s == "K") return ConvStat::K;
  if (s == "J") return ConvStat::J;
  if (s == "adjoint") return ConvStat::Adjoint;
  throw std::invalid_argument("unknown statistic: " + s);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t k = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= k;
  my /= k;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ConvSamples convergence_samples(const ConvergenceConfig& cfg) {
  if (cfg.n_values.empty()) throw std::invalid_argument("converge: empty n list");
  for (std::size_t i = 1; i < cfg.n_values.size(); ++i) {
    if (cfg.n_values[i] <= cfg.n_values[i - 1]) throw std::invalid_argument("converge: n values must increase");
  }
  const int nmax = cfg.n_values.back();
  const int M = nmax * cfg.refine;
  for (int n : cfg.n_values) {
    if (n < 1 || M % n) throw std::invalid_argument("converge: every n must divide max(n) * refine");
  }
  if (!cfg.field.at) throw std::invalid_argument("converge: vector field not set");

  std::vector<SampleStats> all(cfg.samples);
  parallel_blocks(cfg.samples, 8, cfg.workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) all[s] = one_sample(cfg, s, M);
  });

  const std::size_t nn = cfg.n_values.size();
  ConvSamples out(4, std::vector<std::vector<double>>(nn, std::vector<double>(cfg.samples)));
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    for (std::size_t k = 0; k < nn; ++k) {
      out[0][k][s] = all[s].f[k];
      out[1][k][s] = all[s].K[k];
      out[2][k][s] = all[s].J[k];
      out[3][k][s] = all[s].adj[k];
    }
  }
  return out;
}

ConvergenceReport summarize(ConvStat stat, const std::vector<int>& n_values,
                            const std::vector<std::vector<double>>& per_n) {
  ConvergenceReport rep;
  rep.stat = stat;
  std::vector<double> xs, meds;
  double worst = 0.0;
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    const auto& v = per_n[k];
    ConvergenceRow row;
    row.n = n_values[k];
    row.q05 = quantile(v, 0.05);
    row.q50 = quantile(v, 0.50);
    row.q95 = quantile(v, 0.95);
    double s = 0;
    for (double x : v) s += x;
    row.mean = s / v.size();
    for (double x : v) worst = std::max(worst, x);
    rep.rows.push_back(row);
    xs.push_back(row.n);
    meds.push_back(row.q50);
  }
  rep.identically_zero = worst <= kZeroTol;
  if (rep.identically_zero) {
    rep.slope = 0.0;
    rep.strictly_decreasing = true;
    rep.pass = true;
    return rep;
  }
  rep.strictly_decreasing = true;
  for (std::size_t k = 1; k < meds.size(); ++k) {
    if (!(meds[k] < meds[k - 1])) rep.strictly_decreasing = false;
  }
  bool positive = true;
  for (double m : meds) positive = positive && m > 0.0;
  // Slopes need at least four n values.
  rep.slope = positive && meds.size() >= 4 ? -loglog_slope(xs, meds) : std::nan("");
  rep.pass = rep.strictly_decreasing;
  if (stat == ConvStat::F) rep.pass = rep.pass && rep.slope >= 0.4;
  if (stat == ConvStat::K || stat == ConvStat::J) rep.pass = rep.pass && meds.back() < meds.front() / 4.0;
  return rep;
}

std::vector<ConvergenceReport> run_convergence(const ConvergenceConfig& cfg) {
  const ConvSamples s = convergence_samples(cfg);
  std::vector<ConvergenceReport> out;
  for (int k = 0; k < 4; ++k) out.push_back(summarize(static_cast<ConvStat>(k), cfg.n_values, s[k]));
  return out;
}

}  // namespace pinnedgeo
