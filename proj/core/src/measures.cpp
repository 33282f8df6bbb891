#include "pinnedgeo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pinnedgeo/parallel.hpp"

namespace pinnedgeo {

namespace {

constexpr std::size_t kBlock = 4096;

// Pairwise sum of per-block partials; the tree shape depends only on the count.
double pairwise(std::vector<double> v) {
  if (v.empty()) return 0.0;
  while (v.size() > 1) {
    std::vector<double> next((v.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = v[2 * i] + (2 * i + 1 < v.size() ? v[2 * i + 1] : 0.0);
    }
    v.swap(next);
  }
  return v[0];
}

template <class Fn>
double blocked_sum(std::size_t count, Fn term) {
  const std::size_t nb = (count + kBlock - 1) / kBlock;
  std::vector<double> partial(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    double s = 0.0;
    for (std::size_t i = b * kBlock; i < std::min(count, (b + 1) * kBlock); ++i) s += term(i);
    partial[b] = s;
  }
  return pairwise(std::move(partial));
}

std::string dump_increments(const std::vector<Vec>& inc) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < inc.size(); ++i) {
    os << (i ? "; " : "") << "[";
    for (int a = 0; a < inc[i].size(); ++a) os << (a ? "," : "") << inc[i](a);
    os << "]";
  }
  return os.str();
}

}  // namespace

BrokenGeodesic sample_nu1P(const CurvatureModel& m, const Partition& p, std::uint64_t seed,
                           std::uint64_t sample) {
  return roll(m, p, sample_increments(p, m.dim, seed, sample));
}

PinnedSample pin_body(const CurvatureModel& m, const Partition& p, const std::vector<Vec>& body_inc,
                      const Vec& x) {
  const int n = p.n;
  const int d = m.dim;
  if (static_cast<int>(body_inc.size()) != n - 1) throw std::invalid_argument("pin_body: need n-1 increments");
  PinnedSample s;
  s.body = roll(m, p, body_inc);
  const Vec tip = log_map(m, s.body.knots.back(), x);
  s.tip_distance = tip.norm();

  s.full = s.body;
  s.full.increments.push_back(tip);
  FramePoint last = exp_map(m, s.body.knots.back(), tip);
  last.point = x;
  s.full.knots.push_back(last);

  s.Vx = volume_change_Vx(m, p, body_inc, tip);
  s.JP = std::sqrt(endpoint_gram(m, p, s.full.increments).determinant());
  s.log_weight = -0.5 * d * std::log(2.0 * std::numbers::pi) - 0.5 * n * s.tip_distance * s.tip_distance +
                 std::log(s.Vx) - std::log(s.JP);
  return s;
}

PinnedSample pinned_sample(const CurvatureModel& m, const Partition& p, const Vec& x, std::uint64_t seed,
                           std::uint64_t sample) {
  return pin_body(m, p, sample_increments(p, m.dim, seed, sample, p.n - 1), x);
}

Estimate weighted_mean(const std::vector<double>& lw, const std::vector<double>& f) {
  const std::size_t N = lw.size();
  if (N < 2 || f.size() != N) throw std::invalid_argument("weighted_mean: need at least two samples");
  double M = -std::numeric_limits<double>::infinity();
  for (double v : lw) M = std::max(M, v);
  const double mean_s = blocked_sum(N, [&](std::size_t i) { return std::exp(lw[i] - M) * f[i]; }) / N;
  const double ss = blocked_sum(N, [&](std::size_t i) {
    const double r = std::exp(lw[i] - M) * f[i] - mean_s;
    return r * r;
  });
  const double var_s = ss / static_cast<double>(N - 1);
  const double scale = std::exp(M);
  return {mean_s * scale, std::sqrt(var_s / static_cast<double>(N)) * scale, N};
}

Estimate pinned_estimate(const CurvatureModel& m, const Partition& p, const Vec& x, const CylinderObservable& f,
                         const PinnedOptions& opt) {
  if (opt.N < 2) throw std::invalid_argument("pinned_estimate: N must be at least 2");
  std::vector<double> lw(opt.N), fv(opt.N);
  parallel_blocks(opt.N, kBlock, opt.workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const std::vector<Vec> body = sample_increments(p, m.dim, opt.seed, i, p.n - 1);
      const PinnedSample s = pin_body(m, p, body, x);
      std::vector<Vec> pts;
      pts.reserve(s.full.knots.size());
      for (const FramePoint& k : s.full.knots) pts.push_back(k.point);
      const double fval = f.evaluate(m, p.n, pts);
      if (!std::isfinite(s.log_weight) || std::isnan(fval)) {
        std::ostringstream os;
        os << "pinned_estimate: non-finite weight at sample " << i << " (log_weight=" << s.log_weight
           << ", Vx=" << s.Vx << ", JP=" << s.JP << ", f=" << fval << "); increments " << dump_increments(body);
        throw NumericalError(os.str());
      }
      lw[i] = s.log_weight;
      fv[i] = fval;
    }
  });
  if (opt.log_weights) *opt.log_weights = lw;
  return weighted_mean(lw, fv);
}

Estimate gaussian_moment_estimate(const Partition& p, int d, double q, std::size_t N, std::uint64_t seed) {
  std::vector<double> lw(N), ones(N, 1.0);
  for (std::size_t i = 0; i < N; ++i) {
    double e = 0.0;
    for (const Vec& v : sample_increments(p, d, seed, i)) e += v.squaredNorm();
    lw[i] = q * e;
  }
  return weighted_mean(lw, ones);
}

double gaussian_moment_exact(const Partition& p, int d, double q) {
  const double n = p.n;
  if (!(n > 2.0 * q)) throw std::invalid_argument("gaussian moment diverges for n <= 2q");
  return std::pow(1.0 - 2.0 * q / n, -0.5 * n * d);
}

}  // namespace pinnedgeo
