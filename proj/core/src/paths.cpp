#include "pinnedgeo/paths.hpp"

#include <cmath>
#include <stdexcept>

#include "pinnedgeo/rng.hpp"

namespace pinnedgeo {

Partition::Partition(int intervals) : n(intervals) {
  if (intervals < 1) throw std::invalid_argument("partition needs at least one interval");
}

std::vector<Vec> sample_increments(const Partition& p, int d, std::uint64_t seed,
                                   std::uint64_t sample, int count) {
  if (count < 0) count = p.n;
  const double sd = std::sqrt(p.delta());
  std::vector<Vec> out(count, Vec(d));
  double z[kMaxDim + 1];
  for (int i = 0; i < count; ++i) {
    rng::normals(seed, rng::kIncrements, sample, static_cast<std::uint64_t>(i), z, d);
    for (int a = 0; a < d; ++a) out[i](a) = sd * z[a];
  }
  return out;
}

BrokenGeodesic roll(const CurvatureModel& m, const FramePoint& start, const Partition& p,
                    const std::vector<Vec>& increments) {
  if (static_cast<int>(increments.size()) > p.n) {
    throw std::invalid_argument("roll: more increments than partition intervals");
  }
  BrokenGeodesic path{p, increments, {}};
  path.knots.reserve(increments.size() + 1);
  path.knots.push_back(start);
  for (const Vec& inc : increments) path.knots.push_back(exp_map(m, path.knots.back(), inc));
  return path;
}

BrokenGeodesic roll(const CurvatureModel& m, const Partition& p, const std::vector<Vec>& increments) {
  return roll(m, origin_frame(m), p, increments);
}

std::vector<Vec> anti_roll(const CurvatureModel& m, const BrokenGeodesic& path) {
  std::vector<Vec> out;
  out.reserve(path.knots.size());
  for (std::size_t i = 1; i < path.knots.size(); ++i) {
    out.push_back(log_map(m, path.knots[i - 1], path.knots[i].point));
  }
  return out;
}

double energy(const BrokenGeodesic& path) {
  double e = 0.0;
  for (const Vec& inc : path.increments) e += inc.squaredNorm();
  return e * path.partition.n;
}

double g1p_inner(const Partition& p, const Slopes& a, const Slopes& b) {
  if (a.size() != b.size()) throw std::invalid_argument("g1p_inner: slope lists differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].dot(b[i]);
  return s * p.delta();
}

std::vector<Vec> coarsen(const std::vector<Vec>& fine, int factor) {
  if (factor < 1 || fine.size() % factor != 0) throw std::invalid_argument("coarsen: bad factor");
  std::vector<Vec> out(fine.size() / factor);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Vec s = fine[i * factor];
    for (int k = 1; k < factor; ++k) s += fine[i * factor + k];
    out[i] = s;
  }
  return out;
}

}  // namespace pinnedgeo
