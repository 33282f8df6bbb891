#pragma once

#include <cstdint>
#include <vector>

#include "pinnedgeo/geom.hpp"

namespace pinnedgeo {

// Equally spaced partition of [0,1] into n intervals, knots s_i = i/n.
struct Partition {
  int n = 1;

  Partition() = default;
  explicit Partition(int intervals);

  double knot(int i) const { return static_cast<double>(i) / n; }
  double delta() const { return 1.0 / n; }
};

using Slopes = std::vector<Vec>;

// A piecewise geodesic on the grid of `partition`. It may cover only the
// first m <= n intervals (the truncated path on [0, s_m]).
struct BrokenGeodesic {
  Partition partition;
  std::vector<Vec> increments;    // Delta_i beta in frame coordinates, i = 1..m
  std::vector<FramePoint> knots;  // knots[0] = (o, u0), knots[i] at s_i

  int intervals() const { return static_cast<int>(increments.size()); }
  const Vec& endpoint() const { return knots.back().point; }
};

// I.i.d. N(0, (1/n) I) increments for the given sample index.
std::vector<Vec> sample_increments(const Partition& p, int d, std::uint64_t seed,
                                   std::uint64_t sample, int count = -1);

BrokenGeodesic roll(const CurvatureModel& m, const FramePoint& start, const Partition& p,
                    const std::vector<Vec>& increments);
BrokenGeodesic roll(const CurvatureModel& m, const Partition& p, const std::vector<Vec>& increments);

std::vector<Vec> anti_roll(const CurvatureModel& m, const BrokenGeodesic& path);

double energy(const BrokenGeodesic& path);

// G^1_P inner product of two slope lists: sum_i <a_i, b_i> / n.
double g1p_inner(const Partition& p, const Slopes& a, const Slopes& b);

// Sums consecutive blocks of `factor` fine increments.
std::vector<Vec> coarsen(const std::vector<Vec>& fine, int factor);

}  // namespace pinnedgeo
