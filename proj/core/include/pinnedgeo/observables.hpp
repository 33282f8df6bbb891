#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pinnedgeo/geom.hpp"

namespace pinnedgeo {

// f(sigma) = F(sigma(t_1), ..., sigma(t_k)) with every t_i a partition knot.
struct CylinderObservable {
  std::string name;
  std::vector<double> times;
  std::function<double(const CurvatureModel&, const std::vector<Vec>&)> F;
  double bound = 1.0;

  // Evaluates on the knot points of an n-interval path (points.size() == n+1).
  double evaluate(const CurvatureModel& m, int n, const std::vector<Vec>& points) const;
};

CylinderObservable constant_one();
// g(d(o, sigma(t))) for a radial function g.
CylinderObservable radial_at(double t, std::function<double(double)> g, std::string name, double bound);
// Looks up "one", "mid_dist" (distance from o at t = 1/2), "end_dist".
CylinderObservable observable_by_name(const std::string& name);

}  // namespace pinnedgeo
