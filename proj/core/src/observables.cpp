#include "pinnedgeo/observables.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pinnedgeo {

double CylinderObservable::evaluate(const CurvatureModel& m, int n, const std::vector<Vec>& points) const {
  std::vector<Vec> args;
  args.reserve(times.size());
  for (double t : times) {
    const double pos = t * n;
    const long idx = std::lround(pos);
    if (std::abs(pos - static_cast<double>(idx)) > 1e-9 || idx < 0 || idx >= static_cast<long>(points.size())) {
      throw std::invalid_argument("observable " + name + ": time is not a knot of this partition");
    }
    args.push_back(points[static_cast<std::size_t>(idx)]);
  }
  return F(m, args);
}

CylinderObservable constant_one() {
  return {"one", {}, [](const CurvatureModel&, const std::vector<Vec>&) { return 1.0; }, 1.0};
}

CylinderObservable radial_at(double t, std::function<double(double)> g, std::string name, double bound) {
  return {std::move(name), {t},
          [g = std::move(g)](const CurvatureModel& m, const std::vector<Vec>& p) {
            return g(distance(m, origin_frame(m).point, p[0]));
          },
          bound};
}

CylinderObservable observable_by_name(const std::string& name) {
  const double inf = std::numeric_limits<double>::infinity();
  if (name == "one") return constant_one();
  if (name == "mid_dist") return radial_at(0.5, [](double r) { return r; }, name, inf);
  if (name == "end_dist") return radial_at(1.0, [](double r) { return r; }, name, inf);
  throw std::invalid_argument("unknown observable: " + name);
}

}  // namespace pinnedgeo
