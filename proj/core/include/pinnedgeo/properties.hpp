#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pinnedgeo/geom.hpp"

namespace pinnedgeo {

struct PropertyConfig {
  std::size_t paths = 1000;
  int n_max = 64;
  double kappa_max = 2.0;
  int d_max = 3;
  double x_radius_max = 3.0;  // pinning targets drawn at distance <= this from o
  std::uint64_t seed = 1;
  int workers = 0;
};

struct PropertyCheck {
  std::string name;
  std::size_t evaluated = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;  // most negative (bound - value) seen, scaled
};

// Random hyperbolic paths with random (n, d, kappa); every sampled path is
// tested against the eigenvalue, determinant and growth bounds.
std::vector<PropertyCheck> run_property_sweep(const PropertyConfig& cfg);

}  // namespace pinnedgeo
