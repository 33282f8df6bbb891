#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pinnedgeo/lift.hpp"

namespace pinnedgeo {

enum class ConvStat { F, K, J, Adjoint };
const char* stat_name(ConvStat s);
ConvStat stat_from_name(const std::string& s);

struct ConvergenceRow {
  int n = 0;
  double q05 = 0, q50 = 0, q95 = 0, mean = 0;
};

struct ConvergenceReport {
  ConvStat stat = ConvStat::F;
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;        // -d log(median) / d log(n), least squares
  bool identically_zero = false;
  bool strictly_decreasing = false;
  bool pass = false;
};

struct ConvergenceConfig {
  CurvatureModel model;
  std::vector<int> n_values{8, 16, 32, 64, 128};
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  int refine = 8;  // fine path for the continuum objects: max(n) * refine steps
  int workers = 0;
  VectorField field;
};

// Per-sample statistics for every n, all from one Brownian path per sample:
// out[stat][n index][sample].
using ConvSamples = std::vector<std::vector<std::vector<double>>>;
ConvSamples convergence_samples(const ConvergenceConfig& cfg);

// Quantiles, slope and gate for one statistic.
ConvergenceReport summarize(ConvStat stat, const std::vector<int>& n_values,
                            const std::vector<std::vector<double>>& per_n);

std::vector<ConvergenceReport> run_convergence(const ConvergenceConfig& cfg);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace pinnedgeo
