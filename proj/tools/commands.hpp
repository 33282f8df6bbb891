#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <pinnedgeo/geom.hpp>

namespace pinnedgeo::cli {

enum ExitCode : int { kPass = 0, kGateFail = 1, kUsage = 2, kNumerical = 3 };

struct RunConfig {
  std::string command;
  std::string model = "hyperbolic";
  int d = 2;
  double kappa = 1.0;
  std::vector<int> n{8};
  std::vector<double> x;    // flat: point; hyperbolic: frame vector at o
  double rho = -1.0;        // distance from o along dir; < 0 means unset
  std::vector<double> dir;  // defaults to e_1
  std::string observable = "one";
  std::size_t N = 100000;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out_dir = ".";
  std::size_t samples = 200;
  int refine = 8;
  std::string stat = "all";
  std::size_t paths = 1000;
};

// Throws std::invalid_argument on a bad configuration.
void validate(const RunConfig& cfg);
CurvatureModel model_of(const RunConfig& cfg);
Vec target_of(const RunConfig& cfg, const CurvatureModel& m);

int cmd_pinned(const RunConfig& cfg, std::ostream& out);
int cmd_converge(const RunConfig& cfg, std::ostream& out);
int cmd_props(const RunConfig& cfg, std::ostream& out);
int cmd_sample(const RunConfig& cfg, std::ostream& out);
int cmd_ibp(const RunConfig& cfg, std::ostream& out);

// Full command line entry point; returns one of ExitCode.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pinnedgeo::cli
