#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include <pinnedgeo/convergence.hpp>
#include <pinnedgeo/heat_kernel.hpp>
#include <pinnedgeo/ibp.hpp>
#include <pinnedgeo/measures.hpp>
#include <pinnedgeo/properties.hpp>

#ifndef PINNEDGEO_GIT_REVISION
#define PINNEDGEO_GIT_REVISION "unknown"
#endif

namespace pinnedgeo::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kSchema = 1;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_csv(const RunConfig& cfg, const std::string& name, const std::string& header) {
  fs::create_directories(cfg.out_dir);
  std::ofstream os(fs::path(cfg.out_dir) / name);
  if (!os) throw std::runtime_error("cannot write " + (fs::path(cfg.out_dir) / name).string());
  os << "schema=" << kSchema << "\n" << header << "\n";
  return os;
}

json config_json(const RunConfig& c) {
  return json{{"command", c.command}, {"model", c.model},   {"d", c.d},
              {"kappa", c.kappa},     {"n", c.n},           {"x", c.x},
              {"rho", c.rho},         {"dir", c.dir},       {"observable", c.observable},
              {"N", c.N},             {"seed", c.seed},     {"workers", c.workers},
              {"out_dir", c.out_dir}, {"samples", c.samples}, {"refine", c.refine},
              {"stat", c.stat},       {"paths", c.paths}};
}

void write_manifest(const RunConfig& cfg, Clock::time_point start, const std::vector<std::string>& outputs,
                    int exit_code) {
  const double wall = std::chrono::duration<double>(Clock::now() - start).count();
  json m{{"schema", kSchema},
         {"seed", cfg.seed},
         {"git_revision", PINNEDGEO_GIT_REVISION},
         {"wall_time_seconds", wall},
         {"exit_code", exit_code},
         {"outputs", outputs},
         {"config", config_json(cfg)}};
  fs::create_directories(cfg.out_dir);
  std::ofstream os(fs::path(cfg.out_dir) / "manifest.json");
  os << std::setw(2) << m << "\n";
}

bool is_midpoint(const std::string& obs) { return obs == "mid_dist"; }

struct Oracle {
  double value = std::numeric_limits<double>::quiet_NaN();
  double rel_tol = 0.0;  // gate: |err| <= max(rel_tol * oracle, 3 stderr)
};

Oracle oracle_for(const RunConfig& cfg, const CurvatureModel& m, double rho) {
  Oracle o;
  const bool flat = m.is_flat();
  if (cfg.observable == "one" || cfg.observable == "end_dist") {
    const double p1 = flat ? heat_kernel_radial(m, 1.0, rho) : heat_kernel_pde(m, 1.0, rho).value;
    o.value = cfg.observable == "one" ? p1 : rho * p1;
    o.rel_tol = flat ? 0.0 : 0.02;
  } else if (is_midpoint(cfg.observable)) {
    auto g = [](double r) { return r; };
    if (flat && m.dim == 3) {
      o.value = flat_bridge_mid_distance(rho);
    } else if ((flat && m.dim >= 2) || (!flat && m.dim == 3)) {
      o.value = pinned_fdd_oracle(m, rho, g).value;
    }
    o.rel_tol = flat ? 0.0 : 0.03;
  }
  return o;
}

}  // namespace

CurvatureModel model_of(const RunConfig& cfg) {
  if (cfg.model == "flat") return CurvatureModel::flat(cfg.d);
  if (cfg.model == "hyperbolic") return CurvatureModel::hyperbolic(cfg.d, cfg.kappa);
  throw std::invalid_argument("model must be flat or hyperbolic");
}

Vec target_of(const RunConfig& cfg, const CurvatureModel& m) {
  if (cfg.rho >= 0.0) {
    Vec dir = Vec::Zero(m.dim);
    if (cfg.dir.empty()) {
      dir(0) = 1.0;
    } else {
      for (int a = 0; a < m.dim; ++a) dir(a) = cfg.dir[a];
    }
    if (cfg.rho == 0.0) return origin_frame(m).point;
    return point_from_origin(m, dir, cfg.rho);
  }
  if (cfg.x.empty()) return origin_frame(m).point;
  Vec v(m.dim);
  for (int a = 0; a < m.dim; ++a) v(a) = cfg.x[a];
  if (m.is_flat()) return v;
  return exp_map(m, origin_frame(m), v).point;
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (c.model != "flat" && c.model != "hyperbolic") fail("--model must be flat or hyperbolic");
  if (c.d < 1 || c.d > kMaxDim) fail("--d must be between 1 and " + std::to_string(kMaxDim));
  if (c.model == "hyperbolic" && !(c.kappa > 0.0 && std::isfinite(c.kappa))) fail("--kappa must be positive");
  if (c.n.empty()) fail("--n is required");
  for (int n : c.n) {
    if (n < 1) fail("--n values must be positive");
  }
  if (!c.x.empty() && static_cast<int>(c.x.size()) != c.d) fail("--x needs exactly d coordinates");
  if (!c.dir.empty()) {
    if (static_cast<int>(c.dir.size()) != c.d) fail("--dir needs exactly d coordinates");
    double s = 0;
    for (double v : c.dir) s += v * v;
    if (!(s > 0.0)) fail("--dir must be nonzero");
  }
  if (c.rho >= 0.0 && !c.x.empty()) fail("give either --x or --rho, not both");
  if (c.out_dir.empty()) fail("--out must not be empty");

  if (c.command == "pinned") {
    if (c.N < 2) fail("--N must be at least 2");
    observable_by_name(c.observable);
    if (is_midpoint(c.observable)) {
      for (int n : c.n) {
        if (n % 2) fail("mid_dist needs even n");
      }
    }
  } else if (c.command == "converge") {
    if (c.n.size() < 4) fail("converge needs at least four --n values");
    for (std::size_t i = 1; i < c.n.size(); ++i) {
      if (c.n[i] <= c.n[i - 1]) fail("--n values must increase");
    }
    if (c.refine < 1) fail("--refine must be positive");
    for (int n : c.n) {
      if ((c.n.back() * c.refine) % n) fail("every n must divide max(n) * refine");
    }
    if (c.samples < 2) fail("--samples must be at least 2");
    if (c.stat != "all") stat_from_name(c.stat);
  } else if (c.command == "props") {
    if (c.paths < 1) fail("--paths must be positive");
    if (c.model != "hyperbolic") fail("props sweeps hyperbolic models");
  } else if (c.command == "sample") {
    if (c.N < 1) fail("--N must be positive");
  } else if (c.command == "ibp") {
    if (c.N < 2) fail("--N must be at least 2");
    if (c.n.front() > 8 || c.d > 2) fail("ibp supports n <= 8 and d <= 2");
  }
}

int cmd_pinned(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  const CurvatureModel m = model_of(cfg);
  const Vec x = target_of(cfg, m);
  const double rho = distance(m, origin_frame(m).point, x);
  const CylinderObservable f = observable_by_name(cfg.observable);
  const Oracle oracle = oracle_for(cfg, m, rho);

  auto csv = open_csv(cfg, "pinned.csv", "model,d,kappa,n,x_norm,observable,N,mean,stderr,oracle,abs_err");
  int code = kPass;
  for (int n : cfg.n) {
    PinnedOptions opt;
    opt.N = cfg.N;
    opt.seed = cfg.seed;
    opt.workers = cfg.workers;
    const Estimate e = pinned_estimate(m, Partition(n), x, f, opt);
    const double err = std::abs(e.mean - oracle.value);
    csv << cfg.model << "," << cfg.d << "," << num(m.kappa) << "," << n << "," << num(rho) << "," << cfg.observable
        << "," << cfg.N << "," << num(e.mean) << "," << num(e.stderr_) << "," << num(oracle.value) << ","
        << num(err) << "\n";
    std::string verdict = "no oracle";
    if (std::isfinite(oracle.value)) {
      // Rounding floor for the zero-variance case n = 1.
      const double tol =
          std::max({oracle.rel_tol * std::abs(oracle.value), 3.0 * e.stderr_, 1e-12 * std::abs(oracle.value)});
      const bool ok = err <= tol;
      verdict = ok ? "pass" : "FAIL";
      if (!ok) code = kGateFail;
    }
    out << "n=" << n << " mean=" << num(e.mean) << " stderr=" << num(e.stderr_) << " oracle=" << num(oracle.value)
        << " " << verdict << "\n";
  }
  csv.close();
  write_manifest(cfg, start, {"pinned.csv"}, code);
  return code;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  ConvergenceConfig cc;
  cc.model = model_of(cfg);
  cc.n_values = cfg.n;
  cc.samples = cfg.samples;
  cc.seed = cfg.seed;
  cc.refine = cfg.refine;
  cc.workers = cfg.workers;
  cc.field = default_field(cc.model);
  const ConvSamples s = convergence_samples(cc);

  std::vector<ConvStat> stats;
  if (cfg.stat == "all") {
    stats = {ConvStat::F, ConvStat::K, ConvStat::J, ConvStat::Adjoint};
  } else {
    stats = {stat_from_name(cfg.stat)};
  }

  int code = kPass;
  std::vector<std::string> files;
  out << std::left << std::setw(9) << "stat" << std::setw(6) << "n" << std::setw(13) << "q05" << std::setw(13)
      << "q50" << std::setw(13) << "q95" << std::setw(13) << "mean" << "\n";
  for (ConvStat st : stats) {
    const ConvergenceReport r = summarize(st, cfg.n, s[static_cast<int>(st)]);
    const std::string name = std::string("converge_") + stat_name(st) + ".csv";
    files.push_back(name);
    auto csv = open_csv(cfg, name, "n,q05,q50,q95,mean,slope,pass");
    for (const ConvergenceRow& row : r.rows) {
      csv << row.n << "," << num(row.q05) << "," << num(row.q50) << "," << num(row.q95) << "," << num(row.mean)
          << "," << num(r.slope) << "," << (r.pass ? 1 : 0) << "\n";
      out << std::setw(9) << stat_name(st) << std::setw(6) << row.n << std::setw(13) << row.q05 << std::setw(13)
          << row.q50 << std::setw(13) << row.q95 << std::setw(13) << row.mean << "\n";
    }
    out << "  " << stat_name(st) << ": slope=" << r.slope
        << (r.identically_zero ? " (identically zero)" : "")
        << " decreasing=" << (r.strictly_decreasing ? "yes" : "no") << " -> " << (r.pass ? "pass" : "FAIL")
        << "\n";
    if (!r.pass) code = kGateFail;
  }
  write_manifest(cfg, start, files, code);
  return code;
}

int cmd_props(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  PropertyConfig pc;
  pc.paths = cfg.paths;
  pc.n_max = cfg.n.front();
  pc.kappa_max = cfg.kappa;
  pc.d_max = cfg.d;
  pc.seed = cfg.seed;
  pc.workers = cfg.workers;
  const std::vector<PropertyCheck> checks = run_property_sweep(pc);
  auto csv = open_csv(cfg, "props.csv", "check,evaluated,violations,worst_margin");
  int code = kPass;
  for (const PropertyCheck& c : checks) {
    csv << '"' << c.name << "\"," << c.evaluated << "," << c.violations << "," << num(c.worst_margin) << "\n";
    out << std::left << std::setw(22) << c.name << " evaluated=" << c.evaluated << " violations=" << c.violations
        << "\n";
    if (c.violations) code = kGateFail;
  }
  csv.close();
  write_manifest(cfg, start, {"props.csv"}, code);
  return code;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  const CurvatureModel m = model_of(cfg);
  const Partition p(cfg.n.front());
  const int D = m.ambient_dim();
  std::ostringstream header;
  header << "sample_id,i,s_i";
  for (int a = 0; a < D; ++a) header << ",p" << a;
  for (int c = 0; c < m.dim; ++c) {
    for (int a = 0; a < D; ++a) header << ",e" << c << "_" << a;
  }
  for (int a = 0; a < m.dim; ++a) header << ",inc" << a;
  auto csv = open_csv(cfg, "paths.csv", header.str());
  for (std::size_t s = 0; s < cfg.N; ++s) {
    const BrokenGeodesic path = sample_nu1P(m, p, cfg.seed, s);
    for (int i = 0; i <= p.n; ++i) {
      const FramePoint& k = path.knots[i];
      csv << s << "," << i << "," << num(p.knot(i));
      for (int a = 0; a < D; ++a) csv << "," << num(k.point(a));
      for (int c = 0; c < m.dim; ++c) {
        for (int a = 0; a < D; ++a) csv << "," << num(k.frame(a, c));
      }
      for (int a = 0; a < m.dim; ++a) csv << "," << num(i == 0 ? 0.0 : path.increments[i - 1](a));
      csv << "\n";
    }
  }
  csv.close();
  out << "wrote " << cfg.N << " paths with " << p.n << " intervals\n";
  write_manifest(cfg, start, {"paths.csv"}, kPass);
  return kPass;
}

int cmd_ibp(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  IbpConfig ic;
  ic.model = model_of(cfg);
  ic.n = cfg.n.front();
  ic.N = cfg.N;
  ic.seed = cfg.seed;
  ic.workers = cfg.workers;
  ic.field = default_field(ic.model);
  ic.f = ibp_default_f();
  ic.g = ibp_default_g();
  const IbpResult r = ibp_check(ic);
  auto csv = open_csv(cfg, "ibp.csv", "quantity,value");
  const std::pair<const char*, double> rows[] = {
      {"lhs_mean", r.lhs_mean},
      {"lhs_stderr", r.lhs_se},
      {"rhs_mean", r.rhs_mean},
      {"rhs_stderr", r.rhs_se},
      {"combined_stderr", r.combined_se},
      {"paired_stderr", r.paired_se},
      {"used", static_cast<double>(r.used)},
      {"skipped", static_cast<double>(r.skipped)},
      {"term_gap_mean", r.term_gap_mean},
      {"term_gap_abs_mean", r.term_gap_abs_mean},
      {"pass", r.pass ? 1.0 : 0.0},
  };
  for (const auto& [k, v] : rows) csv << k << "," << num(v) << "\n";
  csv.close();
  out << "lhs=" << num(r.lhs_mean) << " +- " << num(r.lhs_se) << "  rhs=" << num(r.rhs_mean) << " +- "
      << num(r.rhs_se) << "  skipped=" << r.skipped << " -> " << (r.pass ? "pass" : "FAIL") << "\n";
  const int code = r.pass ? kPass : kGateFail;
  write_manifest(cfg, start, {"ibp.csv"}, code);
  return code;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Piecewise-geodesic pinned path measure experiments"};
  app.set_config("--config", "", "key=value file with default option values");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "flat or hyperbolic")->capture_default_str();
    sub->add_option("--d", cfg.d, "dimension")->capture_default_str();
    sub->add_option("--kappa", cfg.kappa, "curvature magnitude (sectional curvature is -kappa)")
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    sub->add_option("--workers", cfg.workers, "worker threads (0 = all cores)")->capture_default_str();
    sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  };

  auto* pinned = app.add_subcommand("pinned", "pinned mass / observable estimate against oracles");
  common(pinned);
  pinned->add_option("--n", cfg.n, "number of intervals (comma list allowed)")->delimiter(',');
  pinned->add_option("--x", cfg.x, "target: flat point, or frame vector at o when hyperbolic")->delimiter(',');
  pinned->add_option("--rho", cfg.rho, "target distance from o (along --dir)");
  pinned->add_option("--dir", cfg.dir, "target direction in the frame at o")->delimiter(',');
  pinned->add_option("--observable", cfg.observable, "one | mid_dist | end_dist")->capture_default_str();
  pinned->add_option("--N", cfg.N, "Monte Carlo samples")->capture_default_str();

  auto* converge = app.add_subcommand("converge", "convergence diagnostics against the damped objects");
  common(converge);
  converge->add_option("--n", cfg.n, "increasing list of interval counts")->delimiter(',');
  converge->add_option("--samples", cfg.samples, "Brownian paths")->capture_default_str();
  converge->add_option("--refine", cfg.refine, "fine-path refinement factor")->capture_default_str();
  converge->add_option("--stat", cfg.stat, "f | K | J | adjoint | all")->capture_default_str();

  auto* props = app.add_subcommand("props", "property sweep over random hyperbolic paths");
  common(props);
  props->add_option("--paths", cfg.paths, "number of random paths")->capture_default_str();
  props->add_option("--n", cfg.n, "maximum number of intervals")->delimiter(',');

  auto* sample = app.add_subcommand("sample", "dump rolled paths");
  common(sample);
  sample->add_option("--n", cfg.n, "number of intervals")->delimiter(',');
  sample->add_option("--N", cfg.N, "number of paths");

  auto* ibp = app.add_subcommand("ibp", "chart-level integration by parts check");
  common(ibp);
  ibp->add_option("--n", cfg.n, "number of intervals (<= 8)")->delimiter(',');
  ibp->add_option("--N", cfg.N, "Monte Carlo samples")->capture_default_str();

  // Per-command defaults before parsing.
  std::string first;
  for (int i = 1; i < argc && first.empty(); ++i) {
    const std::string a = argv[i];
    if (a == "pinned" || a == "converge" || a == "props" || a == "sample" || a == "ibp") first = a;
  }
  if (first == "converge") cfg.n = {8, 16, 32, 64, 128};
  if (first == "props") {
    cfg.n = {64};
    cfg.kappa = 2.0;
    cfg.d = 3;
  }
  if (first == "sample") cfg.N = 10;
  if (first == "ibp") cfg.n = {4};

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kPass : kUsage;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.model == "flat") cfg.kappa = 0.0;

  try {
    validate(cfg);
    if (cfg.command == "pinned") return cmd_pinned(cfg, out);
    if (cfg.command == "converge") return cmd_converge(cfg, out);
    if (cfg.command == "props") return cmd_props(cfg, out);
    if (cfg.command == "sample") return cmd_sample(cfg, out);
    if (cfg.command == "ibp") return cmd_ibp(cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace pinnedgeo::cli
