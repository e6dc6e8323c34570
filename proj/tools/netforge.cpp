// netforge command-line driver.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "netforge/netforge.hpp"

namespace nf = netforge;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("NETFORGE_SEED"); s && *s) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError(std::string("NETFORGE_SEED is not an unsigned integer: ") + s);
    }
  }
  return 1;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt_count(double v) {
  if (v < 9.0e15) return std::to_string(static_cast<std::uint64_t>(v));
  return fmt(v);
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw UsageError("--eps must lie in (0,1], got " + fmt(eps));
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  return file;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

// --- config file -----------------------------------------------------------

// Appends "--key value" for every config entry whose flag is absent from argv.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  json cfg;
  try {
    cfg = nf::parse_json(nf::read_file(path));
  } catch (const nf::ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  if (!cfg.is_object()) throw UsageError(path + ": config must be a JSON object");
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  auto scalar = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    return fmt(v.get<double>());
  };
  for (const auto& [key, val] : cfg.items()) {
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (val.is_boolean()) {
      if (val.get<bool>()) args.push_back(flag);
    } else if (val.is_array()) {
      std::string joined;
      for (const auto& x : val) joined += (joined.empty() ? "" : ",") + scalar(x);
      args.push_back(flag);
      args.push_back(joined);
    } else {
      args.push_back(flag);
      args.push_back(scalar(val));
    }
  }
  return args;
}

// --- verify-calculus ---------------------------------------------------------

struct VerifyArgs {
  std::uint64_t seed = 1;
  std::size_t instances = 50;
  bool inject_fault = false;
};

int cmd_verify(const VerifyArgs& a) {
  nf::verify::Options o;
  o.seed = a.seed;
  o.instances = a.instances;
  o.inject_fault = a.inject_fault;
  const auto results = nf::verify::run_calculus_suites(o);
  bool ok = true;
  std::cout << "suite results (" << results.size() << " suites, seed " << a.seed << ")\n";
  for (const auto& r : results) {
    std::cout << r.name << ": " << (r.passed ? "pass" : "FAIL");
    if (!r.passed) std::cout << " (" << r.detail << ")";
    std::cout << "  [" << r.cases << " cases]\n";
    ok = ok && r.passed;
  }
  std::cout << (ok ? "all suites passed" : "some suites failed") << "\n";
  return ok ? kOk : kFailure;
}

// --- build ---------------------------------------------------------------------

struct BuildArgs {
  std::string problem;
  std::size_t d = 0;
  double eps = 0.0;
  double T = 0.0;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t best_of = 1;
  double p = 2.0;
  std::size_t quad_points = 16384;
  std::uint64_t quad_seed = 1;
  std::size_t steps = 0;
  std::size_t samples = 0;
  unsigned jobs = 1;
};

nf::ProblemSpec load_spec(const std::string& problem, std::size_t d, double T) {
  if (problem.empty()) throw UsageError("--problem is required");
  try {
    nf::ProblemSpec s = nf::load_problem(problem, d == 0 ? 1 : d, T > 0.0 ? T : 1.0);
    if (d != 0 && d != s.d) {
      if (problem == "heat_abs" || problem == "ou_abs")
        s.d = d;
      else
        throw UsageError("--d " + std::to_string(d) + " conflicts with d = " + std::to_string(s.d) + " in " + problem);
    }
    if (T > 0.0) s.T = T;
    return s;
  } catch (const nf::ParseError& e) {
    throw UsageError(problem + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

nf::LpError lp_error_of(const nf::NeuralNet& net, const nf::ProblemSpec& spec, double p, std::size_t Q,
                        std::uint64_t quad_seed, unsigned jobs) {
  const nf::Activation act = nf::Activation::relu();
  const nf::ProblemId id = *spec.family.reference;
  const std::size_t d = spec.d;
  const double T = spec.T;
  return nf::estimate_lp_error([&](std::span<const double> x) { return net.realize(act, x)[0]; },
                               [&](std::span<const double> x) { return nf::reference_solution(id, d, T, x); }, d, p, Q,
                               quad_seed, jobs);
}

int cmd_build(const BuildArgs& a) {
  check_eps(a.eps);
  if (a.out.empty()) throw UsageError("--out is required");
  if (a.best_of == 0) throw UsageError("--best-of must be at least 1");
  const nf::ProblemSpec spec = load_spec(a.problem, a.d, a.T);
  const nf::SchemeConfig cfg = nf::desk_scheme_config(spec.family.constants);
  nf::BuildOptions opt;
  if (a.steps) opt.steps = a.steps;
  if (a.samples) opt.samples = a.samples;

  if (a.best_of > 1 && !spec.family.reference)
    throw UsageError("--best-of needs a problem with a closed-form reference (heat_abs or ou_abs)");

  std::optional<nf::SolutionBuild> best;
  std::optional<nf::LpError> best_err;
  json candidates = json::array();
  for (std::size_t k = 0; k < a.best_of; ++k) {
    const std::uint64_t seed = a.seed + k;
    nf::SolutionBuild b = nf::build_solution_net(spec.family, cfg, spec.d, a.eps, spec.T, seed, opt);
    if (a.best_of == 1) {
      best.emplace(std::move(b));
      break;
    }
    const nf::LpError e = lp_error_of(b.net, spec, a.p, a.quad_points, a.quad_seed, a.jobs);
    candidates.push_back({{"seed", seed}, {"lp_error", e.error}, {"lp_stderr", e.stderr_}});
    if (!best_err || e.error < best_err->error) {
      best_err = e;
      best.emplace(std::move(b));
    }
  }

  json report = nf::report_to_json(best->report);
  report["problem"] = spec.id;
  if (best_err) {
    report["selection"] = {{"best_of", a.best_of},
                           {"p", a.p},
                           {"quad_points", a.quad_points},
                           {"candidates", candidates},
                           {"lp_error", best_err->error},
                           {"lp_stderr", best_err->stderr_}};
  }
  write_file(a.out + ".net.json", nf::to_json(best->net) + "\n");
  write_file(a.out + ".report.json", report.dump(2) + "\n");
  std::cout << "wrote " << a.out << ".net.json (" << fmt_count(best->report.param_count) << " parameters, depth "
            << best->report.dims.size() - 1 << ") and " << a.out << ".report.json\n";
  return kOk;
}

// --- eval ------------------------------------------------------------------------

struct EvalArgs {
  std::string net;
  std::string points;
  std::string out;
};

std::vector<nf::Vector> read_points(const std::string& path) {
  std::string text;
  try {
    text = nf::read_file(path);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<nf::Vector> pts;
  if (first != std::string::npos && text[first] == '[') {
    try {
      pts = nf::parse_json(text).get<std::vector<nf::Vector>>();
    } catch (const nf::ParseError& e) {
      throw UsageError(path + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(path + ": points must be an array of number arrays");
    }
    return pts;
  }
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    nf::Vector p;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        p.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw UsageError(path + ": line " + std::to_string(lineno) + ": not a number: \"" + cell + "\"");
      }
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

int cmd_eval(const EvalArgs& a) {
  nf::NeuralNet net = [&] {
    try {
      const json j = nf::parse_json(nf::read_file(a.net));
      return nf::network_from_json(j);
    } catch (const nf::ParseError& e) {
      throw UsageError(a.net + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
  }();
  const nf::Activation act = nf::activation_from_json(nf::parse_json(nf::read_file(a.net)));
  const auto pts = read_points(a.points);
  std::ofstream file;
  std::ostream& os = open_out(a.out, file);
  for (std::size_t i = 0; i < net.input_dim(); ++i) os << (i ? "," : "") << "x" << i + 1;
  for (std::size_t i = 0; i < net.output_dim(); ++i) os << ",y" << i + 1;
  os << "\n";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k].size() != net.input_dim())
      throw UsageError(a.points + ": point " + std::to_string(k + 1) + " has " + std::to_string(pts[k].size()) +
                       " coordinates, network expects " + std::to_string(net.input_dim()));
    const nf::Vector y = net.realize(act, pts[k]);
    for (std::size_t i = 0; i < pts[k].size(); ++i) os << (i ? "," : "") << fmt(pts[k][i]);
    for (double v : y) os << "," << fmt(v);
    os << "\n";
  }
  return kOk;
}

// --- sweep -------------------------------------------------------------------------

struct SweepArgs {
  std::string problem;
  std::vector<std::size_t> d;
  std::vector<double> eps;
  std::vector<std::uint64_t> seeds;
  double T = 0.0;
  double p = 2.0;
  std::size_t quad_points = 16384;
  std::uint64_t quad_seed = 1;
  double max_params = 2.0e7;
  std::string out;
  unsigned jobs = 1;
};

struct Row {
  std::size_t d;
  double eps;
  std::uint64_t seed;
  nf::BuildReport plan;
  nf::LpError err{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
};

void write_fit(std::ostream& os, const std::string& x, const std::string& y, const std::string& group,
               const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2) return;
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  if (std::all_of(lx.begin(), lx.end(), [&](double v) { return v == lx.front(); })) return;
  const nf::LinearFit f = nf::fit_line(lx, ly);
  os << "# fit," << x << "," << y << "," << group << "," << fmt(f.slope) << "," << fmt(f.intercept) << ","
     << fmt(f.residual_norm) << "," << xs.size() << "\n";
}

int cmd_sweep(const SweepArgs& a) {
  if (a.d.empty() || a.eps.empty()) throw UsageError("--d and --eps need at least one value");
  for (double e : a.eps) check_eps(e);
  for (std::size_t d : a.d)
    if (d == 0) throw UsageError("--d values must be positive");
  if (a.quad_points < 100) throw UsageError("--quad-points must be at least 100");
  const std::vector<std::uint64_t> seeds = a.seeds.empty() ? std::vector<std::uint64_t>{default_seed()} : a.seeds;

  std::vector<Row> rows;
  for (std::size_t d : a.d)
    for (double e : a.eps)
      for (std::uint64_t s : seeds) rows.push_back(Row{d, e, s, {}});
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.eps != y.eps) return x.eps > y.eps;
    return x.seed < y.seed;
  });

  std::vector<nf::ProblemSpec> specs;
  for (const Row& r : rows) specs.push_back(load_spec(a.problem, r.d, a.T));

  nf::detail::parallel_chunks(rows.size(), a.jobs, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      Row& r = rows[i];
      const nf::ProblemSpec& spec = specs[i];
      const nf::SchemeConfig cfg = nf::desk_scheme_config(spec.family.constants);
      r.plan = nf::plan_solution_net(spec.family, cfg, spec.d, r.eps, spec.T, r.seed);
      if (spec.family.reference && r.plan.param_count <= a.max_params) {
        const nf::SolutionBuild built = nf::build_solution_net(spec.family, cfg, spec.d, r.eps, spec.T, r.seed);
        r.err = lp_error_of(built.net, spec, a.p, a.quad_points, a.quad_seed, 1);
      }
    }
  });

  std::ofstream file;
  std::ostream& os = open_out(a.out, file);
  os << "d,eps,seed,N,eps_inner,param_count,bound,lp_error,lp_stderr\n";
  for (const Row& r : rows)
    os << r.d << "," << fmt(r.eps) << "," << r.seed << "," << r.plan.N << "," << fmt(r.plan.eps_inner) << ","
       << fmt_count(r.plan.param_count) << "," << fmt(r.plan.bound.value) << "," << fmt(r.err.error) << ","
       << fmt(r.err.stderr_) << "\n";

  os << "# summary\n# fit,x,y,group,slope,intercept,residual_norm,points\n";
  const std::uint64_t s0 = seeds.front();
  for (std::size_t d : a.d) {
    std::vector<double> x, y;
    for (const Row& r : rows)
      if (r.d == d && r.seed == s0) {
        x.push_back(1.0 / r.eps);
        y.push_back(r.plan.param_count);
      }
    write_fit(os, "1/eps", "param_count", "d=" + std::to_string(d), x, y);
  }
  for (double e : a.eps) {
    std::vector<double> x, y;
    for (const Row& r : rows)
      if (r.eps == e && r.seed == s0) {
        x.push_back(static_cast<double>(r.d));
        y.push_back(r.plan.param_count);
      }
    write_fit(os, "d", "param_count", "eps=" + fmt(e), x, y);
  }
  for (std::size_t d : a.d) {
    std::vector<double> m, h, y;
    for (const Row& r : rows)
      if (r.d == d && std::isfinite(r.err.error) && r.err.error > 0.0) {
        m.push_back(static_cast<double>(r.plan.M));
        h.push_back(r.plan.T / static_cast<double>(r.plan.N));
        y.push_back(r.err.error);
      }
    write_fit(os, "M", "lp_error", "d=" + std::to_string(d), m, y);
    write_fit(os, "h", "lp_error", "d=" + std::to_string(d), h, y);
  }
  if (!rows.empty()) {
    const auto& b = rows.front().plan.bound;
    os << "# bound_exponents,d," << fmt(b.exponent_d) << ",eps," << fmt(b.exponent_eps) << "\n";
  }
  return kOk;
}

// --- bounds --------------------------------------------------------------------------

struct BoundsArgs {
  nf::BoundParams bp;
  double d = 1.0, T = 1.0, h = 0.0, M = 1.0, eps = 0.5;
  double alpha = 1.0, beta = 1.0, x0 = 0.0;
  std::size_t n = 1;
  double gamma = 0.0, z_sup = 0.0;
  std::size_t N = 1;
  double L0 = 0.0, L1 = 0.0, l = 0.0, trace = 0.0, xi_norm = 0.0, f1_norm = 0.0;
};

int cmd_bounds(const BoundsArgs& a) {
  try {
    a.bp.validate();
  } catch (const nf::PreconditionError& e) {
    throw UsageError(e.what());
  }
  const double h = a.h > 0.0 ? a.h : a.T;
  const auto g = nf::gronwall_bound(a.alpha, a.beta, a.x0, a.n);
  const nf::SchemeConfig cfg = nf::SchemeConfig::derive(a.bp);
  const nf::ParamBound pb = nf::param_bound(cfg, static_cast<std::size_t>(a.d), a.eps);
  json j;
  j["inputs"] = {{"kappa", a.bp.kappa}, {"theta", a.bp.theta}, {"p", a.bp.p},   {"e", a.bp.e},   {"d", a.d},
                 {"T", a.T},            {"h", h},               {"M", a.M},     {"eps", a.eps}};
  j["gronwall"] = {{"geometric", g.geometric}, {"exponential", g.exponential}};
  j["apriori"] = nf::apriori_moment_bound(a.alpha, a.beta, a.gamma, a.x0, a.z_sup, a.N);
  j["euler_weak"] = nf::euler_weak_bound(a.L0, a.L1, a.l, a.T, h, a.trace, a.xi_norm, a.f1_norm);
  j["mc_error"] = nf::mc_error_bound(a.bp, a.d, a.T, a.M);
  j["combined_weak"] = nf::combined_weak_bound(a.bp, a.d, a.T, h, a.M);
  j["combined_constant"] = nf::combined_weak_constant(a.bp, a.d, a.T);
  j["scheme"] = {{"gamma", cfg.gamma}, {"delta", cfg.delta}};
  j["param_bound"] = {{"value", pb.value}, {"exponents", {{"d", pb.exponent_d}, {"eps", pb.exponent_eps}}}};
  std::cout << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netforge: explicit ReLU networks emulating Monte Carlo Euler schemes"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help message and exit");
  app.set_help_all_flag("--help-all", "print help for every subcommand and exit");
  std::string config;

  VerifyArgs va;
  BuildArgs ba;
  EvalArgs ea;
  SweepArgs sa;
  BoundsArgs bo;
  int status = kOk;

  try {
    va.seed = ba.seed = default_seed();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  auto* verify = app.add_subcommand("verify-calculus", "run the randomized network-calculus suites");
  verify->add_option("--seed", va.seed, "random seed");
  verify->add_option("--instances", va.instances, "instances per suite")->check(CLI::PositiveNumber);
  verify->add_flag("--inject-fault", va.inject_fault, "corrupt every constructed net (negative control)");
  verify->add_option("--config", config, "JSON file supplying defaults for any flag");

  auto* build = app.add_subcommand("build", "compile a solution network and its report");
  build->add_option("--problem", ba.problem, "heat_abs, ou_abs or a problem JSON file")->required();
  build->add_option("--d", ba.d, "dimension");
  build->add_option("--eps", ba.eps, "target accuracy in (0,1]")->required();
  build->add_option("--T", ba.T, "time horizon (default 1 or the problem file's T)");
  build->add_option("--seed", ba.seed, "sampler seed (default $NETFORGE_SEED or 1)");
  build->add_option("--out", ba.out, "output prefix; writes PREFIX.net.json and PREFIX.report.json")->required();
  build->add_option("--best-of", ba.best_of, "try this many consecutive seeds, keep the lowest L^p error");
  build->add_option("--p", ba.p, "error exponent for --best-of");
  build->add_option("--quad-points", ba.quad_points, "integration points for --best-of");
  build->add_option("--quad-seed", ba.quad_seed, "seed of the integration points");
  build->add_option("--steps", ba.steps, "override the scheduler's N");
  build->add_option("--samples", ba.samples, "override M (default M = N)");
  build->add_option("--jobs", ba.jobs, "threads for error evaluation");
  build->add_option("--config", config, "JSON file supplying defaults for any flag");

  auto* eval = app.add_subcommand("eval", "evaluate a network JSON on points (CSV or JSON array)");
  eval->add_option("--net", ea.net, "network JSON")->required();
  eval->add_option("--points", ea.points, "points file")->required();
  eval->add_option("--out", ea.out, "CSV output (default stdout)");
  eval->add_option("--config", config, "JSON file supplying defaults for any flag");

  auto* sweep = app.add_subcommand("sweep", "sweep (d, eps, seed) cells and fit exponents");
  sweep->add_option("--problem", sa.problem, "heat_abs, ou_abs or a problem JSON file")->required();
  sweep->add_option("--d", sa.d, "dimensions")->delimiter(',')->required();
  sweep->add_option("--eps", sa.eps, "accuracies in (0,1]")->delimiter(',')->required();
  sweep->add_option("--seed", sa.seeds, "seeds (default $NETFORGE_SEED or 1)")->delimiter(',');
  sweep->add_option("--T", sa.T, "time horizon");
  sweep->add_option("--p", sa.p, "error exponent");
  sweep->add_option("--quad-points", sa.quad_points, "integration points Q");
  sweep->add_option("--quad-seed", sa.quad_seed, "seed of the integration points");
  sweep->add_option("--max-params", sa.max_params, "largest net to materialize for error estimates");
  sweep->add_option("--out", sa.out, "CSV output (default stdout)");
  sweep->add_option("--jobs", sa.jobs, "concurrent cells");
  sweep->add_option("--config", config, "JSON file supplying defaults for any flag");

  auto* bounds = app.add_subcommand("bounds", "print the error and complexity bounds as JSON");
  bounds->add_option("--kappa", bo.bp.kappa);
  bounds->add_option("--theta", bo.bp.theta);
  bounds->add_option("--p", bo.bp.p);
  bounds->add_option("--e", bo.bp.e);
  bounds->add_option("--d0", bo.bp.d0);
  bounds->add_option("--d1", bo.bp.d1);
  bounds->add_option("--d2", bo.bp.d2);
  bounds->add_option("--d3", bo.bp.d3);
  bounds->add_option("--d4", bo.bp.d4);
  bounds->add_option("--d5", bo.bp.d5);
  bounds->add_option("--d6", bo.bp.d6);
  bounds->add_option("--n0", bo.bp.n0);
  bounds->add_option("--n1", bo.bp.n1);
  bounds->add_option("--n2", bo.bp.n2);
  bounds->add_option("--d", bo.d, "dimension");
  bounds->add_option("--T", bo.T, "time horizon");
  bounds->set_help_flag("--help", "print this help message and exit");
  bounds->add_option("--h", bo.h, "step size (default T)");
  bounds->add_option("--M", bo.M, "Monte Carlo samples");
  bounds->add_option("--eps", bo.eps, "accuracy for the parameter bound");
  bounds->add_option("--alpha", bo.alpha);
  bounds->add_option("--beta", bo.beta);
  bounds->add_option("--x0", bo.x0);
  bounds->add_option("--n", bo.n);
  bounds->add_option("--gamma", bo.gamma);
  bounds->add_option("--z-sup", bo.z_sup);
  bounds->add_option("--N", bo.N);
  bounds->add_option("--L0", bo.L0);
  bounds->add_option("--L1", bo.L1);
  bounds->add_option("--l", bo.l);
  bounds->add_option("--trace", bo.trace);
  bounds->add_option("--xi-norm", bo.xi_norm);
  bounds->add_option("--f1-norm", bo.f1_norm);
  bounds->add_option("--config", config, "JSON file supplying defaults for any flag");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*verify) status = cmd_verify(va);
    if (*build) status = cmd_build(ba);
    if (*eval) status = cmd_eval(ea);
    if (*sweep) status = cmd_sweep(sa);
    if (*bounds) status = cmd_bounds(bo);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nf::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nf::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return status;
}
