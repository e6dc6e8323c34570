#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "netforge/kolmogorov.hpp"
#include "netforge/random_nets.hpp"
#include "netforge/reference.hpp"
#include "oracles.hpp"

using namespace netforge;

namespace {

const Activation relu = Activation::relu();

ApproximationFamily family(ProblemId id) { return bundled_family(id); }

}  // namespace

// scheduler

TEST(SchemeConfig, DeskConstants) {
  const SchemeConfig cfg = desk_scheme_config();
  EXPECT_TRUE(oracle::rel_close(cfg.gamma, 736.0 * std::exp(5.0), 1e-14));
  EXPECT_DOUBLE_EQ(cfg.delta, 1.5);
}

TEST(SchemeConfig, KolmogorovInstantiation) {
  const FamilyConstants fc;
  const SchemeConfig cfg = kolmogorov_scheme_config(fc, 2.0);
  EXPECT_DOUBLE_EQ(cfg.params.d0, 0.5 + 0.5 * 2.0);
  EXPECT_DOUBLE_EQ(cfg.params.n0, 0.5);
  EXPECT_DOUBLE_EQ(cfg.params.n1, 0.0);
  EXPECT_DOUBLE_EQ(cfg.params.n2, 2.0);
  EXPECT_DOUBLE_EQ(cfg.params.d3, 4.0);
  // γ = 46 e² 4 (4 e³ 8)²
  EXPECT_TRUE(oracle::rel_close(cfg.gamma, 46.0 * 4.0 * 1024.0 * std::exp(8.0), 1e-14));
}

TEST(ChooseDiscretization, Examples) {
  const SchemeConfig cfg = desk_scheme_config();
  EXPECT_EQ(choose_discretization(cfg, 2, 0.5).N, 16u);
  EXPECT_EQ(choose_discretization(cfg, 2, 0.25).N, 64u);
  EXPECT_EQ(choose_discretization(cfg, 5, 1.0).N, 4u);
  EXPECT_EQ(choose_discretization(cfg, 1, 0.3).N, 45u);
  const double inner = choose_discretization(cfg, 2, 0.5).eps_inner;
  EXPECT_TRUE(oracle::rel_close(inner, 0.5 / (736.0 * std::exp(5.0) * std::pow(2.0, 1.5)), 1e-13));
}

TEST(ChooseDiscretization, StepCountIndependentOfDimensionWithoutD0) {
  const SchemeConfig cfg = desk_scheme_config();
  for (double eps : {1.0, 0.5, 0.125})
    for (std::size_t d : {1u, 3u, 8u, 40u})
      EXPECT_EQ(choose_discretization(cfg, d, eps).N, choose_discretization(cfg, 1, eps).N);
}

TEST(ChooseDiscretization, UnitScalesLeaveEpsUntouched) {
  SchemeConfig cfg = desk_scheme_config();
  cfg.gamma = 1.0;
  cfg.delta = 0.0;
  for (double eps : {1.0, 0.5, 1e-3}) EXPECT_EQ(choose_discretization(cfg, 7, eps).eps_inner, eps);
}

TEST(ChooseDiscretization, MonotoneInEps) {
  const SchemeConfig cfg = kolmogorov_scheme_config(FamilyConstants{}, 1.0);
  std::size_t prev = 0;
  for (double eps : {1.0, 0.7, 0.5, 0.3, 0.1}) {
    const std::size_t N = choose_discretization(cfg, 3, eps).N;
    EXPECT_GE(N, prev);
    prev = N;
  }
}

TEST(ChooseDiscretization, Errors) {
  const SchemeConfig cfg = desk_scheme_config();
  for (double eps : {0.0, -0.5, 1.5, std::nan("")}) {
    try {
      choose_discretization(cfg, 2, eps);
      ADD_FAILURE() << "accepted eps " << eps;
    } catch (const PreconditionError& e) {
      EXPECT_NE(std::string(e.what()).find("(0,1]"), std::string::npos);
    }
  }
  EXPECT_THROW(choose_discretization(cfg, 0, 0.5), PreconditionError);
  EXPECT_THROW(choose_discretization(cfg, 2, 1e-12), std::range_error);
}

TEST(ParamBound, DeskExponents) {
  const SchemeConfig cfg = desk_scheme_config();
  const ParamBound b = param_bound(cfg, 3, 0.5);
  EXPECT_DOUBLE_EQ(b.exponent_d, 4.0);
  EXPECT_DOUBLE_EQ(b.exponent_eps, 6.0);
  // 3 𝔠² 2³ (2𝔠)⁶ d⁴ ε⁻⁶
  EXPECT_TRUE(oracle::rel_close(b.value, 3.0 * 8.0 * 64.0 * 81.0 * 64.0, 1e-14));
}

TEST(ParamBound, KolmogorovExponents) {
  FamilyConstants fc;
  fc.e = 0.5;
  const SchemeConfig cfg = kolmogorov_scheme_config(fc, 1.0);
  const ParamBound b = param_bound(cfg, 2, 0.5);
  EXPECT_DOUBLE_EQ(b.exponent_eps, fc.e + 6.0);
  const double d0 = fc.d6 + (fc.d1 + fc.d2) * (fc.theta + 1.0);
  EXPECT_DOUBLE_EQ(b.exponent_d, 6.0 * d0 + 4.0 + fc.e * cfg.delta);
}

TEST(ParamBound, ScalesAsPowerLaws) {
  const SchemeConfig cfg = kolmogorov_scheme_config(FamilyConstants{}, 1.0);
  const ParamBound a = param_bound(cfg, 2, 0.5), b = param_bound(cfg, 4, 0.5), c = param_bound(cfg, 2, 0.25);
  EXPECT_TRUE(oracle::rel_close(b.value / a.value, std::pow(2.0, a.exponent_d), 1e-12));
  EXPECT_TRUE(oracle::rel_close(c.value / a.value, std::pow(2.0, a.exponent_eps), 1e-12));
}

// step and path nets

TEST(StepNet, HeatShiftsByIncrement) {
  const NeuralNet s = build_step_net(zero_drift_net(2), 4, 1.0, {0.5, -1.0});
  EXPECT_EQ(s.realize(relu, Vector{1.0, 2.0}), (Vector{1.5, 1.0}));
}

TEST(StepNet, OrnsteinUhlenbeckContracts) {
  const NeuralNet s = build_step_net(neg_identity_net(1), 4, 1.0, {0.25});
  for (double x : {-3.0, 0.0, 2.0}) EXPECT_NEAR(s.realize(relu, Vector{x})[0], 0.25 + 0.75 * x, 1e-14);
}

TEST(StepNet, ShapeErrors) {
  EXPECT_THROW(build_step_net(zero_drift_net(2), 4, 1.0, {0.0}), ShapeError);
  EXPECT_THROW(build_step_net(sum_abs_net(2), 4, 1.0, {0.0, 0.0}), ShapeError);
}

TEST(PathNet, ZeroIncrementsGiveDeterministicFlow) {
  for (std::size_t N : {1u, 3u, 8u}) {
    const std::vector<Vector> zeros(N, Vector(2, 0.0));
    const NeuralNet heat = build_path_net(zero_drift_net(2), N, 1.0, zeros);
    EXPECT_EQ(heat.realize(relu, Vector{-0.5, 3.0}), (Vector{-0.5, 3.0}));
    const NeuralNet ou = build_path_net(neg_identity_net(2), N, 2.0, zeros);
    const double f = std::pow(1.0 - 2.0 / static_cast<double>(N), static_cast<double>(N));
    const Vector y = ou.realize(relu, Vector{1.5, -4.0});
    EXPECT_NEAR(y[0], 1.5 * f, 1e-13);
    EXPECT_NEAR(y[1], -4.0 * f, 1e-13);
  }
}

TEST(PathNet, MatchesEulerRecursion) {
  const std::vector<Vector> z{{0.3}, {-1.2}, {0.05}};
  const NeuralNet path = build_path_net(neg_identity_net(1), 3, 1.5, z);
  for (double x : {-2.0, 0.4, 7.0}) {
    double y = x;
    for (const auto& zi : z) y = zi[0] + y - 0.5 * y;
    EXPECT_NEAR(path.realize(relu, Vector{x})[0], y, 1e-13);
  }
}

TEST(PathNet, IncrementCountMustMatch) {
  EXPECT_THROW(build_path_net(zero_drift_net(1), 3, 1.0, {{0.0}, {0.0}}), PreconditionError);
}

TEST(McNet, AveragesPayoffBlocks) {
  const NeuralNet mc = build_mc_net(sum_abs_net(2), 3);
  EXPECT_NEAR(mc.realize(relu, Vector{1, -1, 2, 0, -3, 3})[0], (2.0 + 2.0 + 6.0) / 3.0, 1e-14);
  EXPECT_THROW(build_mc_net(relu_identity(2), 3), PreconditionError);
}

// solution net

TEST(SolutionNet, TwoStepsTwoSamplesHandFormula) {
  const SchemeConfig cfg = desk_scheme_config();
  BuildOptions opt;
  opt.steps = 2;
  opt.samples = 2;
  const std::uint64_t seed = 99;
  const SolutionBuild b = build_solution_net(family(ProblemId::ou_abs), cfg, 1, 0.5, 1.0, seed, opt);
  EXPECT_EQ(b.report.N, 2u);
  EXPECT_EQ(b.report.M, 2u);
  const GaussianSampler g(seed);
  const double s = std::sqrt(0.5) * std::sqrt(2.0);
  for (double x : {-1.0, 0.0, 2.5}) {
    double want = 0.0;
    for (std::size_t m = 1; m <= 2; ++m) {
      double y = x;
      for (std::size_t n = 0; n < 2; ++n) y = s * g.normal(m, n, 0) + y - 0.5 * y;
      want += 0.5 * std::abs(y);
    }
    EXPECT_NEAR(b.net.realize(relu, Vector{x})[0], want, 1e-12);
  }
}

TEST(SolutionNet, EmulatesEnsembleExactly) {
  const SchemeConfig cfg = desk_scheme_config();
  for (ProblemId id : {ProblemId::heat_abs, ProblemId::ou_abs})
    for (std::size_t d : {1u, 2u, 3u})
      for (std::uint64_t seed : {1u, 17u}) {
        BuildOptions opt;
        opt.steps = 4;
        opt.samples = 5;
        const ApproximationFamily f = family(id);
        const SolutionBuild b = build_solution_net(f, cfg, d, 0.5, 1.0, seed, opt);
        const SDEProblem p = family_problem(f, d, 1.0, b.report.eps_inner);
        std::mt19937_64 rng(seed);
        for (int t = 0; t < 5; ++t) {
          const Vector x = random_vector(rng, d, -2, 2);
          const double want = simulate_ensemble(p, 4, 5, x, GaussianSampler(seed)).value;
          EXPECT_NEAR(b.net.realize(relu, x)[0], want, 1e-8 * std::max(1.0, std::abs(want)));
        }
      }
}

TEST(SolutionNet, StructureIndependentOfSeed) {
  const SchemeConfig cfg = desk_scheme_config();
  BuildOptions opt;
  opt.steps = 3;
  opt.samples = 4;
  const auto f = family(ProblemId::ou_abs);
  const SolutionBuild a = build_solution_net(f, cfg, 2, 0.5, 1.0, 1, opt);
  for (std::uint64_t seed : {2u, 3u, 1000u}) {
    const SolutionBuild b = build_solution_net(f, cfg, 2, 0.5, 1.0, seed, opt);
    EXPECT_EQ(structure(b.net).dims, structure(a.net).dims);
    EXPECT_EQ(structure(b.net).hidden_count, structure(a.net).hidden_count);
    EXPECT_EQ(b.report.param_count, a.report.param_count);
  }
}

TEST(SolutionNet, PlannerMatchesBuild) {
  const SchemeConfig cfg = desk_scheme_config();
  for (ProblemId id : {ProblemId::heat_abs, ProblemId::ou_abs})
    for (std::size_t d : {1u, 2u, 4u})
      for (std::size_t N : {1u, 2u, 5u}) {
        BuildOptions opt;
        opt.steps = N;
        opt.samples = N + 1;
        const auto f = family(id);
        const SolutionBuild b = build_solution_net(f, cfg, d, 0.5, 1.0, 7, opt);
        const BuildReport r = plan_solution_net(f, cfg, d, 0.5, 1.0, 7, opt);
        EXPECT_EQ(r.dims, b.net.dims());
        EXPECT_EQ(r.param_count, static_cast<double>(b.net.param_count()));
      }
}

TEST(SolutionNet, DefaultScheduleWithinParameterBound) {
  const SchemeConfig cfg = desk_scheme_config();
  const SolutionBuild b = build_solution_net(family(ProblemId::heat_abs), cfg, 1, 1.0, 1.0, 3);
  EXPECT_EQ(b.report.N, 4u);
  EXPECT_EQ(b.report.M, 4u);
  EXPECT_LE(b.report.param_count, b.report.bound.value);
  for (std::size_t d : {1u, 4u, 16u})
    for (double eps : {1.0, 0.5, 0.125}) {
      const BuildReport r = plan_solution_net(family(ProblemId::ou_abs), cfg, d, eps, 1.0, 0);
      EXPECT_LE(r.param_count, r.bound.value) << "d=" << d << " eps=" << eps;
    }
}

TEST(SolutionNet, RejectsFamilyOverBudget) {
  ApproximationFamily f = family(ProblemId::heat_abs);
  f.drift_net = [](std::size_t d, double) {
    return scalar_mul(0.0, compose(relu_identity(d), compose(relu_identity(d), relu_identity(d))));
  };
  f.constants.kappa = 1.0;
  f.constants.d3 = 0.0;
  EXPECT_THROW(build_solution_net(f, desk_scheme_config(), 2, 0.5, 1.0, 0), std::invalid_argument);
}

TEST(SolutionNet, ReportJson) {
  BuildOptions opt;
  opt.steps = 2;
  opt.samples = 2;
  const SolutionBuild b = build_solution_net(family(ProblemId::heat_abs), desk_scheme_config(), 2, 0.5, 1.0, 5, opt);
  const auto j = report_to_json(b.report);
  EXPECT_EQ(j.at("N").get<std::size_t>(), 2u);
  EXPECT_EQ(j.at("param_count").get<std::uint64_t>(), b.net.param_count());
  EXPECT_EQ(j.at("dims").get<Dims>(), b.net.dims());
  EXPECT_DOUBLE_EQ(j.at("exponents").at("eps").get<double>(), 6.0);
}
