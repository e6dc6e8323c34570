// Compiles the solution network for the Ornstein-Uhlenbeck problem in d = 2
// and compares it with the simulated ensemble and the closed form.

#include <cstdio>
#include <cstdlib>

#include "netforge/netforge.hpp"

using namespace netforge;

int main(int argc, char** argv) {
  const double eps = argc > 1 ? std::atof(argv[1]) : 0.5;
  const std::size_t d = 2;
  const std::uint64_t seed = 7;
  const ApproximationFamily family = bundled_family(ProblemId::ou_abs);
  const SchemeConfig cfg = desk_scheme_config(family.constants);

  const SolutionBuild b = build_solution_net(family, cfg, d, eps, 1.0, seed);
  std::printf("N = M = %zu, parameters %.0f, bound %.4g\n", b.report.N, b.report.param_count, b.report.bound.value);

  const SDEProblem problem = family_problem(family, d, 1.0, b.report.eps_inner);
  const Activation relu = Activation::relu();
  for (const Vector& x : {Vector{0.0, 0.0}, Vector{0.5, -0.25}, Vector{1.0, 1.0}}) {
    const double net = b.net.realize(relu, x)[0];
    const double mc = simulate_ensemble(problem, b.report.N, b.report.M, x, GaussianSampler(seed)).value;
    const double ref = reference_solution(ProblemId::ou_abs, d, 1.0, x);
    std::printf("x = (%5.2f, %5.2f)  net %.12f  ensemble %.12f  exact %.6f\n", x[0], x[1], net, mc, ref);
  }

  const LpError err = estimate_lp_error([&](std::span<const double> x) { return b.net.realize(relu, x)[0]; },
                                        [&](std::span<const double> x) {
                                          return reference_solution(ProblemId::ou_abs, d, 1.0, x);
                                        },
                                        d, 2.0, 4096, 1);
  std::printf("L2 error on [0,1]^2: %.4f +- %.4f (eps = %g)\n", err.error, err.stderr_, eps);
  return 0;
}
