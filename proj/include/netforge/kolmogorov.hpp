#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "netforge/bounds.hpp"
#include "netforge/calculus.hpp"
#include "netforge/problems.hpp"
#include "netforge/sampler.hpp"
#include "netforge/sde.hpp"
#include "netforge/shape.hpp"

namespace netforge {

/// Scheduler and complexity constants.
struct SchemeConfig {
  BoundParams params;
  double gamma = 1.0;
  double delta = 0.0;

  /// γ = 46 e^𝔠 𝔠² (4 e^{𝔠+1} 𝔠³)^{2θ},  δ = max{𝔡₅ + θ(𝔡₁+𝔡₂), 𝔡₄ + 𝔡₆ + 2θ(𝔡₁+𝔡₂)}.
  static SchemeConfig derive(const BoundParams& bp) {
    bp.validate();
    const double c = bp.kappa, th = bp.theta, s = bp.d1 + bp.d2;
    SchemeConfig cfg;
    cfg.params = bp;
    cfg.gamma = 46.0 * std::exp(c) * c * c * std::pow(4.0 * std::exp(c + 1.0) * c * c * c, 2.0 * th);
    cfg.delta = std::max(bp.d5 + th * s, bp.d4 + bp.d6 + 2.0 * th * s);
    return cfg;
  }
};

/// Scheme used for the bundled problems: 𝔠 = 1 and 𝔡₀ = 0 so that
/// N = ⌈(2/ε)²⌉ stays small enough to materialize.
inline SchemeConfig desk_scheme_config(const FamilyConstants& fc = {}) {
  BoundParams bp;
  bp.kappa = 1.0;
  bp.theta = fc.theta;
  bp.p = 2.0;
  bp.e = fc.e;
  bp.d0 = 0.0;
  bp.d1 = fc.d1;
  bp.d2 = fc.d2;
  bp.d3 = std::max(4.0, fc.d3);
  bp.d4 = fc.d4;
  bp.d5 = fc.d5;
  bp.d6 = fc.d6;
  bp.n0 = 0.5;
  bp.n1 = 0.0;
  bp.n2 = 2.0;
  return SchemeConfig::derive(bp);
}

/// The instantiation for Kolmogorov PDEs: 𝔫 = (1/2, 0, 2),
/// 𝔡₀ = 𝔡₆ + (𝔡₁+𝔡₂)(θ+1), 𝔡₃ → max{4, 𝔡₃}.
inline SchemeConfig kolmogorov_scheme_config(const FamilyConstants& fc, double c) {
  SchemeConfig cfg = desk_scheme_config(fc);
  cfg.params.kappa = c;
  cfg.params.d0 = fc.d6 + (fc.d1 + fc.d2) * (fc.theta + 1.0);
  return SchemeConfig::derive(cfg.params);
}

struct Discretization {
  std::size_t N;
  double eps_inner;
};

namespace detail {

inline void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw PreconditionError("eps must lie in (0,1], got " + std::to_string(eps));
}

}  // namespace detail

/// N = ⌈(2𝔠 d^{𝔡₀}/ε)^{1/𝔫₀}⌉ and ε_inner = ε/(γ d^δ) clamped to (0, 1].
inline Discretization choose_discretization(const SchemeConfig& cfg, std::size_t d, double eps) {
  detail::check_eps(eps);
  if (d == 0) throw PreconditionError("choose_discretization: d must be positive");
  const auto& bp = cfg.params;
  const double dd = static_cast<double>(d);
  const double thr = std::pow(2.0 * bp.kappa * std::pow(dd, bp.d0) / eps, 1.0 / bp.n0);
  if (!std::isfinite(thr) || thr > 9.0e15) throw std::range_error("choose_discretization: step count overflows");
  // pow can land one ulp above an exact integer threshold
  double n = std::ceil(thr);
  if (n - thr > 0.0 && std::abs(thr - std::round(thr)) <= 4.0 * std::numeric_limits<double>::epsilon() * thr)
    n = std::round(thr);
  const std::size_t N = std::max<std::size_t>(1, static_cast<std::size_t>(n));
  const double inner = std::min(1.0, eps / (cfg.gamma * std::pow(dd, cfg.delta)));
  if (!(inner > 0.0)) throw std::range_error("choose_discretization: eps_inner underflows to 0");
  return {N, inner};
}

/// c d^{E_d} ε^{-E_ε} with its exponents.
struct ParamBound {
  double value;
  double exponent_d;
  double exponent_eps;
};

inline ParamBound param_bound(const SchemeConfig& cfg, std::size_t d, double eps) {
  detail::check_eps(eps);
  const auto& bp = cfg.params;
  const double n = bp.n1 + bp.n2 + 1.0;
  const double c = 3.0 * bp.kappa * bp.kappa * std::pow(2.0, n) * std::pow(2.0 * bp.kappa, n / bp.n0) *
                   std::pow(cfg.gamma, bp.e);
  const double Ed = bp.d0 * n / bp.n0 + bp.d3 + bp.e * cfg.delta;
  const double Ee = n / bp.n0 + bp.e;
  return {c * std::pow(static_cast<double>(d), Ed) * std::pow(eps, -Ee), Ed, Ee};
}

/// z + x + (T/N) drift(x): skip_compose((T/N) ⊛ drift, 𝔦_d, 𝔦_d) shifted by 𝔅_z.
inline NeuralNet build_step_net(const NeuralNet& drift_net, std::size_t N, double T, const Vector& z) {
  const std::size_t d = drift_net.input_dim();
  if (drift_net.output_dim() != d) throw ShapeError("build_step_net: drift net must map R^d to R^d");
  if (z.size() != d) throw ShapeError("build_step_net: z must have length d");
  if (N == 0) throw PreconditionError("build_step_net: N >= 1");
  const NeuralNet id = relu_identity(d);
  return compose(bias_net(z), skip_compose(scalar_mul(T / static_cast<double>(N), drift_net), id, id));
}

/// Frozen-noise Euler trajectory endpoint X_N as a function of x.
inline NeuralNet build_path_net(const NeuralNet& drift_net, std::size_t N, double T,
                                const std::vector<Vector>& increments) {
  const std::size_t d = drift_net.input_dim();
  if (drift_net.output_dim() != d) throw ShapeError("build_path_net: drift net must map R^d to R^d");
  if (increments.size() != N)
    throw PreconditionError("build_path_net: " + std::to_string(increments.size()) + " increments for N = " +
                            std::to_string(N));
  if (N == 0) throw PreconditionError("build_path_net: N >= 1");
  const NeuralNet id = relu_identity(d);
  const NeuralNet step = scalar_mul(T / static_cast<double>(N), drift_net);
  NeuralNet phi = id;
  for (const auto& z : increments) {
    if (z.size() != d) throw ShapeError("build_path_net: increments must have length d");
    phi = compose(bias_net(z), skip_compose(step, std::move(phi), id));
  }
  return phi;
}

/// (x_1, ..., x_M) ↦ (1/M) ∑ payoff(x_m).
inline NeuralNet build_mc_net(const NeuralNet& payoff_net, std::size_t M) {
  if (payoff_net.output_dim() != 1) throw PreconditionError("build_mc_net: payoff net must be scalar");
  if (M == 0) throw PreconditionError("build_mc_net: M >= 1");
  return weighted_block_sum(std::vector<double>(M, 1.0 / static_cast<double>(M)),
                            std::vector<NeuralNet>(M, payoff_net));
}

struct BuildOptions {
  std::optional<std::size_t> steps;    // overrides the scheduler's N
  std::optional<std::size_t> samples;  // overrides M = N
};

struct BuildReport {
  std::size_t d = 0;
  double eps = 0.0;
  double T = 1.0;
  std::size_t N = 0;
  std::size_t M = 0;
  double eps_inner = 0.0;
  std::uint64_t seed = 0;
  double param_count = 0.0;
  Dims dims;
  ParamBound bound{};
};

inline nlohmann::json report_to_json(const BuildReport& r) {
  nlohmann::json j;
  j["d"] = r.d;
  j["eps"] = r.eps;
  j["T"] = r.T;
  j["N"] = r.N;
  j["M"] = r.M;
  j["eps_inner"] = r.eps_inner;
  j["seed"] = r.seed;
  if (r.param_count < 9.0e15)
    j["param_count"] = static_cast<std::uint64_t>(r.param_count);
  else
    j["param_count"] = r.param_count;
  j["dims"] = r.dims;
  j["bound"] = r.bound.value;
  j["exponents"] = {{"d", r.bound.exponent_d}, {"eps", r.bound.exponent_eps}};
  return j;
}

struct SolutionBuild {
  NeuralNet net;
  BuildReport report;
};

namespace detail {

inline BuildReport base_report(const ApproximationFamily& family, const SchemeConfig& cfg, std::size_t d, double eps,
                               double T, std::uint64_t seed, const BuildOptions& opt) {
  detail::check_eps(eps);
  if (!(T > 0.0)) throw PreconditionError("T must be positive");
  BuildReport r;
  const Discretization disc = choose_discretization(cfg, d, eps);
  r.d = d;
  r.eps = eps;
  r.T = T;
  r.N = opt.steps.value_or(disc.N);
  r.M = opt.samples.value_or(r.N);
  if (r.N == 0 || r.M == 0) throw PreconditionError("N and M must be positive");
  r.eps_inner = disc.eps_inner;
  r.seed = seed;
  r.bound = param_bound(cfg, d, eps);
  check_family(family, d, r.eps_inner);
  return r;
}

}  // namespace detail

/// Ψ = ⊕_m (1/M) ⊛ (payoff ∘ 𝔦_d ∘ Φ^m_N), Φ^m_N the path net of sample m.
/// ℛ(Ψ)(x) equals simulate_ensemble on family_problem with the same seed.
inline SolutionBuild build_solution_net(const ApproximationFamily& family, const SchemeConfig& cfg, std::size_t d,
                                        double eps, double T, std::uint64_t seed, const BuildOptions& opt = {}) {
  BuildReport r = detail::base_report(family, cfg, d, eps, T, seed, opt);
  const NeuralNet drift = family.drift_net(d, r.eps_inner);
  const NeuralNet payoff = family.payoff_net(d, r.eps_inner);
  const NeuralNet id = relu_identity(d);
  const SDEProblem problem = family_problem(family, d, T, r.eps_inner);
  const GaussianSampler sampler(seed);
  const double w = 1.0 / static_cast<double>(r.M);

  std::vector<NeuralNet> terms;
  terms.reserve(r.M);
  std::vector<Vector> incs(r.N);
  for (std::size_t m = 1; m <= r.M; ++m) {
    for (std::size_t n = 0; n < r.N; ++n) incs[n] = brownian_increment(sampler, problem, r.N, m, n);
    terms.push_back(scalar_mul(w, compose_via_identity(payoff, build_path_net(drift, r.N, T, incs), id)));
  }
  NeuralNet psi = same_length_sum(terms);
  terms.clear();
  r.param_count = static_cast<double>(psi.param_count());
  r.dims = psi.dims();
  return {std::move(psi), std::move(r)};
}

/// Report of build_solution_net computed from shapes only.
inline BuildReport plan_solution_net(const ApproximationFamily& family, const SchemeConfig& cfg, std::size_t d,
                                     double eps, double T, std::uint64_t seed, const BuildOptions& opt = {}) {
  BuildReport r = detail::base_report(family, cfg, d, eps, T, seed, opt);
  r.dims = shape::solution(family.payoff_net(d, r.eps_inner).dims(), family.drift_net(d, r.eps_inner).dims(), d,
                           r.N, r.M);
  r.param_count = param_count(r.dims);
  return r;
}

}  // namespace netforge
