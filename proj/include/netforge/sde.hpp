#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netforge/detail/parallel.hpp"
#include "netforge/errors.hpp"
#include "netforge/matrix.hpp"
#include "netforge/network.hpp"
#include "netforge/sampler.hpp"

namespace netforge {

/// Writes drift(y) into out.
using DriftFn = std::function<void(std::span<const double> y, std::span<double> out)>;
using PayoffFn = std::function<double(std::span<const double> x)>;

/// dX = drift(X) dt + 𝒜 dW on ℝ^d over [0, T], with functional E[payoff(X_T)].
struct SDEProblem {
  std::size_t d = 1;
  double T = 1.0;
  DriftFn drift;
  PayoffFn payoff;
  Matrix diffusion_factor;
  double lipschitz_kappa = 0.0;

  void validate() const {
    if (d == 0) throw PreconditionError("SDEProblem: d must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw PreconditionError("SDEProblem: T must be positive");
    if (!drift || !payoff) throw PreconditionError("SDEProblem: drift and payoff are required");
    if (diffusion_factor.rows() != d || diffusion_factor.cols() != d)
      throw PreconditionError("SDEProblem: diffusion factor must be " + std::to_string(d) + "x" + std::to_string(d));
    if (lipschitz_kappa < 0.0) throw PreconditionError("SDEProblem: kappa must be nonnegative");
  }
};

inline DriftFn drift_from_net(NeuralNet net, Activation act = Activation::relu()) {
  return [net = std::move(net), act = std::move(act)](std::span<const double> y, std::span<double> out) {
    Vector r = net.realize(act, y);
    std::copy(r.begin(), r.end(), out.begin());
  };
}

inline PayoffFn payoff_from_net(NeuralNet net, Activation act = Activation::relu()) {
  return [net = std::move(net), act = std::move(act)](std::span<const double> x) { return net.realize(act, x)[0]; };
}

/// Z_n = 𝒜 √(T/N) ξ with ξ the sampler's variates at (m, n, ·).
inline Vector brownian_increment(const GaussianSampler& sampler, const SDEProblem& problem, std::size_t N,
                                 std::size_t m, std::size_t n) {
  if (N == 0 || n >= N) throw std::out_of_range("brownian_increment: step " + std::to_string(n) + " outside [0, " +
                                                std::to_string(N) + ")");
  if (m == 0) throw std::out_of_range("brownian_increment: paths are numbered from 1");
  const std::size_t d = problem.d;
  const double s = std::sqrt(problem.T / static_cast<double>(N));
  Vector xi(d);
  for (std::size_t i = 0; i < d; ++i) xi[i] = s * sampler.normal(m, n, i);
  return problem.diffusion_factor * xi;
}

/// z + y + (T/N) drift(y).
inline Vector euler_step(std::span<const double> z, std::span<const double> y, const SDEProblem& problem,
                         std::size_t N) {
  if (z.size() != problem.d || y.size() != problem.d) throw ShapeError("euler_step: vectors must have length d");
  const double h = problem.T / static_cast<double>(N);
  Vector f(problem.d);
  problem.drift(y, f);
  Vector r(problem.d);
  for (std::size_t i = 0; i < problem.d; ++i) r[i] = z[i] + y[i] + h * f[i];
  return r;
}

/// Terminal state Y_N of path m started at x. Same arithmetic as chaining
/// brownian_increment and euler_step, without per-step allocation.
inline Vector euler_path(const SDEProblem& problem, std::size_t N, std::size_t m, std::span<const double> x,
                         const GaussianSampler& sampler) {
  const std::size_t d = problem.d;
  const double s = std::sqrt(problem.T / static_cast<double>(N));
  const double h = problem.T / static_cast<double>(N);
  const Matrix& A = problem.diffusion_factor;
  Vector y(x.begin(), x.end()), xi(d), z(d), f(d);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t i = 0; i < d; ++i) xi[i] = s * sampler.normal(m, n, i);
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += A(i, j) * xi[j];
      z[i] = acc;
    }
    problem.drift(y, f);
    for (std::size_t i = 0; i < d; ++i) y[i] = z[i] + y[i] + h * f[i];
  }
  return y;
}

struct EnsembleResult {
  std::vector<Vector> terminal_states;
  double value = 0.0;
  double elapsed_seconds = 0.0;
};

/// Mean and standard error of a Monte Carlo functional.
struct MCEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

namespace detail {

inline void check_ensemble(const SDEProblem& problem, std::size_t N, std::size_t M, std::span<const double> x) {
  problem.validate();
  if (N == 0 || M == 0) throw PreconditionError("ensemble: N and M must be positive");
  if (x.size() != problem.d) throw ShapeError("ensemble: start point must have length d");
}

// Per-path payoffs, summed afterwards in path order so that the result does
// not depend on the thread count.
inline std::vector<double> path_payoffs(const SDEProblem& problem, std::size_t N, std::size_t M,
                                        std::span<const double> x, const GaussianSampler& sampler, unsigned jobs,
                                        std::vector<Vector>* states) {
  std::vector<double> pay(M);
  if (states) states->assign(M, Vector());
  parallel_chunks(M, jobs, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      Vector y = euler_path(problem, N, k + 1, x, sampler);
      pay[k] = problem.payoff(y);
      if (states) (*states)[k] = std::move(y);
    }
  });
  return pay;
}

}  // namespace detail

/// Y_n = Z_{n-1} + Y_{n-1} + (T/N) drift(Y_{n-1}), Y_0 = x, for paths m = 1..M;
/// value = (1/M) ∑ payoff(Y^m_N).
inline EnsembleResult simulate_ensemble(const SDEProblem& problem, std::size_t N, std::size_t M,
                                        std::span<const double> x, const GaussianSampler& sampler,
                                        unsigned jobs = 1) {
  detail::check_ensemble(problem, N, M, x);
  const auto t0 = std::chrono::steady_clock::now();
  EnsembleResult r;
  const auto pay = detail::path_payoffs(problem, N, M, x, sampler, jobs, &r.terminal_states);
  double s = 0.0;
  for (double v : pay) s += v;
  r.value = s / static_cast<double>(M);
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Same functional without keeping terminal states, plus its standard error.
inline MCEstimate estimate_functional(const SDEProblem& problem, std::size_t N, std::size_t M,
                                      std::span<const double> x, const GaussianSampler& sampler, unsigned jobs = 1) {
  detail::check_ensemble(problem, N, M, x);
  const auto pay = detail::path_payoffs(problem, N, M, x, sampler, jobs, nullptr);
  double s = 0.0;
  for (double v : pay) s += v;
  const double mean = s / static_cast<double>(M);
  double ss = 0.0;
  for (double v : pay) ss += (v - mean) * (v - mean);
  const double var = M > 1 ? ss / static_cast<double>(M - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(M))};
}

}  // namespace netforge
