#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "netforge/errors.hpp"

namespace netforge {

/// Constants of the error and complexity estimates. `kappa` doubles as the
/// scheme constant 𝔠.
struct BoundParams {
  double kappa = 1.0;
  double theta = 1.0;
  double p = 2.0;
  double e = 0.0;
  double d0 = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0, d5 = 0.0, d6 = 0.0;
  double n0 = 0.5;
  double n1 = 0.0;
  double n2 = 2.0;

  void validate() const {
    auto need = [](bool ok, const char* what) {
      if (!ok) throw PreconditionError(std::string("BoundParams: ") + what);
    };
    need(kappa >= 1.0, "kappa >= 1");
    need(theta >= 1.0, "theta >= 1");
    need(p >= 2.0, "p >= 2");
    need(e >= 0.0, "e >= 0");
    for (double v : {d0, d1, d2, d3, d4, d5, d6}) need(v >= 0.0, "d0..d6 >= 0");
    need(n0 > 0.0, "n0 > 0");
    need(n1 >= 0.0 && n2 >= 0.0, "n1, n2 >= 0");
  }
};

struct GronwallBound {
  double geometric;    // αⁿx₀ + β ∑_{k<n} α^k
  double exponential;  // αⁿx₀ + β e^α
};

/// Bounds for x_k ≤ α x_{k-1} + β.
inline GronwallBound gronwall_bound(double alpha, double beta, double x0, std::size_t n) {
  if (n == 0) throw PreconditionError("gronwall_bound: n >= 1");
  if (alpha < 0.0 || beta < 0.0) throw PreconditionError("gronwall_bound: alpha, beta >= 0");
  const double an = std::pow(alpha, static_cast<double>(n));
  double partial = 0.0, ak = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    partial += ak;
    ak *= alpha;
  }
  return {an * x0 + beta * partial, an * x0 + beta * std::exp(alpha)};
}

/// α^N‖X₀‖ + e^α β (γ + sup‖Z‖).
inline double apriori_moment_bound(double alpha, double beta, double gamma, double x0_norm, double z_sup,
                                   std::size_t N) {
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0 || x0_norm < 0.0 || z_sup < 0.0)
    throw PreconditionError("apriori_moment_bound: inputs must be nonnegative");
  if (N == 0) throw PreconditionError("apriori_moment_bound: N >= 1");
  return std::pow(alpha, static_cast<double>(N)) * x0_norm + std::exp(alpha) * beta * (gamma + z_sup);
}

/// Weak error of the Euler scheme with step h on [0, T].
inline double euler_weak_bound(double L0, double L1, double l, double T, double h, double trace_BtB,
                               double xi_norm, double f1_at_0_norm) {
  if (!(h > 0.0) || h > T) throw PreconditionError("euler_weak_bound: h must lie in (0, T]");
  const double expo = l + 3.0 + 2.0 * L1 + (l * L1 + 2.0 * L1 + 2.0) * T;
  const double bracket = xi_norm + 2.0 + std::max(1.0, f1_at_0_norm) * std::max(1.0, T) +
                         std::sqrt((2.0 * std::max(l, 1.0) - 1.0) * trace_BtB * T);
  return std::sqrt(h / T) * std::exp(expo) * std::max(1.0, L0) * std::pow(bracket, 1.0 + l);
}

/// Monte Carlo error with M samples.
inline double mc_error_bound(const BoundParams& bp, double d, double T, double M) {
  if (M < 1.0) throw PreconditionError("mc_error_bound: M >= 1");
  const double k = bp.kappa, th = bp.theta, p = bp.p;
  return std::pow(2.0, th + 2.0) * p * k * std::pow(p * th + p + 1.0, th) * std::pow(k * T + 1.0, th) *
         std::exp(k * th * T) * (std::pow(k, th) + 1.0) * std::pow(d, bp.d0 + bp.d1 * th) / std::sqrt(M);
}

/// Prefactor of combined_weak_bound, i.e. its value divided by √(h/T) + M^{-1/2}.
inline double combined_weak_constant(const BoundParams& bp, double d, double T) {
  const double th = bp.theta, p = bp.p;
  const double iota = std::max({bp.kappa, th, 1.0});
  return std::pow(2.0, 4.0 * th + 5.0) * std::pow(std::max(1.0, T), th + 1.0) * std::pow(iota, 2.0 * th + 3.0) *
         std::exp(6.0 * iota + 5.0 * iota * iota * T) * p * std::pow(p * th + p + 1.0, th) *
         std::pow(d, bp.d0 + bp.d1 * (th + 1.0));
}

/// Discretization plus Monte Carlo error.
inline double combined_weak_bound(const BoundParams& bp, double d, double T, double h, double M) {
  if (!(h > 0.0) || h > T) throw PreconditionError("combined_weak_bound: h must lie in (0, T]");
  if (M < 1.0) throw PreconditionError("combined_weak_bound: M >= 1");
  return combined_weak_constant(bp, d, T) * (std::sqrt(h / T) + 1.0 / std::sqrt(M));
}

/// L^{2pθ} bound on the Euler iterates, 2e^{κ+1}κ²(‖x‖ + d^{𝔡₁+𝔡₂}).
inline double euler_moment_bound(const BoundParams& bp, double d, double x_norm) {
  const double k = bp.kappa;
  return 2.0 * std::exp(k + 1.0) * k * k * (x_norm + std::pow(d, bp.d1 + bp.d2));
}

}  // namespace netforge
