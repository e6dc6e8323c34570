#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace netforge {

/// E|μ + σZ| for Z ~ N(0,1), given σ² ≥ 0.
inline double gaussian_abs_mean(double mu, double sigma2) {
  if (sigma2 <= 0.0) return std::abs(mu);
  const double s = std::sqrt(sigma2);
  return s * std::sqrt(2.0 / std::numbers::pi) * std::exp(-mu * mu / (2.0 * sigma2)) +
         mu * std::erf(mu / (s * std::numbers::sqrt2));
}

enum class ProblemId { heat_abs, ou_abs };

inline ProblemId parse_problem_id(const std::string& id) {
  if (id == "heat_abs") return ProblemId::heat_abs;
  if (id == "ou_abs") return ProblemId::ou_abs;
  throw std::invalid_argument("unknown problem id \"" + id + "\"");
}

inline const char* to_string(ProblemId id) { return id == ProblemId::heat_abs ? "heat_abs" : "ou_abs"; }

/// u(T, x) = E[∑|X_T,i|] for the bundled problems (𝒜 = √2 I).
///   heat_abs: X_T,i ~ N(x_i, 2T)
///   ou_abs:   X_T,i ~ N(e^{-T} x_i, 1 - e^{-2T})
inline double reference_solution(ProblemId id, std::size_t d, double T, std::span<const double> x) {
  if (x.size() != d) throw std::invalid_argument("reference_solution: x must have length d");
  double s = 0.0;
  for (double xi : x) {
    if (id == ProblemId::heat_abs)
      s += gaussian_abs_mean(xi, 2.0 * T);
    else
      s += gaussian_abs_mean(std::exp(-T) * xi, -std::expm1(-2.0 * T));
  }
  return s;
}

inline double reference_solution(const std::string& id, std::size_t d, double T, std::span<const double> x) {
  return reference_solution(parse_problem_id(id), d, T, x);
}

}  // namespace netforge
