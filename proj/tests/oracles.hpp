#pragma once

// Straight-line reference computations used as test oracles. They avoid the
// library's own code paths so that agreement means something.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "netforge/network.hpp"

namespace oracle {

/// Two-loop forward pass: relu on every layer but the last.
inline std::vector<double> forward(const netforge::NeuralNet& net, std::vector<double> x, bool relu = true) {
  const auto& ls = net.layers();
  for (std::size_t k = 0; k < ls.size(); ++k) {
    const auto& w = ls[k].weights;
    std::vector<double> y(w.rows());
    for (std::size_t i = 0; i < w.rows(); ++i) {
      double s = ls[k].bias[i];
      for (std::size_t j = 0; j < w.cols(); ++j) s += w(i, j) * x[j];
      if (relu && k + 1 < ls.size()) s = s < 0.0 ? 0.0 : s;
      y[i] = s;
    }
    x = y;
  }
  return x;
}

/// E|μ + σZ| by composite Simpson on [−12, 12] in z, split at the kink z = −μ/σ.
inline double abs_mean_quadrature(double mu, double sigma, int intervals = 40000) {
  auto f = [&](double z) { return std::abs(mu + sigma * z) * std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); };
  auto simpson = [&](double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
  };
  const double lo = -12.0, hi = 12.0, k = -mu / sigma;
  if (k <= lo || k >= hi) return simpson(lo, hi, intervals);
  const int n1 = 2 * std::max(1, static_cast<int>(intervals * (k - lo) / (hi - lo) / 2));
  const int n2 = 2 * std::max(1, static_cast<int>(intervals * (hi - k) / (hi - lo) / 2));
  return simpson(lo, k, n1) + simpson(k, hi, n2);
}

inline double ipow(double b, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}

inline bool rel_close(double a, double b, double rtol) { return std::abs(a - b) <= rtol * std::max(std::abs(a), std::abs(b)); }

}  // namespace oracle
