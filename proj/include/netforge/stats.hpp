#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "netforge/detail/parallel.hpp"
#include "netforge/errors.hpp"
#include "netforge/matrix.hpp"

namespace netforge {

/// Least-squares line y ≈ intercept + slope·x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0;  // ‖y − ŷ‖₂
};

inline LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("fit_line: need two or more paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw PreconditionError("fit_line: abscissae are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    rr += r * r;
  }
  f.residual_norm = std::sqrt(rr);
  return f;
}

/// Slope of log y against log x.
inline LinearFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return fit_line(lx, ly);
}

/// Q points drawn uniformly from [0,1]^d, reproducible from the seed.
inline std::vector<Vector> uniform_cube_points(std::size_t d, std::size_t Q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> pts(Q, Vector(d));
  for (auto& p : pts)
    for (double& v : p) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return pts;
}

struct LpError {
  double error = 0.0;
  double stderr_ = 0.0;
};

/// (∫ |f − g|^p dν)^{1/p} over ν = uniform on [0,1]^d, by Monte Carlo with Q
/// points. The standard error is propagated through t ↦ t^{1/p}.
inline LpError estimate_lp_error(const std::function<double(std::span<const double>)>& approx,
                                 const std::function<double(std::span<const double>)>& exact, std::size_t d, double p,
                                 std::size_t Q, std::uint64_t seed, unsigned jobs = 1) {
  if (Q < 2) throw PreconditionError("estimate_lp_error: Q >= 2");
  if (!(p >= 1.0)) throw PreconditionError("estimate_lp_error: p >= 1");
  const auto pts = uniform_cube_points(d, Q, seed);
  std::vector<double> v(Q);
  detail::parallel_chunks(Q, jobs, [&](std::size_t b, std::size_t e) {
    for (std::size_t q = b; q < e; ++q) v[q] = std::pow(std::abs(approx(pts[q]) - exact(pts[q])), p);
  });
  double s = 0.0;
  for (double x : v) s += x;
  const double mean = s / static_cast<double>(Q);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double se_mean = std::sqrt(ss / static_cast<double>(Q - 1) / static_cast<double>(Q));
  LpError r;
  r.error = std::pow(mean, 1.0 / p);
  r.stderr_ = mean > 0.0 ? r.error / (p * mean) * se_mean : 0.0;
  return r;
}

}  // namespace netforge
