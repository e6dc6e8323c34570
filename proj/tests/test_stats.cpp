#include <gtest/gtest.h>

#include <cmath>

#include "netforge/stats.hpp"

using namespace netforge;

TEST(FitLine, ExactLine) {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const LinearFit f = fit_line(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.residual_norm, 0.0, 1e-13);
}

TEST(FitLine, ResidualOfSymmetricNoise) {
  // y = x ± 1 alternating around a centred design keeps slope 1
  const std::vector<double> x{-1, 0, 1}, y{-2, 1, 0};
  const LinearFit f = fit_line(x, y);
  EXPECT_NEAR(f.slope, 1.0, 1e-14);
  EXPECT_NEAR(f.intercept, -1.0 / 3.0, 1e-14);
  const double r0 = -2 - (-1 - 1.0 / 3.0), r1 = 1 - (-1.0 / 3.0), r2 = 0 - (1 - 1.0 / 3.0);
  EXPECT_NEAR(f.residual_norm, std::sqrt(r0 * r0 + r1 * r1 + r2 * r2), 1e-14);
}

TEST(FitLine, Errors) {
  const std::vector<double> one{1}, two{2, 2};
  EXPECT_THROW(fit_line(one, one), PreconditionError);
  EXPECT_THROW(fit_line(two, std::vector<double>{1, 3}), PreconditionError);
}

TEST(FitLogLog, PowerLaw) {
  std::vector<double> x, y;
  for (double m = 16; m <= 4096; m *= 2) {
    x.push_back(m);
    y.push_back(3.0 / std::sqrt(m));
  }
  const LinearFit f = fit_loglog(x, y);
  EXPECT_NEAR(f.slope, -0.5, 1e-13);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
}

TEST(UniformCube, ReproducibleAndInRange) {
  const auto a = uniform_cube_points(3, 500, 4), b = uniform_cube_points(3, 500, 4), c = uniform_cube_points(3, 500, 5);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  double mean = 0;
  for (const auto& p : a)
    for (double v : p) {
      EXPECT_GE(v, 0.0);
      EXPECT_LT(v, 1.0);
      mean += v;
    }
  EXPECT_NEAR(mean / 1500.0, 0.5, 0.03);
}

TEST(LpError, ConstantGap) {
  auto f = [](std::span<const double>) { return 1.25; };
  auto g = [](std::span<const double>) { return 1.0; };
  const LpError e = estimate_lp_error(f, g, 2, 2.0, 100, 1);
  EXPECT_NEAR(e.error, 0.25, 1e-15);
  EXPECT_EQ(e.stderr_, 0.0);
}

TEST(LpError, LinearFunctionL2Norm) {
  auto f = [](std::span<const double> x) { return x[0]; };
  auto z = [](std::span<const double>) { return 0.0; };
  const LpError e = estimate_lp_error(f, z, 1, 2.0, 200000, 3);
  EXPECT_NEAR(e.error, std::sqrt(1.0 / 3.0), 4 * e.stderr_);
  EXPECT_GT(e.stderr_, 0.0);
  const LpError l1 = estimate_lp_error(f, z, 1, 1.0, 200000, 3);
  EXPECT_NEAR(l1.error, 0.5, 4 * l1.stderr_);
}

TEST(LpError, ThreadCountDoesNotChangeResult) {
  auto f = [](std::span<const double> x) { return std::sin(x[0]) + x[1]; };
  auto g = [](std::span<const double> x) { return x[0]; };
  const LpError a = estimate_lp_error(f, g, 2, 2.0, 5000, 9, 1), b = estimate_lp_error(f, g, 2, 2.0, 5000, 9, 4);
  EXPECT_EQ(a.error, b.error);
  EXPECT_EQ(a.stderr_, b.stderr_);
}

TEST(LpError, Preconditions) {
  auto z = [](std::span<const double>) { return 0.0; };
  EXPECT_THROW(estimate_lp_error(z, z, 1, 2.0, 1, 0), PreconditionError);
  EXPECT_THROW(estimate_lp_error(z, z, 1, 0.5, 10, 0), PreconditionError);
}
