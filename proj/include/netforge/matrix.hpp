#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netforge/errors.hpp"

namespace netforge {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw ShapeError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                       std::to_string(rows_ * cols_));
  }

  static Matrix identity(std::size_t n, double scale = 1.0) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Product a·b. Zero entries of a are skipped, which keeps products with
/// block-structured factors cheap.
inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matrix product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

inline Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size())
    throw ShapeError("matrix-vector product: " + std::to_string(a.cols()) + " columns, vector of length " +
                     std::to_string(x.size()));
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

}  // namespace netforge
