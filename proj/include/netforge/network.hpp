#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netforge/errors.hpp"
#include "netforge/matrix.hpp"

namespace netforge {

/// Affine layer x -> W x + b.
struct Layer {
  Matrix weights;
  Vector bias;

  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Layer widths (l_0, l_1, ..., l_L).
using Dims = std::vector<std::size_t>;

/// Scalar activation applied componentwise on hidden layers.
class Activation {
 public:
  enum class Kind { relu, identity, custom };

  static Activation relu() { return Activation(Kind::relu, {}, "relu"); }
  static Activation identity() { return Activation(Kind::identity, {}, "identity"); }
  static Activation custom(std::function<double(double)> fn, std::string name = "custom") {
    if (!fn) throw PreconditionError("custom activation needs a callable");
    return Activation(Kind::custom, std::move(fn), std::move(name));
  }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  double operator()(double x) const {
    switch (kind_) {
      case Kind::relu: return x > 0.0 ? x : 0.0;
      case Kind::identity: return x;
      case Kind::custom: return fn_(x);
    }
    return x;
  }

  void apply(std::span<double> v) const {
    switch (kind_) {
      case Kind::relu:
        for (double& x : v) x = x > 0.0 ? x : 0.0;
        return;
      case Kind::identity: return;
      case Kind::custom:
        for (double& x : v) x = fn_(x);
        return;
    }
  }

 private:
  Activation(Kind k, std::function<double(double)> fn, std::string name)
      : kind_(k), fn_(std::move(fn)), name_(std::move(name)) {}

  Kind kind_;
  std::function<double(double)> fn_;
  std::string name_;
};

/// Feedforward network as an immutable list of affine layers.
///
/// Each layer also records, per row, the half-open column range outside of
/// which the row is exactly zero. The forward pass only visits that range, so
/// block-diagonal nets cost roughly their number of nonzero blocks.
class NeuralNet {
 public:
  explicit NeuralNet(std::vector<Layer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw ShapeError("network needs at least one layer");
    for (std::size_t k = 0; k < layers_.size(); ++k) {
      const Layer& ly = layers_[k];
      if (ly.weights.rows() == 0 || ly.weights.cols() == 0)
        throw ShapeError("layer " + std::to_string(k + 1) + " has an empty weight matrix");
      if (ly.bias.size() != ly.weights.rows())
        throw ShapeError("layer " + std::to_string(k + 1) + ": bias length " + std::to_string(ly.bias.size()) +
                         " != rows " + std::to_string(ly.weights.rows()));
      if (k > 0 && ly.weights.cols() != layers_[k - 1].weights.rows())
        throw ShapeError("layer " + std::to_string(k + 1) + " expects " + std::to_string(ly.weights.cols()) +
                         " inputs but layer " + std::to_string(k) + " produces " +
                         std::to_string(layers_[k - 1].weights.rows()));
    }
    index_rows();
  }

  const std::vector<Layer>& layers() const noexcept { return layers_; }
  const Layer& layer(std::size_t k) const { return layers_.at(k); }

  std::size_t depth() const noexcept { return layers_.size(); }
  std::size_t input_dim() const noexcept { return layers_.front().weights.cols(); }
  std::size_t output_dim() const noexcept { return layers_.back().weights.rows(); }
  std::size_t hidden_count() const noexcept { return layers_.size() - 1; }

  Dims dims() const {
    Dims d;
    d.reserve(layers_.size() + 1);
    d.push_back(input_dim());
    for (const auto& ly : layers_) d.push_back(ly.weights.rows());
    return d;
  }

  /// l_n for n <= L, zero beyond the output layer.
  std::size_t dim_at(std::size_t n) const noexcept {
    if (n == 0) return input_dim();
    if (n > layers_.size()) return 0;
    return layers_[n - 1].weights.rows();
  }

  std::size_t param_count() const noexcept {
    std::size_t p = 0;
    for (const auto& ly : layers_) p += ly.weights.size() + ly.bias.size();
    return p;
  }

  Vector realize(const Activation& act, std::span<const double> x) const {
    Vector cur, next;
    realize_into(act, x, cur, next);
    return cur;
  }

  /// Forward pass with caller-owned scratch buffers; the result lands in `out`.
  void realize_into(const Activation& act, std::span<const double> x, Vector& out, Vector& scratch) const {
    if (x.size() != input_dim())
      throw ShapeError("input of length " + std::to_string(x.size()) + ", network expects " +
                       std::to_string(input_dim()));
    out.assign(x.begin(), x.end());
    for (std::size_t k = 0; k < layers_.size(); ++k) {
      const Layer& ly = layers_[k];
      const auto& spans = spans_[k];
      scratch.resize(ly.weights.rows());
      for (std::size_t i = 0; i < ly.weights.rows(); ++i) {
        const double* w = ly.weights.row(i).data();
        double s = 0.0;
        for (std::size_t j = spans[i].first; j < spans[i].second; ++j) s += w[j] * out[j];
        scratch[i] = s + ly.bias[i];
      }
      if (k + 1 < layers_.size()) act.apply(scratch);
      out.swap(scratch);
    }
  }

  /// Hands the layers over to a combinator; the net is left empty.
  std::vector<Layer> release() && {
    spans_.clear();
    return std::move(layers_);
  }

  friend bool operator==(const NeuralNet& a, const NeuralNet& b) { return a.layers_ == b.layers_; }

 private:
  void index_rows() {
    spans_.resize(layers_.size());
    for (std::size_t k = 0; k < layers_.size(); ++k) {
      const Matrix& w = layers_[k].weights;
      auto& sp = spans_[k];
      sp.resize(w.rows());
      for (std::size_t i = 0; i < w.rows(); ++i) {
        auto r = w.row(i);
        std::size_t b = 0, e = r.size();
        while (b < e && r[b] == 0.0) ++b;
        while (e > b && r[e - 1] == 0.0) --e;
        sp[i] = {b, e};
      }
    }
  }

  std::vector<Layer> layers_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> spans_;
};

/// Accessor bundle for one network.
struct Structure {
  std::size_t depth;
  std::size_t input_dim;
  std::size_t output_dim;
  std::size_t hidden_count;
  Dims dims;
};

inline Structure structure(const NeuralNet& net) {
  return {net.depth(), net.input_dim(), net.output_dim(), net.hidden_count(), net.dims()};
}

inline std::size_t param_count(const NeuralNet& net) { return net.param_count(); }

/// ∑ l_k (l_{k-1} + 1) computed from a dims tuple. Returned as double so that
/// planned networks far beyond memory can still be counted.
inline double param_count(const Dims& dims) {
  if (dims.size() < 2) throw ShapeError("dims need at least two entries");
  double p = 0.0;
  for (std::size_t k = 1; k < dims.size(); ++k)
    p += static_cast<double>(dims[k]) * (static_cast<double>(dims[k - 1]) + 1.0);
  return p;
}

inline Vector realize(const NeuralNet& net, const Activation& act, std::span<const double> x) {
  return net.realize(act, x);
}

}  // namespace netforge
