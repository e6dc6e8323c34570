#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "netforge/errors.hpp"
#include "netforge/matrix.hpp"
#include "netforge/network.hpp"

namespace netforge {

namespace detail {

inline std::string dims_str(const Dims& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

inline Vector affine_bias(const Matrix& w, const Vector& b, const Vector& c) {
  Vector r = w * b;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += c[i];
  return r;
}

}  // namespace detail

/// outer ∘ inner.
///
/// The last layer of `inner` and the first of `outer` merge into
/// (W1 𝒲_L, W1 ℬ_L + B1); the remaining layers are kept. Which of the two
/// sides contribute extra layers is decided by their depths.
inline NeuralNet compose(NeuralNet outer, NeuralNet inner) {
  if (outer.input_dim() != inner.output_dim())
    throw ShapeError("compose: outer expects " + std::to_string(outer.input_dim()) + " inputs, inner produces " +
                     std::to_string(inner.output_dim()));
  const bool outer_deep = outer.depth() > 1;
  const bool inner_deep = inner.depth() > 1;
  std::vector<Layer> lo = std::move(outer).release();
  std::vector<Layer> li = std::move(inner).release();

  Layer& first = lo.front();
  Layer& last = li.back();
  Layer merged{first.weights * last.weights, detail::affine_bias(first.weights, last.bias, first.bias)};

  std::vector<Layer> out;
  if (!outer_deep && !inner_deep) {
    out.push_back(std::move(merged));
  } else if (!outer_deep) {
    li.back() = std::move(merged);
    out = std::move(li);
  } else if (!inner_deep) {
    lo.front() = std::move(merged);
    out = std::move(lo);
  } else {
    out.reserve(li.size() + lo.size() - 1);
    for (std::size_t k = 0; k + 1 < li.size(); ++k) out.push_back(std::move(li[k]));
    out.push_back(std::move(merged));
    for (std::size_t k = 1; k < lo.size(); ++k) out.push_back(std::move(lo[k]));
  }
  return NeuralNet(std::move(out));
}

/// Block-diagonal stacking of equal-depth nets acting on concatenated inputs.
inline NeuralNet parallelize(const std::vector<NeuralNet>& nets) {
  if (nets.empty()) throw PreconditionError("parallelize: empty list");
  const std::size_t L = nets.front().depth();
  for (const auto& n : nets)
    if (n.depth() != L)
      throw PreconditionError("parallelize: depths differ (" + std::to_string(L) + " vs " +
                              std::to_string(n.depth()) + ")");
  if (nets.size() == 1) return nets.front();

  std::vector<Layer> out;
  out.reserve(L);
  for (std::size_t k = 0; k < L; ++k) {
    std::size_t rows = 0, cols = 0;
    for (const auto& n : nets) {
      rows += n.layer(k).weights.rows();
      cols += n.layer(k).weights.cols();
    }
    Layer ly{Matrix(rows, cols), Vector(rows)};
    std::size_t r0 = 0, c0 = 0;
    for (const auto& n : nets) {
      const Layer& src = n.layer(k);
      for (std::size_t i = 0; i < src.weights.rows(); ++i) {
        auto s = src.weights.row(i);
        std::copy(s.begin(), s.end(), ly.weights.row(r0 + i).begin() + static_cast<std::ptrdiff_t>(c0));
        ly.bias[r0 + i] = src.bias[i];
      }
      r0 += src.weights.rows();
      c0 += src.weights.cols();
    }
    out.push_back(std::move(ly));
  }
  return NeuralNet(std::move(out));
}

/// 𝔅_B: x ↦ x + B.
inline NeuralNet bias_net(Vector b) {
  if (b.empty()) throw PreconditionError("bias_net: empty bias");
  const std::size_t n = b.size();
  std::vector<Layer> ls;
  ls.push_back(Layer{Matrix::identity(n), std::move(b)});
  return NeuralNet(std::move(ls));
}

/// 𝔚_W: x ↦ W x.
inline NeuralNet matrix_net(Matrix w) {
  if (w.rows() == 0 || w.cols() == 0) throw PreconditionError("matrix_net: empty matrix");
  const std::size_t m = w.rows();
  std::vector<Layer> ls;
  ls.push_back(Layer{std::move(w), Vector(m, 0.0)});
  return NeuralNet(std::move(ls));
}

/// λ ⊛ Φ = 𝔚_{λI} ∘ Φ. λ = 0 still goes through the composition.
inline NeuralNet scalar_mul(double lambda, NeuralNet net) {
  const std::size_t o = net.output_dim();
  return compose(matrix_net(Matrix::identity(o, lambda)), std::move(net));
}

/// 𝔦_d: two relu units per coordinate, x = a(x) − a(−x).
inline NeuralNet relu_identity(std::size_t d) {
  if (d == 0) throw PreconditionError("relu_identity: d must be positive");
  Matrix w1(2 * d, d), w2(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    w1(2 * i, i) = 1.0;
    w1(2 * i + 1, i) = -1.0;
    w2(i, 2 * i) = 1.0;
    w2(i, 2 * i + 1) = -1.0;
  }
  std::vector<Layer> ls;
  ls.push_back(Layer{std::move(w1), Vector(2 * d, 0.0)});
  ls.push_back(Layer{std::move(w2), Vector(d, 0.0)});
  return NeuralNet(std::move(ls));
}

/// 𝔖_{m,n}: sums n stacked m-blocks.
inline NeuralNet sum_fanin(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw PreconditionError("sum_fanin: m and n must be positive");
  Matrix w(m, n * m);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t i = 0; i < m; ++i) w(i, b * m + i) = 1.0;
  return matrix_net(std::move(w));
}

/// 𝔗_{m,n}: replicates x ∈ ℝ^m n times.
inline NeuralNet fanout(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw PreconditionError("fanout: m and n must be positive");
  Matrix w(n * m, m);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t i = 0; i < m; ++i) w(b * m + i, i) = 1.0;
  return matrix_net(std::move(w));
}

/// ⊕ Φ_k = 𝔖 ∘ P_n(Φ_1, ..., Φ_n) ∘ 𝔗.
inline NeuralNet same_length_sum(const std::vector<NeuralNet>& nets) {
  if (nets.empty()) throw PreconditionError("same_length_sum: empty list");
  const auto& f = nets.front();
  for (const auto& n : nets)
    if (n.depth() != f.depth() || n.input_dim() != f.input_dim() || n.output_dim() != f.output_dim())
      throw PreconditionError("same_length_sum: nets differ in depth, input or output dimension");
  const std::size_t n = nets.size();
  return compose(sum_fanin(f.output_dim(), n), compose(parallelize(nets), fanout(f.input_dim(), n)));
}

/// Ψ(x_1, ..., x_n) = ∑ h_k Φ_k(x_k), built as ⊕_k h_k ⊛ (Φ_k ∘ 𝔚_{A_k}).
inline NeuralNet weighted_block_sum(const std::vector<double>& h, const std::vector<NeuralNet>& nets) {
  if (nets.empty()) throw PreconditionError("weighted_block_sum: empty list");
  if (h.size() != nets.size())
    throw PreconditionError("weighted_block_sum: " + std::to_string(h.size()) + " weights for " +
                            std::to_string(nets.size()) + " nets");
  const Dims d0 = nets.front().dims();
  for (const auto& n : nets)
    if (n.dims() != d0)
      throw PreconditionError("weighted_block_sum: dims " + detail::dims_str(n.dims()) + " differ from " +
                              detail::dims_str(d0));
  const std::size_t n = nets.size(), in = d0.front();
  std::vector<NeuralNet> terms;
  terms.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Matrix sel(in, n * in);
    for (std::size_t i = 0; i < in; ++i) sel(i, k * in + i) = 1.0;
    terms.push_back(scalar_mul(h[k], compose(nets[k], matrix_net(std::move(sel)))));
  }
  return same_length_sum(terms);
}

/// Which precondition of skip_compose failed.
enum class SkipViolation {
  identity_depth,         // idnet must have dims (d, i, d)
  identity_width,         // 2 <= i <= 2d
  identity_realization,   // idnet must realize the identity
  phi1_dims,              // I(Φ1) = O(Φ1) = d
  phi2_dims,              // I(Φ2) = O(Φ2) = d
  hidden_width,           // l_{2,L2-1} <= l_{1,L1-1} + i
};

inline const char* to_string(SkipViolation v) {
  switch (v) {
    case SkipViolation::identity_depth: return "D(idnet) = (d, i, d)";
    case SkipViolation::identity_width: return "2 <= i <= 2d";
    case SkipViolation::identity_realization: return "R(idnet) = id";
    case SkipViolation::phi1_dims: return "I(Phi1) = O(Phi1) = d";
    case SkipViolation::phi2_dims: return "I(Phi2) = O(Phi2) = d";
    case SkipViolation::hidden_width: return "l_{2,L2-1} <= l_{1,L1-1} + i";
  }
  return "?";
}

class SkipComposeError : public PreconditionError {
 public:
  SkipComposeError(SkipViolation v, const std::string& detail)
      : PreconditionError(std::string("skip_compose: ") + to_string(v) + " violated: " + detail), which_(v) {}
  SkipViolation which() const noexcept { return which_; }

 private:
  SkipViolation which_;
};

namespace detail {

// Probes idnet at a handful of deterministic points.
inline bool realizes_identity(const NeuralNet& id, const Activation& act) {
  const std::size_t d = id.input_dim();
  std::vector<Vector> probes;
  for (std::size_t i = 0; i < d; ++i) {
    Vector e(d, 0.0);
    e[i] = 1.0;
    probes.push_back(e);
    e[i] = -2.5;
    probes.push_back(e);
  }
  Vector mix(d);
  for (std::size_t i = 0; i < d; ++i) mix[i] = (i % 2 ? -1.0 : 1.0) * (0.75 + 0.5 * static_cast<double>(i));
  probes.push_back(mix);
  for (const auto& x : probes) {
    Vector y = id.realize(act, x);
    for (std::size_t i = 0; i < d; ++i)
      if (std::abs(y[i] - x[i]) > 1e-12 * (1.0 + std::abs(x[i]))) return false;
  }
  return true;
}

inline void check_skip(const NeuralNet& phi1, const NeuralNet& phi2, const NeuralNet& id, const Activation& act) {
  if (id.depth() != 2 || id.input_dim() != id.output_dim())
    throw SkipComposeError(SkipViolation::identity_depth, "got " + dims_str(id.dims()));
  const std::size_t d = id.input_dim(), i = id.dim_at(1);
  if (i < 2 || i > 2 * d)
    throw SkipComposeError(SkipViolation::identity_width, "i = " + std::to_string(i) + ", d = " + std::to_string(d));
  if (phi1.input_dim() != d || phi1.output_dim() != d)
    throw SkipComposeError(SkipViolation::phi1_dims, "Phi1 dims " + dims_str(phi1.dims()) + ", d = " +
                                                         std::to_string(d));
  if (phi2.input_dim() != d || phi2.output_dim() != d)
    throw SkipComposeError(SkipViolation::phi2_dims, "Phi2 dims " + dims_str(phi2.dims()) + ", d = " +
                                                         std::to_string(d));
  if (phi1.depth() >= 2) {
    const std::size_t l2 = phi2.dim_at(phi2.depth() - 1), l1 = phi1.dim_at(phi1.depth() - 1);
    if (l2 > l1 + i)
      throw SkipComposeError(SkipViolation::hidden_width, std::to_string(l2) + " > " + std::to_string(l1) + " + " +
                                                              std::to_string(i));
  }
  if (!realizes_identity(id, act))
    throw SkipComposeError(SkipViolation::identity_realization, "probe points are not reproduced");
}

inline Matrix stack_rows(const Matrix& top, const Matrix& bottom) {
  Matrix r(top.rows() + bottom.rows(), top.cols());
  std::copy(top.data().begin(), top.data().end(), r.data().begin());
  std::copy(bottom.data().begin(), bottom.data().end(),
            r.data().begin() + static_cast<std::ptrdiff_t>(top.size()));
  return r;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

inline Matrix concat_cols(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

inline Vector concat(const Vector& a, const Vector& b) {
  Vector r(a);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace detail

/// Ψ(x) = Φ2(x) + Φ1(Φ2(x)).
///
/// Depth-1 Φ1 = (W, b) folds into Φ2's last layer as ((I+W)V, (I+W)c + b).
/// Otherwise Φ1's layers are appended to Φ2 and widened by the hidden units
/// of idnet = ((A1, a1), (A2, a2)), which carry Φ2(x) to the output:
///   junction [W1 V; A1 V], [W1 c + b1; A1 c + a1]
///   middle   diag(W_k, A1 A2), [b_k; A1 a2 + a1]
///   last     [W_L A2], b_L + a2
inline NeuralNet skip_compose(NeuralNet phi1, NeuralNet phi2, const NeuralNet& idnet,
                              const Activation& act = Activation::relu()) {
  detail::check_skip(phi1, phi2, idnet, act);
  const std::size_t d = idnet.input_dim();
  const std::size_t L1 = phi1.depth();

  std::vector<Layer> l1 = std::move(phi1).release();
  std::vector<Layer> l2 = std::move(phi2).release();
  Layer tail = std::move(l2.back());
  l2.pop_back();

  if (L1 == 1) {
    Matrix iw = l1[0].weights;
    for (std::size_t i = 0; i < d; ++i) iw(i, i) += 1.0;
    l2.push_back(Layer{iw * tail.weights, detail::affine_bias(iw, tail.bias, l1[0].bias)});
    return NeuralNet(std::move(l2));
  }

  const Layer& A1 = idnet.layer(0);
  const Layer& A2 = idnet.layer(1);

  l2.push_back(Layer{detail::stack_rows(l1[0].weights * tail.weights, A1.weights * tail.weights),
                     detail::concat(detail::affine_bias(l1[0].weights, tail.bias, l1[0].bias),
                                    detail::affine_bias(A1.weights, tail.bias, A1.bias))});
  const Matrix carry = A1.weights * A2.weights;
  const Vector carry_bias = detail::affine_bias(A1.weights, A2.bias, A1.bias);
  for (std::size_t k = 1; k + 1 < L1; ++k)
    l2.push_back(Layer{detail::block_diag(l1[k].weights, carry), detail::concat(l1[k].bias, carry_bias)});
  Vector out_bias = l1[L1 - 1].bias;
  for (std::size_t i = 0; i < d; ++i) out_bias[i] += A2.bias[i];
  l2.push_back(Layer{detail::concat_cols(l1[L1 - 1].weights, A2.weights), std::move(out_bias)});
  return NeuralNet(std::move(l2));
}

/// outer ∘ idnet ∘ inner, the depth-aligning composition used at the payoff stage.
inline NeuralNet compose_via_identity(NeuralNet outer, NeuralNet inner, const NeuralNet& idnet) {
  if (idnet.input_dim() != idnet.output_dim())
    throw PreconditionError("compose_via_identity: idnet is not square");
  const std::size_t d = idnet.input_dim();
  if (inner.output_dim() != d || outer.input_dim() != d)
    throw PreconditionError("compose_via_identity: inner output " + std::to_string(inner.output_dim()) +
                            ", idnet " + std::to_string(d) + ", outer input " + std::to_string(outer.input_dim()));
  return compose(compose(std::move(outer), idnet), std::move(inner));
}

}  // namespace netforge
