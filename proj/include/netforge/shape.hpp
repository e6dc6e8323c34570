#pragma once

// Shape-only mirrors of the combinators. They compute 𝒟 of a construction
// without allocating weights, for nets too large to materialize.

#include <cstddef>
#include <vector>

#include "netforge/calculus.hpp"
#include "netforge/errors.hpp"
#include "netforge/network.hpp"

namespace netforge::shape {

inline void check(const Dims& d) {
  if (d.size() < 2) throw ShapeError("dims need at least two entries");
}

inline Dims compose(const Dims& outer, const Dims& inner) {
  check(outer);
  check(inner);
  if (outer.front() != inner.back()) throw ShapeError("compose: " + detail::dims_str(outer) + " after " +
                                                      detail::dims_str(inner));
  Dims r(inner.begin(), inner.end() - 1);
  r.insert(r.end(), outer.begin() + 1, outer.end());
  return r;
}

inline Dims parallelize(const std::vector<Dims>& parts) {
  if (parts.empty()) throw PreconditionError("parallelize: empty list");
  Dims r(parts.front().size(), 0);
  for (const auto& p : parts) {
    if (p.size() != r.size()) throw PreconditionError("parallelize: depths differ");
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += p[k];
  }
  return r;
}

/// ⊕ of n nets sharing dims `d`.
inline Dims same_length_sum(const Dims& d, std::size_t n) {
  check(d);
  Dims r(d);
  for (std::size_t k = 1; k + 1 < r.size(); ++k) r[k] *= n;
  return r;
}

inline Dims weighted_block_sum(const Dims& d, std::size_t n) {
  Dims r = same_length_sum(d, n);
  r.front() *= n;
  return r;
}

/// 𝒟 of skip_compose(Φ1, Φ2, idnet) with idnet hidden width i.
inline Dims skip_compose(const Dims& phi1, const Dims& phi2, std::size_t i) {
  check(phi1);
  check(phi2);
  if (phi1.size() == 2) return phi2;
  Dims r(phi2.begin(), phi2.end() - 1);
  for (std::size_t k = 1; k + 1 < phi1.size(); ++k) r.push_back(phi1[k] + i);
  r.push_back(phi1.back());
  return r;
}

inline Dims compose_via_identity(const Dims& outer, const Dims& inner, std::size_t i) {
  const std::size_t d = inner.back();
  return compose(compose(outer, Dims{d, i, d}), inner);
}

/// 𝒟 of the N-step path net for a drift net of dims `drift`, computed in O(N·L).
inline Dims path(const Dims& drift, std::size_t d, std::size_t N) {
  check(drift);
  Dims r{d, 2 * d};
  if (drift.size() > 2)
    for (std::size_t n = 0; n < N; ++n)
      for (std::size_t k = 1; k + 1 < drift.size(); ++k) r.push_back(drift[k] + 2 * d);
  r.push_back(d);
  return r;
}

/// 𝒟 of Ψ: M path nets pushed through the payoff and averaged by ⊕.
inline Dims solution(const Dims& payoff, const Dims& drift, std::size_t d, std::size_t N, std::size_t M) {
  return same_length_sum(compose_via_identity(payoff, path(drift, d, N), 2 * d), M);
}

}  // namespace netforge::shape
