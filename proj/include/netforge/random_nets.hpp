#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "netforge/network.hpp"

namespace netforge {

/// Uniform double in [lo, hi) from the raw 64-bit stream.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

/// Net with the given dims and weights, biases uniform in [-scale, scale).
inline NeuralNet random_net(const Dims& dims, std::mt19937_64& rng, double scale = 1.0) {
  std::vector<Layer> ls;
  for (std::size_t k = 1; k < dims.size(); ++k) {
    Layer ly{Matrix(dims[k], dims[k - 1]), Vector(dims[k])};
    for (double& w : ly.weights.data()) w = uniform(rng, -scale, scale);
    for (double& b : ly.bias) b = uniform(rng, -scale, scale);
    ls.push_back(std::move(ly));
  }
  return NeuralNet(std::move(ls));
}

/// Dims (in, w_1, ..., w_{L-1}, out) with hidden widths in [1, max_width].
inline Dims random_dims(std::mt19937_64& rng, std::size_t in, std::size_t out, std::size_t depth,
                        std::size_t max_width) {
  Dims d{in};
  for (std::size_t k = 1; k < depth; ++k) d.push_back(uniform_int(rng, 1, max_width));
  d.push_back(out);
  return d;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  Vector v(n);
  for (double& x : v) x = uniform(rng, lo, hi);
  return v;
}

}  // namespace netforge
