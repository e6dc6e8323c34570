#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace netforge {

/// Counter-based N(0,1) source. The variate for (m, n, i) depends only on the
/// seed and those indices, never on call order.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Standard normal for path m, step n, coordinate i (Box-Muller, cosine branch).
  double normal(std::uint64_t m, std::uint64_t n, std::uint64_t i) const noexcept {
    std::uint64_t h = mix(seed_ ^ 0x6a09e667f3bcc909ULL);
    h = mix(h ^ m);
    h = mix(h ^ (n + 0x3c6ef372fe94f82bULL));
    h = mix(h ^ (i + 0xa54ff53a5f1d36f1ULL));
    const double u1 = unit(mix(h ^ 0x510e527fade682d1ULL));
    const double u2 = unit(mix(h ^ 0x9b05688c2b3e6c1fULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // 53 random bits mapped into (0, 1]
  static double unit(std::uint64_t z) noexcept {
    return (static_cast<double>(z >> 11) + 1.0) * 0x1.0p-53;
  }

  std::uint64_t seed_;
};

}  // namespace netforge
