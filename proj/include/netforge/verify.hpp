#pragma once

// Randomized self-checks of the network calculus, run by `netforge verify-calculus`.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "netforge/calculus.hpp"
#include "netforge/random_nets.hpp"
#include "netforge/serialize.hpp"

namespace netforge::verify {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first failure
};

struct Options {
  std::uint64_t seed = 1;
  std::size_t instances = 50;
  bool inject_fault = false;  // corrupt every constructed net (negative control)
};

namespace detail {

constexpr double rtol = 1e-10;

inline bool close(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(std::abs(a[i] - b[i]) <= rtol * std::max(1.0, std::abs(b[i])))) return false;
  return true;
}

class Runner {
 public:
  explicit Runner(const Options& o) : opt_(o), rng_(o.seed) {}

  NeuralNet emit(NeuralNet n) const {
    if (!opt_.inject_fault) return n;
    std::vector<Layer> ls = std::move(n).release();
    ls.back().weights(0, 0) += 0.5;
    return NeuralNet(std::move(ls));
  }

  void suite(const std::string& name, const std::function<bool(std::string&)>& one) {
    SuiteResult r{name, true, 0, {}};
    for (std::size_t i = 0; i < opt_.instances; ++i) {
      std::string why;
      ++r.cases;
      bool ok = false;
      try {
        ok = one(why);
      } catch (const std::exception& e) {
        why = std::string("exception: ") + e.what();
      }
      if (!ok) {
        r.passed = false;
        r.detail = why.empty() ? "case " + std::to_string(i) : why;
        break;
      }
    }
    results_.push_back(std::move(r));
  }

  std::mt19937_64& rng() { return rng_; }
  std::vector<SuiteResult> take() { return std::move(results_); }

 private:
  Options opt_;
  std::mt19937_64 rng_;
  std::vector<SuiteResult> results_;
};

inline Vector add(Vector a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vector slice(const Vector& v, std::size_t b, std::size_t n) {
  return Vector(v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(b + n));
}

}  // namespace detail

inline std::vector<SuiteResult> run_calculus_suites(const Options& opt = {}) {
  using detail::close;
  detail::Runner R(opt);
  auto& rng = R.rng();
  const Activation relu = Activation::relu();
  auto rdims = [&](std::size_t in, std::size_t out) {
    return random_dims(rng, in, out, uniform_int(rng, 1, 4), 8);
  };
  auto rnet = [&](std::size_t in, std::size_t out) { return random_net(rdims(in, out), rng); };

  R.suite("P(𝔦_d)=4d²+3d", [&](std::string& why) {
    for (std::size_t d = 1; d <= 50; ++d) {
      const auto p = R.emit(relu_identity(d)).param_count();
      if (p != 4 * d * d + 3 * d) {
        why = "d = " + std::to_string(d) + ": " + std::to_string(p);
        return false;
      }
    }
    return true;
  });

  R.suite("R(𝔦_d)=id bit-exact", [&](std::string&) {
    const std::size_t d = uniform_int(rng, 1, 8);
    const NeuralNet id = R.emit(relu_identity(d));
    for (int k = 0; k < 10; ++k) {
      const Vector x = random_vector(rng, d, -10.0, 10.0);
      if (id.realize(relu, x) != x) return false;
    }
    return true;
  });

  R.suite("D(𝔦_d)=(d,2d,d)", [&](std::string&) {
    const std::size_t d = uniform_int(rng, 1, 50);
    return R.emit(relu_identity(d)).dims() == Dims{d, 2 * d, d};
  });

  R.suite("R(Φ1∘Φ2)=R(Φ1)∘R(Φ2)", [&](std::string&) {
    const std::size_t a = uniform_int(rng, 1, 8), b = uniform_int(rng, 1, 8), c = uniform_int(rng, 1, 8);
    const NeuralNet f = rnet(b, c), g = rnet(a, b);
    const NeuralNet h = R.emit(compose(f, g));
    for (int k = 0; k < 10; ++k) {
      const Vector x = random_vector(rng, a);
      if (!close(h.realize(relu, x), f.realize(relu, g.realize(relu, x)))) return false;
    }
    return true;
  });

  R.suite("L(Φ1∘Φ2)=L1+L2-1", [&](std::string&) {
    const std::size_t a = uniform_int(rng, 1, 8), b = uniform_int(rng, 1, 8), c = uniform_int(rng, 1, 8);
    const NeuralNet f = rnet(b, c), g = rnet(a, b);
    return R.emit(compose(f, g)).depth() == f.depth() + g.depth() - 1;
  });

  R.suite("P_n blockwise, dims additive", [&](std::string&) {
    const std::size_t n = uniform_int(rng, 1, 4), L = uniform_int(rng, 1, 4);
    std::vector<NeuralNet> parts;
    std::size_t in = 0;
    for (std::size_t i = 0; i < n; ++i) {
      parts.push_back(random_net(random_dims(rng, uniform_int(rng, 1, 8), uniform_int(rng, 1, 8), L, 8), rng));
      in += parts.back().input_dim();
    }
    const NeuralNet p = R.emit(parallelize(parts));
    for (std::size_t k = 0; k <= L + 1; ++k) {
      std::size_t s = 0;
      for (const auto& q : parts) s += q.dim_at(k);
      if (p.dim_at(k) != s) return false;
    }
    for (int t = 0; t < 10; ++t) {
      const Vector x = random_vector(rng, in);
      const Vector y = p.realize(relu, x);
      std::size_t xi = 0, yi = 0;
      for (const auto& q : parts) {
        const Vector yq = q.realize(relu, detail::slice(x, xi, q.input_dim()));
        if (!close(detail::slice(y, yi, q.output_dim()), yq)) return false;
        xi += q.input_dim();
        yi += q.output_dim();
      }
    }
    return true;
  });

  R.suite("R(𝔅_B)(x)=x+B", [&](std::string&) {
    const std::size_t n = uniform_int(rng, 1, 8);
    const Vector b = random_vector(rng, n);
    const NeuralNet net = R.emit(bias_net(b));
    if (net.dims() != Dims{n, n}) return false;
    for (int t = 0; t < 10; ++t) {
      const Vector x = random_vector(rng, n);
      if (!close(net.realize(relu, x), detail::add(x, b))) return false;
    }
    return true;
  });

  R.suite("R(𝔚_W)(x)=Wx", [&](std::string&) {
    const std::size_t m = uniform_int(rng, 1, 8), n = uniform_int(rng, 1, 8);
    Matrix w(m, n);
    for (double& v : w.data()) v = uniform(rng, -1.0, 1.0);
    const NeuralNet net = R.emit(matrix_net(w));
    if (net.dims() != Dims{n, m}) return false;
    for (int t = 0; t < 10; ++t) {
      const Vector x = random_vector(rng, n);
      if (!close(net.realize(relu, x), w * x)) return false;
    }
    return true;
  });

  R.suite("R(λ⊛Φ)=λR(Φ), D unchanged", [&](std::string&) {
    const NeuralNet f = rnet(uniform_int(rng, 1, 8), uniform_int(rng, 1, 8));
    const double lam = uniform(rng, -3.0, 3.0);
    const NeuralNet g = R.emit(scalar_mul(lam, f));
    if (g.dims() != f.dims()) return false;
    for (int k = 0; k < 10; ++k) {
      const Vector x = random_vector(rng, f.input_dim());
      Vector y = f.realize(relu, x);
      for (double& v : y) v *= lam;
      if (!close(g.realize(relu, x), y)) return false;
    }
    return true;
  });

  R.suite("R(𝔖_{m,n}) sums blocks", [&](std::string&) {
    const std::size_t m = uniform_int(rng, 1, 8), n = uniform_int(rng, 1, 8);
    const NeuralNet s = R.emit(sum_fanin(m, n));
    if (s.dims() != Dims{n * m, m}) return false;
    for (int t = 0; t < 10; ++t) {
      const Vector x = random_vector(rng, m * n);
      Vector y(m, 0.0);
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < m; ++i) y[i] += x[b * m + i];
      if (!close(s.realize(relu, x), y)) return false;
    }
    return true;
  });

  R.suite("R(𝔗_{m,n}) replicates", [&](std::string&) {
    const std::size_t m = uniform_int(rng, 1, 8), n = uniform_int(rng, 1, 8);
    const NeuralNet t = R.emit(fanout(m, n));
    if (t.dims() != Dims{m, n * m}) return false;
    for (int k = 0; k < 10; ++k) {
      const Vector x = random_vector(rng, m);
      Vector y;
      for (std::size_t b = 0; b < n; ++b) y.insert(y.end(), x.begin(), x.end());
      if (!close(t.realize(relu, x), y)) return false;
    }
    return true;
  });

  R.suite("⊕ sums realizations, dims formula", [&](std::string&) {
    const std::size_t n = uniform_int(rng, 1, 4), in = uniform_int(rng, 1, 8), out = uniform_int(rng, 1, 8);
    const std::size_t L = uniform_int(rng, 1, 4);
    std::vector<NeuralNet> parts;
    for (std::size_t i = 0; i < n; ++i) parts.push_back(random_net(random_dims(rng, in, out, L, 8), rng));
    const NeuralNet s = R.emit(same_length_sum(parts));
    Dims want{in};
    for (std::size_t k = 1; k < L; ++k) {
      std::size_t w = 0;
      for (const auto& q : parts) w += q.dim_at(k);
      want.push_back(w);
    }
    want.push_back(out);
    if (s.dims() != want) return false;
    for (int t = 0; t < 10; ++t) {
      const Vector x = random_vector(rng, in);
      Vector y(out, 0.0);
      for (const auto& q : parts) y = detail::add(y, q.realize(relu, x));
      if (!close(s.realize(relu, x), y)) return false;
    }
    return true;
  });

  R.suite("weighted block sum, P≤n²P(Φ1)", [&](std::string&) {
    const std::size_t n = uniform_int(rng, 1, 4);
    const Dims dims = rdims(uniform_int(rng, 1, 8), uniform_int(rng, 1, 8));
    std::vector<NeuralNet> parts;
    std::vector<double> h;
    for (std::size_t i = 0; i < n; ++i) {
      parts.push_back(random_net(dims, rng));
      h.push_back(uniform(rng, -2.0, 2.0));
    }
    const NeuralNet s = R.emit(weighted_block_sum(h, parts));
    if (s.param_count() > n * n * parts[0].param_count()) return false;
    const std::size_t in = dims.front();
    for (int t = 0; t < 10; ++t) {
      const Vector x = random_vector(rng, n * in);
      Vector y(dims.back(), 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        Vector yk = parts[k].realize(relu, detail::slice(x, k * in, in));
        for (double& v : yk) v *= h[k];
        y = detail::add(y, yk);
      }
      if (!close(s.realize(relu, x), y)) return false;
    }
    return true;
  });

  R.suite("skip_compose: R, D, P bound", [&](std::string& why) {
    const std::size_t d = uniform_int(rng, 1, 6);
    const NeuralNet id = relu_identity(d);
    const NeuralNet f1 = rnet(d, d);
    Dims d2 = rdims(d, d);
    if (f1.depth() >= 2 && d2.size() >= 3)
      d2[d2.size() - 2] = std::min(d2[d2.size() - 2], f1.dim_at(f1.depth() - 1) + 2 * d);
    const NeuralNet f2 = random_net(d2, rng);
    const NeuralNet s = R.emit(skip_compose(f1, f2, id));
    const double bound = static_cast<double>(f2.param_count()) +
                         std::pow(0.5 * static_cast<double>(id.param_count()) + static_cast<double>(f1.param_count()), 2);
    if (static_cast<double>(s.param_count()) > bound) {
      why = "parameter bound";
      return false;
    }
    Dims want;
    if (f1.depth() == 1) {
      want = f2.dims();
    } else {
      want.assign(d2.begin(), d2.end() - 1);
      for (std::size_t k = 1; k < f1.depth(); ++k) want.push_back(f1.dim_at(k) + 2 * d);
      want.push_back(d);
    }
    if (s.dims() != want) {
      why = "dims";
      return false;
    }
    for (int t = 0; t < 10; ++t) {
      const Vector x = random_vector(rng, d);
      const Vector y2 = f2.realize(relu, x);
      if (!close(s.realize(relu, x), detail::add(y2, f1.realize(relu, y2)))) {
        why = "realization";
        return false;
      }
    }
    return true;
  });

  R.suite("compose_via_identity: R, P≤2(P1+P2)", [&](std::string&) {
    const std::size_t d = uniform_int(rng, 1, 8);
    const NeuralNet outer = rnet(d, uniform_int(rng, 1, 8)), inner = rnet(uniform_int(rng, 1, 8), d);
    const NeuralNet c = R.emit(compose_via_identity(outer, inner, relu_identity(d)));
    if (c.param_count() > 2 * (outer.param_count() + inner.param_count())) return false;
    for (int t = 0; t < 10; ++t) {
      const Vector x = random_vector(rng, inner.input_dim());
      if (!close(c.realize(relu, x), outer.realize(relu, inner.realize(relu, x)))) return false;
    }
    return true;
  });

  R.suite("JSON round-trip exact", [&](std::string&) {
    const NeuralNet f = rnet(uniform_int(rng, 1, 8), uniform_int(rng, 1, 8));
    const NeuralNet g = R.emit(scalar_mul(uniform(rng, -1.0, 1.0) / 3.0, f));
    return from_json(to_json(g)) == g;
  });

  return R.take();
}

}  // namespace netforge::verify
