#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "json.hpp"

#include "netforge/calculus.hpp"
#include "netforge/reference.hpp"
#include "netforge/sde.hpp"
#include "netforge/serialize.hpp"

namespace netforge {

/// ∑|x_i| = ∑ a(x_i) + a(−x_i), dims (d, 2d, 1).
inline NeuralNet sum_abs_net(std::size_t d) {
  Matrix w1(2 * d, d), w2(1, 2 * d, 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    w1(i, i) = 1.0;
    w1(d + i, i) = -1.0;
  }
  std::vector<Layer> ls;
  ls.push_back(Layer{std::move(w1), Vector(2 * d, 0.0)});
  ls.push_back(Layer{std::move(w2), Vector(1, 0.0)});
  return NeuralNet(std::move(ls));
}

/// y ↦ −y as 𝔚_{−I} ∘ 𝔦_d, dims (d, 2d, d).
inline NeuralNet neg_identity_net(std::size_t d) { return compose(matrix_net(Matrix::identity(d, -1.0)), relu_identity(d)); }

/// Zero map with the same dims as neg_identity_net.
inline NeuralNet zero_drift_net(std::size_t d) { return scalar_mul(0.0, relu_identity(d)); }

/// Declared constants of a coefficient family.
struct FamilyConstants {
  double kappa = 7.0;
  double theta = 1.0;
  double e = 0.0;
  double d1 = 0.5, d2 = 0.0, d3 = 4.0, d4 = 0.0, d5 = 0.0, d6 = 0.5;
};

/// Coefficient nets φ⁰ (payoff) and φ¹ (drift) indexed by (d, ε), plus 𝒜_d.
struct ApproximationFamily {
  std::string name;
  std::function<NeuralNet(std::size_t d, double eps)> payoff_net;
  std::function<NeuralNet(std::size_t d, double eps)> drift_net;
  std::function<Matrix(std::size_t d)> diffusion_factor;
  FamilyConstants constants;
  std::optional<ProblemId> reference;  // closed form available
};

/// Checks dims and the declared parameter budgets of the family at (d, ε).
inline void check_family(const ApproximationFamily& f, std::size_t d, double eps) {
  const NeuralNet pay = f.payoff_net(d, eps), drift = f.drift_net(d, eps);
  if (pay.input_dim() != d || pay.output_dim() != 1)
    throw PreconditionError(f.name + ": payoff net must map R^" + std::to_string(d) + " to R");
  if (drift.input_dim() != d || drift.output_dim() != d)
    throw PreconditionError(f.name + ": drift net must map R^" + std::to_string(d) + " to itself");
  const auto& c = f.constants;
  const double dd = static_cast<double>(d);
  const double pay_cap = c.kappa * std::pow(dd, c.d3) * std::pow(eps, -c.e);
  const double drift_cap = c.kappa * std::pow(dd, c.d3 / 2.0) * std::pow(eps, -c.e / 2.0);
  if (static_cast<double>(pay.param_count()) > pay_cap)
    throw PreconditionError(f.name + ": payoff net has " + std::to_string(pay.param_count()) +
                            " parameters, budget " + std::to_string(pay_cap));
  if (static_cast<double>(drift.param_count()) > drift_cap)
    throw PreconditionError(f.name + ": drift net has " + std::to_string(drift.param_count()) +
                            " parameters, budget " + std::to_string(drift_cap));
}

inline ApproximationFamily bundled_family(ProblemId id) {
  ApproximationFamily f;
  f.name = to_string(id);
  f.payoff_net = [](std::size_t d, double) { return sum_abs_net(d); };
  if (id == ProblemId::heat_abs)
    f.drift_net = [](std::size_t d, double) { return zero_drift_net(d); };
  else
    f.drift_net = [](std::size_t d, double) { return neg_identity_net(d); };
  f.diffusion_factor = [](std::size_t d) { return Matrix::identity(d, std::sqrt(2.0)); };
  f.reference = id;
  return f;
}

/// SDE whose coefficients are the family's nets at (d, eps_inner).
inline SDEProblem family_problem(const ApproximationFamily& f, std::size_t d, double T, double eps_inner) {
  SDEProblem p;
  p.d = d;
  p.T = T;
  p.drift = drift_from_net(f.drift_net(d, eps_inner));
  p.payoff = payoff_from_net(f.payoff_net(d, eps_inner));
  p.diffusion_factor = f.diffusion_factor(d);
  p.lipschitz_kappa = f.constants.kappa;
  return p;
}

/// Bundled problem with plain-function coefficients (fast path for simulation).
inline SDEProblem bundled_problem(ProblemId id, std::size_t d, double T = 1.0) {
  SDEProblem p;
  p.d = d;
  p.T = T;
  if (id == ProblemId::heat_abs) {
    p.drift = [](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), 0.0); };
    p.lipschitz_kappa = 0.0;
  } else {
    p.drift = [](std::span<const double> y, std::span<double> out) {
      for (std::size_t i = 0; i < y.size(); ++i) out[i] = -y[i];
    };
    p.lipschitz_kappa = 1.0;
  }
  p.payoff = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  };
  p.diffusion_factor = Matrix::identity(d, std::sqrt(2.0));
  return p;
}

/// Problem document: {"id", "d", "T", "drift", "payoff", "diffusion_scale"}.
struct ProblemSpec {
  std::string id;
  std::size_t d = 1;
  double T = 1.0;
  ApproximationFamily family;
};

inline ProblemSpec problem_from_json(const nlohmann::json& j) {
  try {
    ProblemSpec s;
    s.id = j.value("id", std::string("custom"));
    s.d = j.at("d").get<std::size_t>();
    s.T = j.value("T", 1.0);
    if (s.d == 0) throw ParseError("problem: d must be positive");
    if (!(s.T > 0.0)) throw ParseError("problem: T must be positive");
    const double scale = j.value("diffusion_scale", std::sqrt(2.0));
    const std::size_t d = s.d;
    auto& f = s.family;
    f.name = s.id;
    f.diffusion_factor = [scale](std::size_t dd) { return Matrix::identity(dd, scale); };

    const auto& jd = j.at("drift");
    if (jd.is_string() && jd.get<std::string>() == "zero") {
      f.drift_net = [](std::size_t dd, double) { return zero_drift_net(dd); };
    } else if (jd.is_string() && jd.get<std::string>() == "neg_identity") {
      f.drift_net = [](std::size_t dd, double) { return neg_identity_net(dd); };
    } else if (jd.is_object() && jd.contains("net")) {
      NeuralNet net = network_from_json(jd.at("net"));
      f.drift_net = [net, d](std::size_t dd, double) {
        if (dd != d) throw PreconditionError("drift net is fixed to d = " + std::to_string(d));
        return net;
      };
    } else {
      throw ParseError("problem: drift must be \"zero\", \"neg_identity\" or {\"net\": ...}");
    }

    const auto& jp = j.at("payoff");
    if (jp.is_string() && jp.get<std::string>() == "sum_abs") {
      f.payoff_net = [](std::size_t dd, double) { return sum_abs_net(dd); };
    } else if (jp.is_object() && jp.contains("net")) {
      NeuralNet net = network_from_json(jp.at("net"));
      f.payoff_net = [net, d](std::size_t dd, double) {
        if (dd != d) throw PreconditionError("payoff net is fixed to d = " + std::to_string(d));
        return net;
      };
    } else {
      throw ParseError("problem: payoff must be \"sum_abs\" or {\"net\": ...}");
    }

    if (j.contains("constants")) {
      const auto& c = j.at("constants");
      auto& k = f.constants;
      k.kappa = c.value("kappa", k.kappa);
      k.theta = c.value("theta", k.theta);
      k.e = c.value("e", k.e);
      k.d1 = c.value("d1", k.d1);
      k.d2 = c.value("d2", k.d2);
      k.d3 = c.value("d3", k.d3);
      k.d4 = c.value("d4", k.d4);
      k.d5 = c.value("d5", k.d5);
      k.d6 = c.value("d6", k.d6);
    }

    // The closed form applies only when the document describes a bundled problem exactly.
    const bool sqrt2 = std::abs(scale - std::sqrt(2.0)) < 1e-15;
    const bool sum_abs = jp.is_string();
    if (sqrt2 && sum_abs && jd.is_string()) {
      f.reference = jd.get<std::string>() == "zero" ? ProblemId::heat_abs : ProblemId::ou_abs;
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("problem document: ") + e.what());
  }
}

/// Bundled id or path to a problem document.
inline ProblemSpec load_problem(const std::string& name_or_path, std::size_t d, double T) {
  if (name_or_path == "heat_abs" || name_or_path == "ou_abs") {
    ProblemSpec s;
    s.id = name_or_path;
    s.d = d;
    s.T = T;
    s.family = bundled_family(parse_problem_id(name_or_path));
    return s;
  }
  return problem_from_json(parse_json(read_file(name_or_path)));
}

}  // namespace netforge
