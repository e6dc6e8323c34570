// Builds a small residual network from the calculus operations and checks it
// against a direct evaluation.

#include <cstdio>

#include "netforge/netforge.hpp"

using namespace netforge;

int main() {
  const Activation relu = Activation::relu();
  const NeuralNet id = relu_identity(2);

  // x ↦ 0.5 x, then y ↦ y + 0.1 |y|₁ (1, 1) applied as a skip connection
  const NeuralNet half = matrix_net(Matrix::identity(2, 0.5));
  const NeuralNet bump = compose(matrix_net(Matrix(2, 1, std::vector<double>{0.1, 0.1})), sum_abs_net(2));
  const NeuralNet net = skip_compose(bump, compose(half, id), id);

  std::printf("dims:");
  for (std::size_t n : net.dims()) std::printf(" %zu", n);
  std::printf("\nparameters: %zu\n", net.param_count());

  const Vector x{3.0, -1.0};
  const Vector y = net.realize(relu, x);
  const double s = 0.1 * (1.5 + 0.5);
  std::printf("R(net)(3, -1) = (%.17g, %.17g), expected (%.17g, %.17g)\n", y[0], y[1], 1.5 + s, -0.5 + s);

  const NeuralNet avg = weighted_block_sum({0.5, 0.5}, {sum_abs_net(2), sum_abs_net(2)});
  std::printf("mean of |(1,2)|, |(3,-4)|: %.17g\n", avg.realize(relu, Vector{1, 2, 3, -4})[0]);
  std::printf("json size of the residual net: %zu bytes\n", to_json(net).size());
  return 0;
}
