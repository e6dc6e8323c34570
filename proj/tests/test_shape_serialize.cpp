#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "netforge/calculus.hpp"
#include "netforge/random_nets.hpp"
#include "netforge/serialize.hpp"
#include "netforge/shape.hpp"

using namespace netforge;

TEST(Shape, MirrorsCombinatorsOnRandomInstances) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = uniform_int(rng, 1, 5);
    const NeuralNet f1 = random_net(random_dims(rng, d, d, uniform_int(rng, 1, 4), 8), rng);
    Dims d2 = random_dims(rng, d, d, uniform_int(rng, 1, 4), 8);
    if (f1.depth() >= 2 && d2.size() >= 3) d2[d2.size() - 2] = std::min(d2[d2.size() - 2], f1.dim_at(f1.depth() - 1) + 2 * d);
    const NeuralNet f2 = random_net(d2, rng);
    EXPECT_EQ(shape::compose(f1.dims(), f2.dims()), compose(f1, f2).dims());
    EXPECT_EQ(shape::skip_compose(f1.dims(), f2.dims(), 2 * d), skip_compose(f1, f2, relu_identity(d)).dims());
    EXPECT_EQ(shape::compose_via_identity(f1.dims(), f2.dims(), 2 * d),
              compose_via_identity(f1, f2, relu_identity(d)).dims());
    const std::size_t n = uniform_int(rng, 1, 4);
    EXPECT_EQ(shape::same_length_sum(f2.dims(), n), same_length_sum(std::vector<NeuralNet>(n, f2)).dims());
    EXPECT_EQ(shape::weighted_block_sum(f2.dims(), n),
              weighted_block_sum(std::vector<double>(n, 1.0), std::vector<NeuralNet>(n, f2)).dims());
    EXPECT_EQ(shape::parallelize({f2.dims(), f2.dims()}), parallelize({f2, f2}).dims());
  }
}

TEST(Shape, PathMatchesIteratedSkipCompose) {
  for (std::size_t d : {1u, 3u})
    for (const Dims& drift : {Dims{d, d}, Dims{d, 2 * d, d}, Dims{d, 5, 4, d}}) {
      Dims phi{d, 2 * d, d};
      for (std::size_t n = 1; n <= 6; ++n) {
        phi = shape::skip_compose(drift, phi, 2 * d);
        EXPECT_EQ(shape::path(drift, d, n), phi);
      }
    }
}

TEST(Json, RoundTripIsValueExact) {
  std::mt19937_64 rng(32);
  NeuralNet n = random_net({4, 7, 3, 2}, rng);
  std::vector<Layer> ls = NeuralNet(n).release();
  ls[0].weights(0, 0) = std::numeric_limits<double>::denorm_min();
  ls[0].weights(0, 1) = std::numeric_limits<double>::max();
  ls[0].weights(0, 2) = -0.1;
  ls[1].bias[0] = 1.0 / 3.0;
  ls[1].bias[1] = -0.0;
  const NeuralNet m(ls);
  const NeuralNet back = from_json(to_json(m));
  EXPECT_EQ(back, m);
  EXPECT_TRUE(std::signbit(back.layer(1).bias[1]));
  EXPECT_EQ(to_json(back), to_json(m));
}

TEST(Json, DocumentLayout) {
  const auto j = nlohmann::json::parse(to_json(relu_identity(1)));
  EXPECT_EQ(j["activation"], "relu");
  ASSERT_EQ(j["layers"].size(), 2u);
  EXPECT_EQ(j["layers"][0]["rows"], 2);
  EXPECT_EQ(j["layers"][0]["cols"], 1);
  EXPECT_EQ(j["layers"][1]["weights"], nlohmann::json({1.0, -1.0}));
  EXPECT_EQ(j["layers"][1]["bias"], nlohmann::json({0.0}));
}

TEST(Json, SyntaxErrorCarriesLineNumber) {
  try {
    from_json("{\n  \"activation\": \"relu\",\n  \"layers\": [ oops ]\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Json, StructuralErrors) {
  EXPECT_THROW(from_json(R"({"layers":[{"rows":2,"cols":2,"weights":[1,2,3],"bias":[0,0]}]})"), ParseError);
  EXPECT_THROW(from_json(R"({"layers":[]})"), ParseError);
  EXPECT_THROW(from_json(R"({"activation":"tanh","layers":[{"rows":1,"cols":1,"weights":[1],"bias":[0]}]})"),
               ParseError);
  EXPECT_THROW(from_json(R"({"layers":[{"rows":1,"cols":1,"weights":[1],"bias":[0]},
                                        {"rows":1,"cols":2,"weights":[1,1],"bias":[0]}]})"),
               ParseError);
}
