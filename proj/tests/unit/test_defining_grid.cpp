#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "semiaut/defining_grid.hpp"
#include "semiaut/errors.hpp"

using namespace semiaut;

namespace {

DefiningGrid sample(double phase) {
  return DefiningGrid::sample({{-1, 1, 21}, {0, 2, 11}},
                              [&](std::span<const double> x) { return std::sin(x[0] + phase) * x[1]; });
}

}  // namespace

TEST(DefiningGrid, DistanceToSelfIsZero) {
  const auto g = sample(0.0);
  EXPECT_EQ(lipschitz_distance(g, g), 0.0);
}

TEST(DefiningGrid, ConstantOffset) {
  const auto g = sample(0.3);
  EXPECT_NEAR(lipschitz_distance(g + 0.25, g), 0.25, 1e-13);
  EXPECT_NEAR(seminorm_distance(g + 0.25, g), 0.0, 1e-13);
}

TEST(DefiningGrid, LinearFunctionSeminorm) {
  const auto g = DefiningGrid::sample({{0, 1, 5}, {0, 1, 9}}, [](std::span<const double> x) { return 3 * x[0] - 2 * x[1]; });
  EXPECT_NEAR(g.lipschitz_seminorm(), 3.0, 1e-12);
  EXPECT_NEAR(g.sup_norm(), 3.0, 1e-12);
}

TEST(DefiningGrid, MetricAxioms) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 6);
  for (int t = 0; t < 20; ++t) {
    const auto a = sample(u(rng)), b = sample(u(rng)), c = sample(u(rng));
    EXPECT_EQ(lipschitz_distance(a, b), lipschitz_distance(b, a));
    EXPECT_LE(lipschitz_distance(a, c), lipschitz_distance(a, b) + lipschitz_distance(b, c) + 1e-12);
  }
}

TEST(DefiningGrid, IncompatibleGridsRejected) {
  const auto a = sample(0.0);
  const auto b = DefiningGrid::sample({{-1, 1, 21}, {0, 2, 12}}, [](std::span<const double>) { return 0.0; });
  EXPECT_THROW(lipschitz_distance(a, b), GridIncompatible);
}

TEST(DefiningGrid, BadAxesRejected) {
  EXPECT_THROW(DefiningGrid({{0, 1, 1}}, {0.0}), PreconditionError);
  EXPECT_THROW(DefiningGrid({{0, 1, 3}}, {0.0, 1.0}), PreconditionError);
}

TEST(DefiningGrid, TextRoundTrip) {
  const auto g = sample(0.7);
  std::stringstream ss;
  g.write(ss);
  const auto h = DefiningGrid::read(ss);
  ASSERT_TRUE(g.compatible(h));
  EXPECT_EQ(lipschitz_distance(g, h), 0.0);
}

TEST(DefiningGrid, RowMajorLastAxisFastest) {
  const auto g = DefiningGrid::sample({{0, 1, 2}, {0, 2, 3}}, [](std::span<const double> x) { return 10 * x[0] + x[1]; });
  EXPECT_EQ(g.values()[1], 1.0);
  EXPECT_EQ(g.values()[3], 10.0);
  const std::size_t idx[] = {1, 2};
  EXPECT_EQ(g.at(idx), 12.0);
}
