#include <gtest/gtest.h>

#include "alphaleak/distribution.hpp"
#include "support/random_instances.hpp"

using namespace alphaleak;

TEST(FiniteDistribution, Validates) {
  EXPECT_THROW(FiniteDistribution({}), std::invalid_argument);
  EXPECT_THROW(FiniteDistribution({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(FiniteDistribution({1.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(FiniteDistribution({std::nan(""), 1.0}), std::invalid_argument);
  EXPECT_NO_THROW(FiniteDistribution({0.3, 0.7}));
  EXPECT_NO_THROW(FiniteDistribution({0.3, 0.7 + 5e-13}));
  EXPECT_THROW(FiniteDistribution({0.3, 0.7 + 1e-10}), std::invalid_argument);
}

TEST(FiniteDistribution, Factories) {
  const auto u = FiniteDistribution::uniform(4);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(u[i], 0.25);
  const auto pm = FiniteDistribution::point_mass(3, 2);
  EXPECT_EQ(pm[2], 1.0);
  EXPECT_EQ(pm[0], 0.0);
  const auto b = FiniteDistribution::bernoulli(0.3);
  EXPECT_DOUBLE_EQ(b[1], 0.3);
  EXPECT_DOUBLE_EQ(b[0], 0.7);
  const auto n = FiniteDistribution::normalized({1.0, 3.0});
  EXPECT_DOUBLE_EQ(n[1], 0.75);
  EXPECT_THROW(FiniteDistribution::normalized({0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(u.at(4), std::out_of_range);
}

TEST(JointDistribution, MarginalsAndConditionals) {
  const JointDistribution j({{0.4, 0.1}, {0.1, 0.4}});
  EXPECT_DOUBLE_EQ(j.marginal_x()[0], 0.5);
  EXPECT_DOUBLE_EQ(j.marginal_y()[1], 0.5);
  EXPECT_DOUBLE_EQ(j.conditional(0, 0), 0.8);
  EXPECT_DOUBLE_EQ(j.conditional_y(1)[1], 0.8);

  const JointDistribution z({{0.5, 0.5}, {0.0, 0.0}});
  EXPECT_THROW(z.conditional_y(1), std::domain_error);
  EXPECT_EQ(z.conditional(1, 0), 0.0);
}

TEST(JointDistribution, Validates) {
  EXPECT_THROW(JointDistribution(2, 2, {0.25, 0.25, 0.25}), std::invalid_argument);
  EXPECT_THROW(JointDistribution({{0.5, 0.5}, {0.5, 0.5}}), std::invalid_argument);
  EXPECT_THROW(JointDistribution({{0.5, 0.5}, {0.5}}), std::invalid_argument);
  EXPECT_THROW(JointDistribution(0, 2, {}), std::invalid_argument);
}

TEST(JointDistribution, ProductAndChannel) {
  const auto px = FiniteDistribution::bernoulli(0.3);
  const auto py = FiniteDistribution({0.2, 0.3, 0.5});
  const auto p = JointDistribution::product(px, py);
  EXPECT_DOUBLE_EQ(p(1, 2), 0.15);
  const auto prod = p.product_of_marginals();
  for (std::size_t i = 0; i < prod.size(); ++i) EXPECT_NEAR(prod[i], p.mass()[i], 1e-15);

  const auto ch = JointDistribution::from_channel(FiniteDistribution::uniform(2),
                                                   {FiniteDistribution::bernoulli(0.1),
                                                    FiniteDistribution::bernoulli(0.9)});
  EXPECT_DOUBLE_EQ(ch(0, 0), 0.45);
  EXPECT_DOUBLE_EQ(ch(1, 1), 0.45);
  EXPECT_THROW(JointDistribution::from_channel(FiniteDistribution::uniform(2), {FiniteDistribution::uniform(2)}),
               std::invalid_argument);
}

TEST(JointDistribution, GarblePreservesMassAndMarginal) {
  testkit::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto j = testkit::random_joint_upto(rng, 4, 4);
    const std::size_t k = rng.index(1, 5);
    const auto g = j.garble(testkit::random_channel(rng, j.ny(), k));
    EXPECT_EQ(g.nx(), j.nx());
    EXPECT_EQ(g.ny(), k);
    for (std::size_t x = 0; x < j.nx(); ++x) EXPECT_NEAR(g.marginal_x()[x], j.marginal_x()[x], 1e-14);
  }
  const JointDistribution j({{0.4, 0.1}, {0.1, 0.4}});
  EXPECT_THROW(j.garble({FiniteDistribution::uniform(2)}), std::invalid_argument);
}
