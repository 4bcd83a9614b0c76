#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <numeric>

#include "nerd/sampling.hpp"
#include "support/graphs.hpp"

namespace nerd {
namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(DegreeDistribution, G1) {
  const auto g = testing::g1();
  const auto src = degree_distribution(g, Role::source);
  const auto tgt = degree_distribution(g, Role::target);
  EXPECT_EQ(src.kind, DistributionKind::p_out);
  EXPECT_DOUBLE_EQ(src.probs[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(src.probs[1], 0.0);
  EXPECT_DOUBLE_EQ(src.probs[2], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(tgt.probs[0], 0.0);
  EXPECT_DOUBLE_EQ(tgt.probs[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(tgt.probs[2], 1.0 / 3.0);
}

TEST(DegreeDistribution, SingleEdge) {
  const auto d = degree_distribution(testing::single_edge(), Role::source);
  EXPECT_EQ(d.probs, (std::vector<double>{1.0, 0.0}));
}

TEST(NoiseDistribution, G1ThreeQuarterPower) {
  const auto g = testing::g1();
  const double a = std::pow(2.0, 0.75);
  const auto tgt = noise_distribution(g, Role::target);
  EXPECT_EQ(tgt.kind, DistributionKind::noise_in);
  EXPECT_DOUBLE_EQ(tgt.probs[0], 0.0);
  EXPECT_NEAR(tgt.probs[1], a / (a + 1), 1e-15);
  EXPECT_NEAR(tgt.probs[2], 1 / (a + 1), 1e-15);
  EXPECT_NEAR(tgt.probs[1], 0.6271, 1e-4);
  EXPECT_NEAR(tgt.probs[2], 0.3729, 1e-4);
  const auto src = noise_distribution(g, Role::source);
  EXPECT_NEAR(src.probs[0], a / (a + 1), 1e-15);
  EXPECT_DOUBLE_EQ(src.probs[1], 0.0);
  EXPECT_NEAR(src.probs[2], 1 / (a + 1), 1e-15);
}

TEST(NoiseDistribution, RegularGraphIsUniformOverSupport) {
  // Directed 4-cycle: every d_out = d_in = 1.
  const auto g = testing::from_text("0 1\n1 2\n2 3\n3 0\n");
  for (Role r : {Role::source, Role::target})
    for (double p : noise_distribution(g, r).probs) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(Distributions, SumToOneAndZeroExactlyOnZeroDegree) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 80);
    const auto g = testing::random_weighted(n, 1 + uniform_below(rng, 3 * n), rng);
    for (Role r : {Role::source, Role::target}) {
      for (const auto& d : {degree_distribution(g, r), noise_distribution(g, r)}) {
        EXPECT_NEAR(sum(d.probs), 1.0, 1e-9);
        for (NodeId v = 0; v < g.node_count(); ++v) EXPECT_EQ(d.probs[v] == 0.0, g.degree(v, r) == 0.0);
      }
    }
  }
}

TEST(AliasTable, PointMass) {
  const AliasTable t(std::vector<double>{1.0});
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(t.sample(rng), 0u);
}

TEST(AliasTable, FairCoinWithinThreeSigma) {
  const AliasTable t(std::vector<double>{0.5, 0.5});
  Rng rng(2);
  const int draws = 1'000'000;
  int zeros = 0;
  for (int i = 0; i < draws; ++i) zeros += t.sample(rng) == 0;
  const double f = static_cast<double>(zeros) / draws;
  EXPECT_GE(f, 0.497);
  EXPECT_LE(f, 0.503);
}

TEST(AliasTable, ZeroMassNeverDrawn) {
  const AliasTable t(degree_distribution(testing::g1(), Role::source));
  Rng rng(3);
  for (int i = 0; i < 1'000'000; ++i) ASSERT_NE(t.sample(rng), 1u);
}

TEST(AliasTable, RejectsAllZeroAndNegative) {
  EXPECT_THROW(AliasTable(std::vector<double>{0.0, 0.0}), ConfigError);
  EXPECT_THROW(AliasTable(std::vector<double>{}), ConfigError);
  EXPECT_THROW(AliasTable(std::vector<double>{1.0, -0.1}), ConfigError);
}

// Goodness of fit at significance 0.001 over random supports up to 1000.
TEST(AliasTable, ChiSquareGoodnessOfFit) {
  Rng rng(17);
  const int draws = 1'000'000;
  for (std::size_t support : {2u, 7u, 64u, 333u, 1000u}) {
    std::vector<double> w(support);
    for (auto& x : w) x = uniform01(rng) < 0.1 ? 0.0 : 0.1 + uniform01(rng);
    w[0] = 1.0;
    const double total = sum(w);
    const AliasTable t(w);
    std::vector<long> counts(support, 0);
    for (int i = 0; i < draws; ++i) ++counts[t.sample(rng)];
    double chi2 = 0.0;
    int cells = 0;
    for (std::size_t k = 0; k < support; ++k) {
      if (w[k] == 0.0) {
        EXPECT_EQ(counts[k], 0) << "zero-mass slot " << k << " drawn";
        continue;
      }
      const double expected = draws * w[k] / total;
      chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
      ++cells;
    }
    if (cells < 2) continue;
    const boost::math::chi_squared dist(cells - 1);
    EXPECT_LT(chi2, boost::math::quantile(dist, 0.999)) << "support " << support;
  }
}

}  // namespace
}  // namespace nerd
