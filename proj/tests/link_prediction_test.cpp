#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nerd/link_prediction.hpp"
#include "nerd/trainer.hpp"
#include "support/graphs.hpp"

namespace nerd {
namespace {

namespace fs = std::filesystem;

// O(|pos| |neg|) pairwise count.
double brute_force_auc(const std::vector<double>& pos, const std::vector<double>& neg) {
  double wins = 0;
  for (double p : pos)
    for (double q : neg) wins += p > q ? 1.0 : p == q ? 0.5 : 0.0;
  return wins / static_cast<double>(pos.size() * neg.size());
}

TEST(EdgeScore, ZeroDotIsHalf) {
  EmbeddingPair e(2, 3);
  e.source(0, 0) = 1.0;
  e.target(1, 1) = 1.0;
  EXPECT_DOUBLE_EQ(edge_score(e, 0, 1), 0.5);
}

TEST(EdgeScore, SmallRandomVectorsNearHalf) {
  Rng rng(3);
  EmbeddingPair e(2, 128);
  for (Role r : {Role::source, Role::target})
    for (double& x : e.of(r).data()) x = 0.01 * (2 * uniform01(rng) - 1);
  const double s = edge_score(e, 0, 1);
  EXPECT_GT(s, 0.49);
  EXPECT_LT(s, 0.51);
}

TEST(Symmetrized, EqualBothWays) {
  Rng rng(4);
  auto e = initial_embeddings(20, 8, 2);
  for (double& x : e.source.data()) x *= 100;
  const auto s = symmetrized(embedding_scorer(e));
  for (NodeId i = 0; i < 20; ++i)
    for (NodeId j = 0; j < 20; ++j) EXPECT_EQ(s(i, j), s(j, i));
}

TEST(Auc, Examples) {
  EXPECT_DOUBLE_EQ(auc(std::vector{0.9, 0.7}, std::vector{0.8, 0.1}), 0.75);
  EXPECT_DOUBLE_EQ(auc(std::vector{0.3, 0.3, 0.6}, std::vector{0.3, 0.6, 0.3}), 0.5);
  EXPECT_DOUBLE_EQ(auc(std::vector{2.0, 3.0}, std::vector{0.0, 1.0}), 1.0);
  EXPECT_THROW(auc(std::vector<double>{}, std::vector{1.0}), ConfigError);
  EXPECT_THROW(auc(std::vector{1.0}, std::vector<double>{}), ConfigError);
}

TEST(Auc, MatchesPairwiseCount) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> pos(1 + uniform_below(rng, 30)), neg(1 + uniform_below(rng, 30));
    // Coarse values so ties are common.
    for (auto& x : pos) x = static_cast<double>(uniform_below(rng, 6));
    for (auto& x : neg) x = static_cast<double>(uniform_below(rng, 6));
    EXPECT_NEAR(auc(pos, neg), brute_force_auc(pos, neg), 1e-12);
  }
}

TEST(Auc, InvariantUnderIncreasingTransform) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> pos(20), neg(25);
    for (auto& x : pos) x = uniform01(rng);
    for (auto& x : neg) x = uniform01(rng) * 0.9;
    auto f = [](std::vector<double> v) {
      for (auto& x : v) x = std::exp(3 * x) + x * x * x;
      return v;
    };
    EXPECT_DOUBLE_EQ(auc(pos, neg), auc(f(pos), f(neg)));
  }
}

void expect_split_invariants(const DirectedGraph& g, const EvalSplit& s) {
  ASSERT_EQ(s.pos_edges.size(), s.neg_edges.size());
  for (const auto& [u, v] : s.pos_edges) {
    EXPECT_TRUE(g.has_edge(u, v));
    EXPECT_FALSE(s.train_graph.has_edge(u, v));
  }
  for (const auto& [u, v] : s.neg_edges) EXPECT_FALSE(g.has_edge(u, v));
  for (NodeId v = 0; v < g.node_count(); ++v)
    EXPECT_GT(s.train_graph.out_degree(v) + s.train_graph.in_degree(v), 0.0);
  EXPECT_EQ(s.train_graph.edge_count() + s.pos_edges.size(), g.edge_count());
}

TEST(LpSplit, InvariantsOverManySeeds) {
  Rng gen(7);
  const auto g = testing::random_weighted(60, 400, gen, false);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const double invert = static_cast<double>(seed % 5) / 4.0;
    expect_split_invariants(g, make_lp_split(g, 0.3, invert, seed));
  }
}

TEST(LpSplit, SizeIsRoundedFraction) {
  Rng gen(8);
  const auto g = testing::erdos_renyi(100, 0.05, gen);
  const auto s = make_lp_split(g, 0.3, 0.0, 1);
  EXPECT_EQ(s.pos_edges.size(), static_cast<std::size_t>(std::llround(0.3 * g.edge_count())));
}

TEST(LpSplit, SameSeedSameSplit) {
  Rng gen(9);
  const auto g = testing::erdos_renyi(80, 0.05, gen);
  const auto a = make_lp_split(g, 0.3, 0.5, 42);
  const auto b = make_lp_split(g, 0.3, 0.5, 42);
  EXPECT_EQ(a.pos_edges, b.pos_edges);
  EXPECT_EQ(a.neg_edges, b.neg_edges);
  EXPECT_EQ(a.train_graph.edges(), b.train_graph.edges());
  EXPECT_NE(a.pos_edges, make_lp_split(g, 0.3, 0.5, 43).pos_edges);
}

TEST(LpSplit, RejectsBadFraction) {
  const auto g = testing::g1();
  EXPECT_THROW(make_lp_split(g, 0.0, 0.0, 1), ConfigError);
  EXPECT_THROW(make_lp_split(g, 1.0, 0.0, 1), ConfigError);
  EXPECT_THROW(make_lp_split(g, 0.5, 1.5, 1), ConfigError);
}

TEST(LpSplit, TooSparseToSplit) {
  // Every edge of a star is the only edge of its leaf.
  EXPECT_THROW(make_lp_split(testing::from_text("0 1\n0 2\n0 3\n0 4\n"), 0.5, 0.0, 1), SplitError);
}

TEST(Negatives, NoInversionGivesRandomNonEdges) {
  Rng gen(10);
  const auto g = testing::erdos_renyi(50, 0.1, gen);
  const std::vector<NodePair> pos{{0, 1}, {2, 3}, {4, 5}};
  Rng rng(1);
  const auto neg = make_negatives(g, pos, 0.0, rng);
  ASSERT_EQ(neg.edges.size(), 3u);
  EXPECT_EQ(neg.substitutions, 0u);
  for (const auto& [u, v] : neg.edges) {
    EXPECT_NE(u, v);
    EXPECT_FALSE(g.has_edge(u, v));
  }
}

TEST(Negatives, InvertedWhenReverseAbsent) {
  const auto g = testing::from_text("0 1\n1 2\n2 3\n");
  const std::vector<NodePair> pos{{0, 1}};
  Rng rng(1);
  const auto neg = make_negatives(g, pos, 1.0, rng);
  EXPECT_EQ(neg.edges, (std::vector<NodePair>{{1, 0}}));
  EXPECT_EQ(neg.substitutions, 0u);
}

TEST(Negatives, SubstitutedWhenReverseExists) {
  const auto g = testing::from_text("0 1\n1 0\n1 2\n2 3\n");
  const std::vector<NodePair> pos{{0, 1}};
  Rng rng(1);
  const auto neg = make_negatives(g, pos, 1.0, rng);
  ASSERT_EQ(neg.edges.size(), 1u);
  EXPECT_NE(neg.edges[0], (NodePair{1, 0}));
  EXPECT_FALSE(g.has_edge(neg.edges[0].first, neg.edges[0].second));
  EXPECT_EQ(neg.substitutions, 1u);
}

TEST(Negatives, CompleteGraphFails) {
  const auto g = testing::from_text("0 1\n1 0\n");
  const std::vector<NodePair> pos{{0, 1}};
  Rng rng(1);
  EXPECT_THROW(make_negatives(g, pos, 0.0, rng), SplitError);
}

// A symmetric scorer ties each positive with its reversal.
TEST(Directionality, SymmetricScorerIsChance) {
  Rng gen(11);
  const auto g = testing::hub_authority(50, 150, 8, 5, 0.8, gen);
  const auto split = make_lp_split(g, 0.3, 1.0, 3);
  ASSERT_EQ(split.substitutions, 0u);
  auto e = initial_embeddings(g.node_count(), 8, 5);
  for (double& x : e.source.data()) x *= 200;
  for (double& x : e.target.data()) x *= 200;
  EXPECT_DOUBLE_EQ(link_prediction_auc(symmetrized(embedding_scorer(e)), split.pos_edges, split.neg_edges),
                   0.5);
}

TEST(SplitFiles, WrittenAndReadBack) {
  const fs::path dir = fs::temp_directory_path() / ("nerd_split_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto g = testing::from_text("a b\nb c\nc a\na c\nb a\nc b\nd a\na d\n");
  const auto split = make_lp_split(g, 0.25, 0.0, 2);
  const std::string prefix = (dir / "s").string();
  save_split(split, prefix);
  const auto pos = read_pairs_file(prefix + ".test.pos");
  ASSERT_EQ(pos.size(), split.pos_edges.size());
  for (std::size_t k = 0; k < pos.size(); ++k) {
    EXPECT_EQ(pos[k].first, g.ids().label(split.pos_edges[k].first));
    EXPECT_EQ(pos[k].second, g.ids().label(split.pos_edges[k].second));
  }
  EXPECT_EQ(read_pairs_file(prefix + ".test.neg").size(), split.neg_edges.size());
  const auto train = load_edge_list_file(prefix + ".train");
  EXPECT_EQ(train.edge_count(), split.train_graph.edge_count());
  fs::remove_all(dir);
}

}  // namespace
}  // namespace nerd
