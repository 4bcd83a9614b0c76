#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nerd/embedding.hpp"
#include "nerd/graph.hpp"

namespace nerd {

/// Any pairwise edge scorer; higher means "more likely i -> j".
using EdgeScorer = std::function<double(NodeId i, NodeId j)>;

/// sigma(Phi_s(i) . Phi_t(j)) with the exact logistic function.
double edge_score(const EmbeddingPair& e, NodeId i, NodeId j) noexcept;

/// Scorer view over an embedding pair; the pair must outlive it.
EdgeScorer embedding_scorer(const EmbeddingPair& e);

/// score(i, j) := (score(i, j) + score(j, i)) / 2. Cannot tell direction.
EdgeScorer symmetrized(EdgeScorer inner);

using NodePair = std::pair<NodeId, NodeId>;

struct EvalSplit {
  DirectedGraph train_graph;
  std::vector<NodePair> pos_edges;
  std::vector<NodePair> neg_edges;
  double invert_fraction = 0.0;
  std::uint64_t seed = 0;
  /// Inverted candidates replaced by a random non-edge because the reverse
  /// edge exists.
  std::size_t substitutions = 0;
};

/// Removes round(test_fraction * M) random edges as positives without
/// isolating any node, then builds an equal number of negatives (see
/// make_negatives). Throws SplitError when not enough edges can be removed or
/// not enough non-edges found.
EvalSplit make_lp_split(const DirectedGraph& g, double test_fraction, double invert_fraction,
                        std::uint64_t seed);

struct NegativeSet {
  std::vector<NodePair> edges;
  std::size_t substitutions = 0;
};

/// For the first round(invert_fraction * |pos|) positives (v, w) emits (w, v)
/// unless (w, v) is an edge of `g`, in which case a uniformly random
/// non-edge is emitted instead; the rest are uniformly random non-edges
/// (u != v). Throws SplitError after 100 * |pos| failed rejection draws.
NegativeSet make_negatives(const DirectedGraph& g, std::span<const NodePair> positives,
                           double invert_fraction, Rng& rng);

/// Rank-based (Mann-Whitney) ROC-AUC; ties count one half.
/// Throws ConfigError when either list is empty.
double auc(std::span<const double> pos_scores, std::span<const double> neg_scores);

/// Scores every pair and returns auc(pos, neg).
double link_prediction_auc(const EdgeScorer& score, std::span<const NodePair> pos,
                           std::span<const NodePair> neg);

/// `<prefix>.train`, `<prefix>.test.pos`, `<prefix>.test.neg`, all in
/// edge-list format with external labels.
void save_split(const EvalSplit& split, const std::string& prefix);

/// Test pairs of a split file, as external labels.
std::vector<std::pair<std::string, std::string>> read_pairs_file(const std::string& path);

}  // namespace nerd
