#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nerd/graph.hpp"
#include "nerd/link_prediction.hpp"

namespace nerd {

struct ReconstructionConfig {
  std::vector<int> k_values{1, 2, 5, 10, 100, 200};
  /// Fraction of nodes drawn as the test set.
  double sample_fraction = 1.0;
  double epsilon = 1e-5;
  /// Zero-degree side scores 1 when the top-1 score is below this.
  double zero_degree_threshold = 0.51;
  int threads = 1;

  void validate(std::size_t node_count) const;
};

struct NodePrecision {
  double out = 0.0;
  double in = 0.0;
};

/// Precision of the top-k predicted out- and in-neighbors of v against its
/// true neighbor sets. Candidates exclude v; ties break by ascending id. A
/// side whose true degree is zero scores 1 if the top-1 score is below the
/// threshold, else 0.
NodePrecision node_precision(const EdgeScorer& score, const DirectedGraph& g, NodeId v, int k,
                             double zero_degree_threshold = 0.51);

/// 2ab / (a + b) with a = p_in + eps, b = p_out + eps.
double harmonic_score(const NodePrecision& p, double epsilon) noexcept;

struct ReconstructionResult {
  std::vector<int> k_values;
  /// Mean harmonic score over test nodes, parallel to k_values.
  std::vector<double> mean_score;
};

/// Uniform sample of max(1, round(fraction * N)) distinct nodes, sorted.
std::vector<NodeId> sample_test_nodes(std::size_t node_count, double fraction, std::uint64_t seed);

/// Node-centric bidirectional reconstruction. Throws ConfigError when some
/// k >= N.
ReconstructionResult reconstruct(const EdgeScorer& score, const DirectedGraph& g,
                                 std::span<const NodeId> test_nodes, const ReconstructionConfig& cfg);

}  // namespace nerd
