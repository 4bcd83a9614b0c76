#include "nerd/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace nerd {

void ReconstructionConfig::validate(std::size_t node_count) const {
  if (k_values.empty()) throw ConfigError("need at least one k");
  for (int k : k_values) {
    if (k < 1) throw ConfigError("k must be >= 1");
    if (static_cast<std::size_t>(k) >= node_count)
      throw ConfigError("k = " + std::to_string(k) + " must be smaller than N = " +
                        std::to_string(node_count));
  }
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
    throw ConfigError("sample fraction must lie in (0, 1]");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

namespace {

struct Ranked {
  std::vector<NodeId> order;  // best first
  double top_score = 0.0;
};

// Top `k` candidates j != v by descending score, ascending id on ties.
Ranked rank(const EdgeScorer& score, std::size_t n, NodeId v, bool outgoing, std::size_t k,
            std::vector<std::pair<double, NodeId>>& buf) {
  buf.clear();
  for (NodeId j = 0; j < n; ++j) {
    if (j == v) continue;
    buf.emplace_back(outgoing ? score(v, j) : score(j, v), j);
  }
  auto better = [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  };
  k = std::min(k, buf.size());
  std::partial_sort(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k), buf.end(), better);
  Ranked r;
  r.order.reserve(k);
  for (std::size_t i = 0; i < k; ++i) r.order.push_back(buf[i].second);
  r.top_score = buf.empty() ? 0.0 : buf[0].first;
  return r;
}

// Precision at each k of `ks` for one side of one node.
void side_precision(const Ranked& r, const DirectedGraph& g, NodeId v, bool outgoing,
                    std::span<const int> ks, double threshold, std::span<double> out) {
  const double deg = outgoing ? g.out_degree(v) : g.in_degree(v);
  if (deg == 0.0) {
    const double p = r.top_score < threshold ? 1.0 : 0.0;
    std::fill(out.begin(), out.end(), p);
    return;
  }
  // hits[i] = true neighbors among the first i ranked candidates.
  std::vector<std::size_t> hits(r.order.size() + 1, 0);
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    const NodeId j = r.order[i];
    hits[i + 1] = hits[i] + (outgoing ? g.has_edge(v, j) : g.has_edge(j, v));
  }
  for (std::size_t q = 0; q < ks.size(); ++q) {
    const auto k = static_cast<std::size_t>(ks[q]);
    out[q] = static_cast<double>(hits[std::min(k, r.order.size())]) / static_cast<double>(k);
  }
}

}  // namespace

double harmonic_score(const NodePrecision& p, double epsilon) noexcept {
  const double a = p.in + epsilon;
  const double b = p.out + epsilon;
  return 2.0 * a * b / (a + b);
}

NodePrecision node_precision(const EdgeScorer& score, const DirectedGraph& g, NodeId v, int k,
                             double zero_degree_threshold) {
  if (k < 1 || static_cast<std::size_t>(k) >= g.node_count())
    throw ConfigError("k must lie in [1, N)");
  std::vector<std::pair<double, NodeId>> buf;
  const int ks[] = {k};
  NodePrecision p;
  const auto n = g.node_count();
  const auto kk = static_cast<std::size_t>(k);
  side_precision(rank(score, n, v, true, kk, buf), g, v, true, ks, zero_degree_threshold, {&p.out, 1});
  side_precision(rank(score, n, v, false, kk, buf), g, v, false, ks, zero_degree_threshold, {&p.in, 1});
  return p;
}

std::vector<NodeId> sample_test_nodes(std::size_t node_count, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("sample fraction must lie in (0, 1]");
  std::vector<NodeId> all(node_count);
  for (std::size_t i = 0; i < node_count; ++i) all[i] = static_cast<NodeId>(i);
  const auto want = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(node_count))));
  if (want >= node_count) return all;
  Rng rng(seed);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < want; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, node_count - i));
    std::swap(all[i], all[j]);
  }
  all.resize(want);
  std::sort(all.begin(), all.end());
  return all;
}

ReconstructionResult reconstruct(const EdgeScorer& score, const DirectedGraph& g,
                                 std::span<const NodeId> test_nodes, const ReconstructionConfig& cfg) {
  cfg.validate(g.node_count());
  if (test_nodes.empty()) throw ConfigError("reconstruction needs at least one test node");
  const auto nk = cfg.k_values.size();
  const auto kmax = static_cast<std::size_t>(*std::max_element(cfg.k_values.begin(), cfg.k_values.end()));
  const auto n = g.node_count();

  // per_node[t * nk + q] = harmonic score of test node t at k_values[q].
  std::vector<double> per_node(test_nodes.size() * nk);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<std::pair<double, NodeId>> buf;
    std::vector<double> p_out(nk), p_in(nk);
    for (std::size_t t = begin; t < end; ++t) {
      const NodeId v = test_nodes[t];
      side_precision(rank(score, n, v, true, kmax, buf), g, v, true, cfg.k_values,
                     cfg.zero_degree_threshold, p_out);
      side_precision(rank(score, n, v, false, kmax, buf), g, v, false, cfg.k_values,
                     cfg.zero_degree_threshold, p_in);
      for (std::size_t q = 0; q < nk; ++q)
        per_node[t * nk + q] = harmonic_score({p_out[q], p_in[q]}, cfg.epsilon);
    }
  };

  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), test_nodes.size());
  if (threads <= 1) {
    work(0, test_nodes.size());
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w)
      pool.emplace_back(work, test_nodes.size() * w / threads, test_nodes.size() * (w + 1) / threads);
  }

  ReconstructionResult result{cfg.k_values, std::vector<double>(nk, 0.0)};
  for (std::size_t t = 0; t < test_nodes.size(); ++t)
    for (std::size_t q = 0; q < nk; ++q) result.mean_score[q] += per_node[t * nk + q];
  for (double& s : result.mean_score) s /= static_cast<double>(test_nodes.size());
  return result;
}

}  // namespace nerd
