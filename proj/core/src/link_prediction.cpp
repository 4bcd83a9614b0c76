#include "nerd/link_prediction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nerd {

double edge_score(const EmbeddingPair& e, NodeId i, NodeId j) noexcept {
  const auto s = e.source.row(i);
  const auto t = e.target.row(j);
  double dot = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) dot += s[k] * t[k];
  return 1.0 / (1.0 + std::exp(-dot));
}

EdgeScorer embedding_scorer(const EmbeddingPair& e) {
  return [&e](NodeId i, NodeId j) { return edge_score(e, i, j); };
}

EdgeScorer symmetrized(EdgeScorer inner) {
  return [inner = std::move(inner)](NodeId i, NodeId j) {
    // Fixed operand order so that score(i, j) == score(j, i) bit for bit.
    const NodeId a = std::min(i, j);
    const NodeId b = std::max(i, j);
    return 0.5 * (inner(a, b) + inner(b, a));
  };
}

namespace {

template <class T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace

NegativeSet make_negatives(const DirectedGraph& g, std::span<const NodePair> positives,
                           double invert_fraction, Rng& rng) {
  if (!(invert_fraction >= 0.0 && invert_fraction <= 1.0))
    throw ConfigError("invert fraction must lie in [0, 1]");
  const auto n = g.node_count();
  if (n < 2) throw SplitError("need at least two nodes to sample non-edges");
  const std::size_t budget = 100 * positives.size();
  std::size_t failures = 0;

  auto random_non_edge = [&]() -> NodePair {
    for (;;) {
      const auto u = static_cast<NodeId>(uniform_below(rng, n));
      const auto v = static_cast<NodeId>(uniform_below(rng, n));
      if (u != v && !g.has_edge(u, v)) return {u, v};
      if (++failures > budget)
        throw SplitError("could not find enough non-edges after " + std::to_string(budget) +
                         " attempts");
    }
  };

  NegativeSet out;
  out.edges.reserve(positives.size());
  const auto inverted = static_cast<std::size_t>(
      std::llround(invert_fraction * static_cast<double>(positives.size())));
  for (std::size_t k = 0; k < positives.size(); ++k) {
    if (k < inverted) {
      const auto [v, w] = positives[k];
      if (!g.has_edge(w, v)) {
        out.edges.emplace_back(w, v);
        continue;
      }
      ++out.substitutions;
    }
    out.edges.push_back(random_non_edge());
  }
  return out;
}

EvalSplit make_lp_split(const DirectedGraph& g, double test_fraction, double invert_fraction,
                        std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ConfigError("test fraction must lie in (0, 1)");
  if (!(invert_fraction >= 0.0 && invert_fraction <= 1.0))
    throw ConfigError("invert fraction must lie in [0, 1]");
  Rng rng(seed);
  auto edges = g.edges();
  shuffle(edges, rng);

  std::vector<std::size_t> incident(g.node_count(), 0);
  for (const auto& e : edges) {
    ++incident[e.src];
    if (e.dst != e.src) ++incident[e.dst];
  }
  const auto target = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(edges.size())));
  if (target == 0) throw SplitError("test fraction selects no edges");

  std::vector<NodePair> pos;
  std::vector<Edge> kept;
  pos.reserve(target);
  kept.reserve(edges.size() - target);
  for (const auto& e : edges) {
    const bool removable =
        pos.size() < target && incident[e.src] > 1 && (e.src == e.dst || incident[e.dst] > 1);
    if (removable) {
      --incident[e.src];
      if (e.dst != e.src) --incident[e.dst];
      pos.emplace_back(e.src, e.dst);
    } else {
      kept.push_back(e);
    }
  }
  if (pos.size() < target)
    throw SplitError("only " + std::to_string(pos.size()) + " of " + std::to_string(target) +
                     " test edges removable without isolating a node");

  auto negatives = make_negatives(g, pos, invert_fraction, rng);
  return EvalSplit{DirectedGraph(g.node_count(), kept, g.ids()), std::move(pos),
                   std::move(negatives.edges), invert_fraction, seed, negatives.substitutions};
}

double auc(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty()) throw ConfigError("auc needs non-empty score lists");
  struct Item {
    double score;
    bool positive;
  };
  std::vector<Item> all;
  all.reserve(pos_scores.size() + neg_scores.size());
  for (double s : pos_scores) all.push_back({s, true});
  for (double s : neg_scores) all.push_back({s, false});
  std::sort(all.begin(), all.end(), [](const Item& a, const Item& b) { return a.score < b.score; });

  // Sum of average 1-based ranks of the positives. Twice the rank keeps
  // tie averages integral.
  double twice_rank_sum = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    std::size_t npos = 0;
    while (j < all.size() && all[j].score == all[i].score) npos += all[j++].positive;
    const double twice_avg = static_cast<double>(i + 1 + j);
    twice_rank_sum += twice_avg * static_cast<double>(npos);
    i = j;
  }
  const double p = static_cast<double>(pos_scores.size());
  const double q = static_cast<double>(neg_scores.size());
  return (twice_rank_sum - p * (p + 1.0)) / (2.0 * p * q);
}

double link_prediction_auc(const EdgeScorer& score, std::span<const NodePair> pos,
                           std::span<const NodePair> neg) {
  std::vector<double> ps, ns;
  ps.reserve(pos.size());
  ns.reserve(neg.size());
  for (auto [i, j] : pos) ps.push_back(score(i, j));
  for (auto [i, j] : neg) ns.push_back(score(i, j));
  return auc(ps, ns);
}

namespace {

void write_pairs(const std::string& path, const IdMap& ids, std::span<const NodePair> pairs) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (auto [i, j] : pairs) out << ids.label(i) << ' ' << ids.label(j) << '\n';
}

}  // namespace

void save_split(const EvalSplit& split, const std::string& prefix) {
  const auto& ids = split.train_graph.ids();
  {
    std::ofstream out(prefix + ".train");
    if (!out) throw IoError("cannot write '" + prefix + ".train'");
    const auto edges = split.train_graph.edges();
    write_edge_list(out, ids, edges);
  }
  write_pairs(prefix + ".test.pos", ids, split.pos_edges);
  write_pairs(prefix + ".test.neg", ids, split.neg_edges);
}

std::vector<std::pair<std::string, std::string>> read_pairs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a) || a.front() == '#') continue;
    if (!(fields >> b)) throw ParseError(lineno, "expected 'src dst'");
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

}  // namespace nerd
