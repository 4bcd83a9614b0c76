#include "nerd/walks.hpp"

#include <ostream>
#include <string>

namespace nerd {

const char* to_string(WalkKind k) noexcept {
  return k == WalkKind::source_walk ? "source" : "target";
}

namespace {

template <class NeighborsOf>
void fill_table(const DirectedGraph& g, NeighborsOf nbrs_of, std::vector<double>& prob,
                std::vector<std::uint32_t>& alias, std::vector<std::size_t>& offsets) {
  const auto n = g.node_count();
  offsets.assign(n + 1, 0);
  prob.clear();
  alias.clear();
  std::vector<double> w;
  for (NodeId v = 0; v < n; ++v) {
    const auto nbrs = nbrs_of(v);
    offsets[v + 1] = offsets[v] + nbrs.size();
    if (nbrs.empty()) continue;
    w.resize(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) w[i] = nbrs[i].weight;
    const AliasTable t(w);
    prob.insert(prob.end(), t.prob().begin(), t.prob().end());
    alias.insert(alias.end(), t.alias().begin(), t.alias().end());
  }
}

}  // namespace

AlternatingWalker::AlternatingWalker(const DirectedGraph& g)
    : g_(&g),
      start_out_(degree_distribution(g, Role::source)),
      start_in_(degree_distribution(g, Role::target)) {
  fill_table(
      g, [&](NodeId v) { return g.out_neighbors(v); }, out_table_.prob, out_table_.alias, out_offsets_);
  fill_table(
      g, [&](NodeId v) { return g.in_neighbors(v); }, in_table_.prob, in_table_.alias, in_offsets_);
}

NodeId AlternatingWalker::draw(std::span<const Neighbor> nbrs, const NeighborTable& t,
                               std::size_t offset, Rng& rng) noexcept {
  const auto k = nbrs.size();
  if (k == 1) return nbrs[0].node;
  const double u = uniform01(rng) * static_cast<double>(k);
  auto slot = static_cast<std::size_t>(u);
  if (slot >= k) slot = k - 1;
  const auto pick = (u - static_cast<double>(slot)) < t.prob[offset + slot] ? slot : t.alias[offset + slot];
  return nbrs[pick].node;
}

NodeId AlternatingWalker::step(NodeId v, Direction dir, Rng& rng) const {
  if (dir == Direction::forward) {
    const auto nbrs = g_->out_neighbors(v);
    if (nbrs.empty()) throw DeadEndError("node " + std::to_string(v) + " has no out-edge");
    return draw(nbrs, out_table_, out_offsets_[v], rng);
  }
  const auto nbrs = g_->in_neighbors(v);
  if (nbrs.empty()) throw DeadEndError("node " + std::to_string(v) + " has no in-edge");
  return draw(nbrs, in_table_, in_offsets_[v], rng);
}

NodeId AlternatingWalker::start(WalkKind kind, Rng& rng) const {
  return kind == WalkKind::source_walk ? start_out_.sample(rng) : start_in_.sample(rng);
}

void AlternatingWalker::sample_into(WalkKind kind, int pairs, Rng& rng,
                                    std::vector<NodeId>& nodes) const {
  if (pairs < 1) throw ConfigError("walk needs at least one pair");
  const std::size_t len = 2 * static_cast<std::size_t>(pairs) + 1;
  nodes.resize(len);
  nodes[0] = start(kind, rng);
  // Step i (1-based) is forward when odd for a source walk, backward for a target walk.
  const Direction first = kind == WalkKind::source_walk ? Direction::forward : Direction::backward;
  const Direction second = kind == WalkKind::source_walk ? Direction::backward : Direction::forward;
  for (std::size_t i = 1; i < len; ++i)
    nodes[i] = step(nodes[i - 1], (i % 2 == 1) ? first : second, rng);
}

WalkSample AlternatingWalker::sample(WalkKind kind, int pairs, Rng& rng) const {
  WalkSample w;
  w.kind = kind;
  sample_into(kind, pairs, rng, w.nodes);
  return w;
}

bool is_valid_walk(const DirectedGraph& g, const WalkSample& w) {
  for (std::size_t i = 0; i + 1 < w.nodes.size(); ++i) {
    const NodeId a = w.nodes[i];
    const NodeId b = w.nodes[i + 1];
    // The node in the source role must be the edge origin.
    const bool ok = w.role_at(i) == Role::source ? g.has_edge(a, b) : g.has_edge(b, a);
    if (!ok) return false;
  }
  return !w.nodes.empty();
}

void write_walk(std::ostream& out, const IdMap& ids, const WalkSample& w) {
  out << to_string(w.kind) << ':';
  for (NodeId v : w.nodes) out << ' ' << ids.label(v);
  out << '\n';
}

}  // namespace nerd
