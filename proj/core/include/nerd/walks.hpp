#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "nerd/graph.hpp"
#include "nerd/sampling.hpp"

namespace nerd {

enum class WalkKind : std::uint8_t { source_walk, target_walk };

/// forward follows an out-edge v -> v', backward follows an in-edge v' -> v.
enum class Direction : std::uint8_t { forward, backward };

constexpr Role start_role(WalkKind k) noexcept {
  return k == WalkKind::source_walk ? Role::source : Role::target;
}

const char* to_string(WalkKind k) noexcept;

/// Node sequence of an alternating walk. Position i has role start_role(kind)
/// when i is even and the opposite role when i is odd.
struct WalkSample {
  WalkKind kind = WalkKind::source_walk;
  std::vector<NodeId> nodes;

  Role role_at(std::size_t i) const noexcept {
    return i % 2 == 0 ? start_role(kind) : opposite(start_role(kind));
  }
};

/// Samples alternating source/target walks.
///
/// Holds the two start distributions (P_out, P_in) and a per-node alias
/// table over out- and in-neighbors laid out parallel to the graph's CSR
/// arrays, so every transition is O(1). The graph must outlive the walker.
class AlternatingWalker {
 public:
  explicit AlternatingWalker(const DirectedGraph& g);

  const DirectedGraph& graph() const noexcept { return *g_; }

  /// One step of the alternating kernel. forward picks v' with probability
  /// w(v, v') / d_out(v); backward picks v' with probability w(v', v) / d_in(v).
  /// Throws DeadEndError when v has no edge in that direction.
  NodeId step(NodeId v, Direction dir, Rng& rng) const;

  /// Start node drawn from P_out (source walk) or P_in (target walk).
  NodeId start(WalkKind kind, Rng& rng) const;

  /// Fills `nodes` with a walk of 2 * pairs + 1 nodes. Reuses the buffer.
  void sample_into(WalkKind kind, int pairs, Rng& rng, std::vector<NodeId>& nodes) const;
  WalkSample sample(WalkKind kind, int pairs, Rng& rng) const;

 private:
  struct NeighborTable {
    std::vector<double> prob;
    std::vector<std::uint32_t> alias;
  };
  static NodeId draw(std::span<const Neighbor> nbrs, const NeighborTable& t, std::size_t offset,
                     Rng& rng) noexcept;

  const DirectedGraph* g_;
  AliasTable start_out_;
  AliasTable start_in_;
  NeighborTable out_table_;
  NeighborTable in_table_;
  std::vector<std::size_t> out_offsets_;
  std::vector<std::size_t> in_offsets_;
};

/// Free-function form of AlternatingWalker::step.
inline NodeId walk_transition(const AlternatingWalker& walker, NodeId v, Direction dir, Rng& rng) {
  return walker.step(v, dir, rng);
}

/// Start node by kind, then n forward/backward (source walk) or
/// backward/forward (target walk) step pairs. Never stalls: a node entered
/// forward has an in-edge and a node entered backward has an out-edge.
inline WalkSample sample_alternating_walk(const AlternatingWalker& walker, WalkKind kind, int pairs,
                                          Rng& rng) {
  return walker.sample(kind, pairs, rng);
}

/// Checks role alternation and edge existence for every consecutive pair.
bool is_valid_walk(const DirectedGraph& g, const WalkSample& w);

/// `kind: v0 v1 ... v2n` using external labels.
void write_walk(std::ostream& out, const IdMap& ids, const WalkSample& w);

}  // namespace nerd
