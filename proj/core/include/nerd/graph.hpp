#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nerd/types.hpp"

namespace nerd {

struct Edge {
  NodeId src;
  NodeId dst;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node;
  double weight;
};

/// External label <-> dense id in [0, N). Ids are assigned in first-seen
/// order.
class IdMap {
 public:
  IdMap() = default;
  explicit IdMap(std::vector<std::string> labels);

  /// Returns the id for `label`, assigning the next free id if unseen.
  NodeId intern(std::string_view label);
  /// Throws ConfigError when the label is unknown.
  NodeId at(std::string_view label) const;
  bool contains(std::string_view label) const;
  const std::string& label(NodeId id) const { return labels_.at(id); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

  /// Identity map "0".."n-1".
  static IdMap numeric(std::size_t n);

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> ids_;
};

/// Immutable weighted digraph with compressed out- and in-adjacency.
///
/// Parallel edges are merged (weights summed) at construction and every
/// node must carry at least one incident edge. Degrees are weighted.
class DirectedGraph {
 public:
  /// Builds from an edge list over nodes [0, node_count). Throws ConfigError
  /// on an out-of-range endpoint, a nonpositive weight, or an isolated node.
  DirectedGraph(std::size_t node_count, std::span<const Edge> edges, IdMap ids = {});

  std::size_t node_count() const noexcept { return d_out_.size(); }
  /// Number of distinct (src, dst) pairs after merging.
  std::size_t edge_count() const noexcept { return out_nbrs_.size(); }
  double volume() const noexcept { return vol_; }

  double out_degree(NodeId v) const { return d_out_[v]; }
  double in_degree(NodeId v) const { return d_in_[v]; }
  std::span<const double> out_degrees() const noexcept { return d_out_; }
  std::span<const double> in_degrees() const noexcept { return d_in_; }
  double degree(NodeId v, Role r) const { return r == Role::source ? d_out_[v] : d_in_[v]; }

  /// Out-neighbors of v sorted by id.
  std::span<const Neighbor> out_neighbors(NodeId v) const {
    return {out_nbrs_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
  }
  /// In-neighbors of v sorted by id.
  std::span<const Neighbor> in_neighbors(NodeId v) const {
    return {in_nbrs_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
  }

  /// Weight of (u, v), or 0 when absent. O(log deg).
  double weight(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return weight(u, v) > 0.0; }

  /// Merged edges ordered by (src, dst).
  std::vector<Edge> edges() const;

  const IdMap& ids() const noexcept { return ids_; }

 private:
  std::vector<std::size_t> out_offsets_;
  std::vector<Neighbor> out_nbrs_;
  std::vector<std::size_t> in_offsets_;
  std::vector<Neighbor> in_nbrs_;
  std::vector<double> d_out_;
  std::vector<double> d_in_;
  double vol_ = 0.0;
  IdMap ids_;
};

/// Parses `src dst [weight]` lines. '#' starts a comment line, blank lines
/// are skipped. Throws ParseError carrying the offending line number.
DirectedGraph load_edge_list(std::istream& in, double default_weight = 1.0);
DirectedGraph load_edge_list_file(const std::string& path, double default_weight = 1.0);

/// Writes `src dst [weight]` lines using external labels; the weight column
/// is omitted for unit weights.
void write_edge_list(std::ostream& out, const IdMap& ids, std::span<const Edge> edges);

/// `label<TAB>dense_id` per line.
void write_id_map(std::ostream& out, const IdMap& ids);
IdMap read_id_map(std::istream& in);

}  // namespace nerd
