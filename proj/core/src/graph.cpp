#include "nerd/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nerd {

const char* to_string(Role r) noexcept { return r == Role::source ? "source" : "target"; }

IdMap::IdMap(std::vector<std::string> labels) {
  for (auto& l : labels) {
    if (contains(l)) throw ConfigError("duplicate node label '" + l + "'");
    intern(l);
  }
}

NodeId IdMap::intern(std::string_view label) {
  std::string key(label);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<NodeId>(labels_.size());
  labels_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

NodeId IdMap::at(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  if (it == ids_.end()) throw ConfigError("unknown node label '" + std::string(label) + "'");
  return it->second;
}

bool IdMap::contains(std::string_view label) const {
  return ids_.find(std::string(label)) != ids_.end();
}

IdMap IdMap::numeric(std::size_t n) {
  IdMap m;
  for (std::size_t i = 0; i < n; ++i) m.intern(std::to_string(i));
  return m;
}

namespace {

// Sorts by (a, b), merges duplicates and emits CSR arrays keyed on `a`.
void build_csr(std::size_t n, std::vector<std::pair<std::pair<NodeId, NodeId>, double>>& entries,
               std::vector<std::size_t>& offsets, std::vector<Neighbor>& nbrs) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  offsets.assign(n + 1, 0);
  nbrs.clear();
  nbrs.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    const auto key = entries[i].first;
    double w = 0.0;
    for (; i < entries.size() && entries[i].first == key; ++i) w += entries[i].second;
    nbrs.push_back({key.second, w});
    ++offsets[key.first + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
}

}  // namespace

DirectedGraph::DirectedGraph(std::size_t node_count, std::span<const Edge> edges, IdMap ids)
    : ids_(std::move(ids)) {
  if (ids_.size() == 0) ids_ = IdMap::numeric(node_count);
  if (ids_.size() != node_count)
    throw ConfigError("id map has " + std::to_string(ids_.size()) + " labels for " +
                      std::to_string(node_count) + " nodes");
  if (edges.empty()) throw ConfigError("graph has no edges");

  std::vector<std::pair<std::pair<NodeId, NodeId>, double>> fwd, bwd;
  fwd.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.src >= node_count || e.dst >= node_count)
      throw ConfigError("edge endpoint out of range");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw ConfigError("edge weight must be positive and finite");
    fwd.push_back({{e.src, e.dst}, e.weight});
  }
  build_csr(node_count, fwd, out_offsets_, out_nbrs_);
  // In-lists come from the merged out-lists so both sides carry identical weights.
  bwd.reserve(out_nbrs_.size());
  for (NodeId u = 0; u < node_count; ++u)
    for (const auto& nb : out_neighbors(u)) bwd.push_back({{nb.node, u}, nb.weight});
  build_csr(node_count, bwd, in_offsets_, in_nbrs_);

  d_out_.assign(node_count, 0.0);
  d_in_.assign(node_count, 0.0);
  for (NodeId v = 0; v < node_count; ++v) {
    for (const auto& nb : out_neighbors(v)) d_out_[v] += nb.weight;
    for (const auto& nb : in_neighbors(v)) d_in_[v] += nb.weight;
    if (d_out_[v] == 0.0 && d_in_[v] == 0.0)
      throw ConfigError("node '" + ids_.label(v) + "' is isolated");
  }
  for (const auto& nb : out_nbrs_) vol_ += nb.weight;
}

double DirectedGraph::weight(NodeId u, NodeId v) const {
  const auto nbrs = out_neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                             [](const Neighbor& nb, NodeId id) { return nb.node < id; });
  return (it != nbrs.end() && it->node == v) ? it->weight : 0.0;
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u)
    for (const auto& nb : out_neighbors(u)) out.push_back({u, nb.node, nb.weight});
  return out;
}

DirectedGraph load_edge_list(std::istream& in, double default_weight) {
  if (!(default_weight > 0.0)) throw ConfigError("default weight must be positive");
  IdMap ids;
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string src, dst, wtok, extra;
    if (!(fields >> src)) continue;  // blank
    if (src.front() == '#') continue;
    if (!(fields >> dst)) throw ParseError(lineno, "expected 'src dst [weight]'");
    double w = default_weight;
    if (fields >> wtok) {
      const char* first = wtok.data();
      const char* last = first + wtok.size();
      auto [ptr, ec] = std::from_chars(first, last, w);
      if (ec != std::errc{} || ptr != last)
        throw ParseError(lineno, "invalid weight '" + wtok + "'");
      if (!(w > 0.0) || !std::isfinite(w))
        throw ParseError(lineno, "weight must be positive, got '" + wtok + "'");
    }
    if (fields >> extra) throw ParseError(lineno, "unexpected trailing field '" + extra + "'");
    const NodeId u = ids.intern(src);
    const NodeId v = ids.intern(dst);
    edges.push_back({u, v, w});
  }
  if (edges.empty()) throw ParseError(lineno, "edge list contains no edges");
  const auto n = ids.size();
  return DirectedGraph(n, edges, std::move(ids));
}

DirectedGraph load_edge_list_file(const std::string& path, double default_weight) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list '" + path + "'");
  return load_edge_list(in, default_weight);
}

void write_edge_list(std::ostream& out, const IdMap& ids, std::span<const Edge> edges) {
  char buf[64];
  for (const auto& e : edges) {
    out << ids.label(e.src) << ' ' << ids.label(e.dst);
    if (e.weight != 1.0) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e.weight);
      out << ' ' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
}

void write_id_map(std::ostream& out, const IdMap& ids) {
  for (NodeId v = 0; v < ids.size(); ++v) out << ids.label(v) << '\t' << v << '\n';
}

IdMap read_id_map(std::istream& in) {
  std::vector<std::pair<NodeId, std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw ParseError(lineno, "expected 'label<TAB>id'");
    NodeId id{};
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, id);
    if (ec != std::errc{} || ptr != last) throw ParseError(lineno, "invalid dense id");
    rows.emplace_back(id, line.substr(0, tab));
  }
  std::sort(rows.begin(), rows.end());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i) throw FormatError("id map is not a dense 0..N-1 range");
    labels.push_back(std::move(rows[i].second));
  }
  return IdMap(std::move(labels));
}

}  // namespace nerd
