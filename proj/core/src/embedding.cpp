#include "nerd/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace nerd {

bool EmbeddingPair::all_finite() const noexcept {
  for (double x : source.data())
    if (!std::isfinite(x)) return false;
  for (double x : target.data())
    if (!std::isfinite(x)) return false;
  return true;
}

namespace {

void write_matrix(const Matrix& m, const IdMap& ids, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[32];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << ids.label(static_cast<NodeId>(r));
    for (double x : m.row(r)) {
      std::snprintf(buf, sizeof buf, " %.6g", x);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

struct RoleFile {
  Matrix m;
  std::vector<std::string> labels;
};

RoleFile read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  std::size_t rows = 0, cols = 0;
  {
    if (!std::getline(in, line)) throw FormatError(path + ": missing header");
    std::istringstream hdr(line);
    std::string extra;
    if (!(hdr >> rows >> cols) || (hdr >> extra) || cols == 0)
      throw FormatError(path + ": header must be 'N d'");
  }
  RoleFile f{Matrix(rows, cols), {}};
  f.labels.reserve(rows);
  std::size_t r = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (r == rows) throw FormatError(path + ": more rows than header N=" + std::to_string(rows));
    std::istringstream fields(line);
    std::string label;
    fields >> label;
    auto row = f.m.row(r);
    for (std::size_t c = 0; c < cols; ++c)
      if (!(fields >> row[c]))
        throw FormatError(path + ": row " + std::to_string(r + 1) + " has fewer than d values");
    std::string extra;
    if (fields >> extra)
      throw FormatError(path + ": row " + std::to_string(r + 1) + " has more than d values");
    f.labels.push_back(std::move(label));
    ++r;
  }
  if (r != rows)
    throw FormatError(path + ": header says " + std::to_string(rows) + " rows, found " +
                      std::to_string(r));
  return f;
}

}  // namespace

void save_embeddings(const EmbeddingPair& e, const IdMap& ids, const std::string& prefix) {
  if (ids.size() != e.node_count()) throw ConfigError("id map size does not match embeddings");
  write_matrix(e.source, ids, prefix + ".src");
  write_matrix(e.target, ids, prefix + ".tgt");
}

LabeledEmbeddings load_embeddings(const std::string& prefix) {
  auto src = read_matrix(prefix + ".src");
  auto tgt = read_matrix(prefix + ".tgt");
  if (src.m.rows() != tgt.m.rows() || src.m.cols() != tgt.m.cols())
    throw FormatError(prefix + ": .src and .tgt dimensions differ");
  if (src.labels != tgt.labels) throw FormatError(prefix + ": .src and .tgt row labels differ");
  LabeledEmbeddings out;
  out.embeddings.source = std::move(src.m);
  out.embeddings.target = std::move(tgt.m);
  out.labels = std::move(src.labels);
  return out;
}

EmbeddingPair align_embeddings(const LabeledEmbeddings& loaded, const IdMap& ids) {
  std::unordered_map<std::string_view, std::size_t> row_of;
  for (std::size_t r = 0; r < loaded.labels.size(); ++r) row_of.emplace(loaded.labels[r], r);
  const auto dim = loaded.embeddings.dim();
  EmbeddingPair out(ids.size(), dim);
  for (NodeId v = 0; v < ids.size(); ++v) {
    auto it = row_of.find(ids.label(v));
    if (it == row_of.end()) throw ConfigError("no embedding for node '" + ids.label(v) + "'");
    for (Role r : {Role::source, Role::target}) {
      const auto from = loaded.embeddings.of(r).row(it->second);
      auto to = out.of(r).row(v);
      std::copy(from.begin(), from.end(), to.begin());
    }
  }
  return out;
}

}  // namespace nerd
