#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nerd/graph.hpp"
#include "nerd/types.hpp"

namespace nerd {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Source-role and target-role vectors, one row per node in each.
struct EmbeddingPair {
  Matrix source;
  Matrix target;

  EmbeddingPair() = default;
  EmbeddingPair(std::size_t nodes, std::size_t dim) : source(nodes, dim), target(nodes, dim) {}

  std::size_t node_count() const noexcept { return source.rows(); }
  std::size_t dim() const noexcept { return source.cols(); }

  Matrix& of(Role r) noexcept { return r == Role::source ? source : target; }
  const Matrix& of(Role r) const noexcept { return r == Role::source ? source : target; }

  bool all_finite() const noexcept;

  friend bool operator==(const EmbeddingPair&, const EmbeddingPair&) = default;
};

/// Embeddings together with the external label of each row.
struct LabeledEmbeddings {
  EmbeddingPair embeddings;
  std::vector<std::string> labels;
};

/// Writes `<prefix>.src` and `<prefix>.tgt` in word2vec text format: a header
/// line "N d", then `label v1 ... vd` per row with 6 significant digits.
void save_embeddings(const EmbeddingPair& e, const IdMap& ids, const std::string& prefix);

/// Reads both role files. Throws FormatError when a header disagrees with its
/// rows or the two files disagree on N, d, or row labels.
LabeledEmbeddings load_embeddings(const std::string& prefix);

/// Reorders loaded rows to follow `ids` (row v holds the node with dense id v).
/// Throws ConfigError when a label in `ids` has no embedding.
EmbeddingPair align_embeddings(const LabeledEmbeddings& loaded, const IdMap& ids);

}  // namespace nerd
