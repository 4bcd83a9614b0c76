#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nerd/embedding.hpp"
#include "nerd/graph.hpp"

namespace nerd {

/// Per-node label sets. Nodes without labels have an empty set and are left
/// out of cross-validation.
struct LabelSet {
  std::vector<std::vector<int>> labels;
  std::vector<std::string> names;

  std::size_t num_labels() const noexcept { return names.size(); }
};

/// `node<ws>label` lines; repeating a node gives it several labels. Throws
/// ConfigError for a node not in `ids`.
LabelSet load_labels(std::istream& in, const IdMap& ids);

/// Fixed harness constants for one-vs-rest logistic regression.
struct LogisticConfig {
  double l2 = 1e-4;
  int epochs = 200;
  double step = 0.1;
};

/// Binary L2-regularized logistic regression fit by full-batch gradient
/// descent. Weights include a trailing bias term.
class LogisticRegression {
 public:
  LogisticRegression() = default;
  /// `features` is row-major with `dim` columns; `targets` are 0/1.
  void fit(std::span<const double> features, std::size_t dim, std::span<const int> targets,
           const LogisticConfig& cfg);
  double decision(std::span<const double> x) const noexcept;

 private:
  std::vector<double> w_;
};

/// L2-normalized first `concat_dim` source coordinates followed by the same
/// for target coordinates. Throws ConfigError when d < concat_dim.
Matrix classification_features(const EmbeddingPair& e, int concat_dim);

/// Fold index in [0, folds) for each of `count` items: a seeded shuffle
/// dealt round-robin, so fold sizes differ by at most one.
std::vector<int> make_folds(std::size_t count, int folds, std::uint64_t seed);

struct F1Scores {
  double micro = 0.0;
  double macro = 0.0;
};

/// Micro and macro F1 over label sets. Macro averages over labels that occur
/// in truth or prediction.
F1Scores f1_scores(std::span<const std::vector<int>> truth, std::span<const std::vector<int>> predicted,
                   std::size_t num_labels);

/// k-fold one-vs-rest classification. A node with m true labels is assigned
/// its m top-scoring labels; labels unseen in a training fold are never
/// predicted in that fold. Returns fold-averaged micro/macro F1.
F1Scores classify_cv(const Matrix& features, const LabelSet& labels, int folds, std::uint64_t seed,
                     const LogisticConfig& lr = {});

/// classify_cv on classification_features(e, concat_dim).
F1Scores classify_cv(const EmbeddingPair& e, const LabelSet& labels, int folds = 5,
                     int concat_dim = 64, std::uint64_t seed = 1);

}  // namespace nerd
