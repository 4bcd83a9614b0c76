#include "nerd/classification.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace nerd {

LabelSet load_labels(std::istream& in, const IdMap& ids) {
  LabelSet out;
  out.labels.assign(ids.size(), {});
  std::unordered_map<std::string, int> label_id;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string node, label;
    if (!(fields >> node) || node.front() == '#') continue;
    if (!(fields >> label)) throw ParseError(lineno, "expected 'node label'");
    const NodeId v = ids.at(node);
    auto [it, inserted] = label_id.emplace(label, static_cast<int>(out.names.size()));
    if (inserted) out.names.push_back(label);
    auto& set = out.labels[v];
    if (std::find(set.begin(), set.end(), it->second) == set.end()) set.push_back(it->second);
  }
  return out;
}

void LogisticRegression::fit(std::span<const double> features, std::size_t dim,
                             std::span<const int> targets, const LogisticConfig& cfg) {
  const std::size_t n = targets.size();
  w_.assign(dim + 1, 0.0);
  if (n == 0) return;
  std::vector<double> grad(dim + 1);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = features.subspan(i * dim, dim);
      const double p = 1.0 / (1.0 + std::exp(-decision(x)));
      const double r = p - static_cast<double>(targets[i]);
      for (std::size_t k = 0; k < dim; ++k) grad[k] += r * x[k];
      grad[dim] += r;
    }
    for (std::size_t k = 0; k <= dim; ++k) {
      double g = grad[k] / static_cast<double>(n);
      if (k < dim) g += cfg.l2 * w_[k];
      w_[k] -= cfg.step * g;
    }
  }
}

double LogisticRegression::decision(std::span<const double> x) const noexcept {
  double z = w_.back();
  for (std::size_t k = 0; k < x.size(); ++k) z += w_[k] * x[k];
  return z;
}

Matrix classification_features(const EmbeddingPair& e, int concat_dim) {
  if (concat_dim < 1 || e.dim() < static_cast<std::size_t>(concat_dim))
    throw ConfigError("embedding dimension " + std::to_string(e.dim()) +
                      " is smaller than the per-role feature dimension " + std::to_string(concat_dim));
  const auto half = static_cast<std::size_t>(concat_dim);
  Matrix f(e.node_count(), 2 * half);
  for (std::size_t v = 0; v < e.node_count(); ++v) {
    auto out = f.row(v);
    for (Role r : {Role::source, Role::target}) {
      const auto src = e.of(r).row(v).first(half);
      double norm = 0.0;
      for (double x : src) norm += x * x;
      norm = std::sqrt(norm);
      const std::size_t base = r == Role::source ? 0 : half;
      for (std::size_t k = 0; k < half; ++k) out[base + k] = norm > 0.0 ? src[k] / norm : 0.0;
    }
  }
  return f;
}

std::vector<int> make_folds(std::size_t count, int folds, std::uint64_t seed) {
  if (folds < 2) throw ConfigError("need at least two folds");
  if (count < static_cast<std::size_t>(folds))
    throw ConfigError("fewer labeled nodes than folds");
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = count; i > 1; --i)
    std::swap(order[i - 1], order[static_cast<std::size_t>(uniform_below(rng, i))]);
  std::vector<int> fold(count);
  for (std::size_t pos = 0; pos < count; ++pos)
    fold[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(folds));
  return fold;
}

F1Scores f1_scores(std::span<const std::vector<int>> truth, std::span<const std::vector<int>> predicted,
                   std::size_t num_labels) {
  std::vector<std::size_t> tp(num_labels, 0), fp(num_labels, 0), fn(num_labels, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (int l : predicted[i]) {
      const bool hit = std::find(truth[i].begin(), truth[i].end(), l) != truth[i].end();
      ++(hit ? tp : fp)[static_cast<std::size_t>(l)];
    }
    for (int l : truth[i])
      if (std::find(predicted[i].begin(), predicted[i].end(), l) == predicted[i].end())
        ++fn[static_cast<std::size_t>(l)];
  }
  std::size_t all_tp = 0, all_fp = 0, all_fn = 0, active = 0;
  double macro_sum = 0.0;
  for (std::size_t l = 0; l < num_labels; ++l) {
    all_tp += tp[l];
    all_fp += fp[l];
    all_fn += fn[l];
    const std::size_t denom = 2 * tp[l] + fp[l] + fn[l];
    if (denom == 0) continue;
    ++active;
    macro_sum += 2.0 * static_cast<double>(tp[l]) / static_cast<double>(denom);
  }
  const std::size_t denom = 2 * all_tp + all_fp + all_fn;
  F1Scores s;
  s.micro = denom == 0 ? 0.0 : 2.0 * static_cast<double>(all_tp) / static_cast<double>(denom);
  s.macro = active == 0 ? 0.0 : macro_sum / static_cast<double>(active);
  return s;
}

F1Scores classify_cv(const Matrix& features, const LabelSet& labels, int folds, std::uint64_t seed,
                     const LogisticConfig& lr) {
  if (labels.labels.size() != features.rows())
    throw ConfigError("label set and feature matrix disagree on node count");
  std::vector<std::size_t> nodes;
  for (std::size_t v = 0; v < labels.labels.size(); ++v)
    if (!labels.labels[v].empty()) nodes.push_back(v);
  const auto fold_of = make_folds(nodes.size(), folds, seed);
  const std::size_t dim = features.cols();
  const std::size_t num_labels = labels.num_labels();

  F1Scores mean;
  for (int f = 0; f < folds; ++f) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < nodes.size(); ++i) (fold_of[i] == f ? test : train).push_back(nodes[i]);

    std::vector<double> x;
    x.reserve(train.size() * dim);
    for (auto v : train) {
      const auto row = features.row(v);
      x.insert(x.end(), row.begin(), row.end());
    }
    std::vector<LogisticRegression> models(num_labels);
    std::vector<bool> seen(num_labels, false);
    std::vector<int> y(train.size());
    for (std::size_t l = 0; l < num_labels; ++l) {
      for (std::size_t i = 0; i < train.size(); ++i) {
        const auto& set = labels.labels[train[i]];
        y[i] = std::find(set.begin(), set.end(), static_cast<int>(l)) != set.end();
        if (y[i]) seen[l] = true;
      }
      if (seen[l]) models[l].fit(x, dim, y, lr);
    }

    std::vector<std::vector<int>> truth, predicted;
    std::vector<std::pair<double, int>> ranked;
    for (auto v : test) {
      const auto& set = labels.labels[v];
      ranked.clear();
      for (std::size_t l = 0; l < num_labels; ++l)
        if (seen[l]) ranked.emplace_back(models[l].decision(features.row(v)), static_cast<int>(l));
      std::sort(ranked.begin(), ranked.end(),
                [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
      std::vector<int> pick;
      for (std::size_t m = 0; m < set.size() && m < ranked.size(); ++m) pick.push_back(ranked[m].second);
      truth.push_back(set);
      predicted.push_back(std::move(pick));
    }
    const auto s = f1_scores(truth, predicted, num_labels);
    mean.micro += s.micro;
    mean.macro += s.macro;
  }
  mean.micro /= folds;
  mean.macro /= folds;
  return mean;
}

F1Scores classify_cv(const EmbeddingPair& e, const LabelSet& labels, int folds, int concat_dim,
                     std::uint64_t seed) {
  return classify_cv(classification_features(e, concat_dim), labels, folds, seed);
}

}  // namespace nerd
