#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nerd/embedding.hpp"
#include "nerd/graph.hpp"
#include "nerd/sampling.hpp"
#include "nerd/walks.hpp"

namespace nerd {

struct TrainConfig {
  int dim = 128;
  /// Opposite-role context nodes per walk; walks have 2 * pairs + 1 nodes.
  int pairs = 1;
  int negatives = 3;
  /// Total number of walks. 0 means walks_per_node * N.
  std::uint64_t walks = 0;
  std::uint64_t walks_per_node = 800;
  double initial_lr = 0.025;
  bool joint = false;
  int threads = 1;
  std::uint64_t seed = 1;
  /// Print walks-completed percentage to stderr.
  bool report_progress = false;

  std::uint64_t total_walks(std::size_t node_count) const noexcept {
    return walks != 0 ? walks : walks_per_node * node_count;
  }
  /// Throws ConfigError on any invalid field.
  void validate() const;
};

/// Link-prediction preset: n = 1, kappa = 3, no joint training.
TrainConfig link_prediction_preset(TrainConfig base = {});
/// Reconstruction / classification preset: n = 10, kappa = 5, joint training.
TrainConfig reconstruction_preset(TrainConfig base = {});

/// rho0 * (1 - t / T), floored at rho0 * 1e-4.
double learning_rate(std::uint64_t walks_done, std::uint64_t total_walks, double initial_lr) noexcept;

/// Logistic function with the argument clamped to [-6, 6]. The table mode
/// reads a 1024-entry grid over the clamped domain.
class Sigmoid {
 public:
  static constexpr double max_arg = 6.0;
  static constexpr std::size_t table_size = 1024;

  enum class Mode : std::uint8_t { table, exact };

  explicit Sigmoid(Mode mode = Mode::table);

  double operator()(double x) const noexcept {
    if (x > max_arg) x = max_arg;
    if (x < -max_arg) x = -max_arg;
    if (mode_ == Mode::exact) return exact(x);
    const auto k = static_cast<std::size_t>((x + max_arg) * kScale + 0.5);
    return table_[k];
  }

  static double exact(double x) noexcept;
  Mode mode() const noexcept { return mode_; }

 private:
  static constexpr double kScale = static_cast<double>(table_size - 1) / (2.0 * max_arg);
  Mode mode_;
  std::array<double, table_size> table_{};
};

/// One SGNS step for the pair (u, v):
///   g = (label - sigma(u . v)) * lr
///   error += g * v   (pre-update v)
///   v     += g * u
/// Returns g. u is read only; its row is updated later from `error`.
double sgns_update(std::span<const double> u, std::span<double> v, int label, double lr,
                   const Sigmoid& sigmoid, std::span<double> error) noexcept;

/// Noise distributions for negative sampling, one per role.
struct NoiseTables {
  AliasTable source;
  AliasTable target;

  explicit NoiseTables(const DirectedGraph& g);
  const AliasTable& of(Role r) const noexcept { return r == Role::source ? source : target; }
};

/// Optional hook invoked for every sgns_update issued by train_walk. Used by
/// tests to count updates and check which distribution negatives come from.
struct UpdateObserver {
  virtual ~UpdateObserver() = default;
  virtual void on_update(Role input_role, NodeId input, Role context_role, NodeId context,
                         int label) = 0;
};

/// Per-thread scratch space reused across walks.
struct WalkScratch {
  std::vector<NodeId> nodes;
  std::vector<double> error;
};

/// Trains one walk whose first node is the input u in role start_role(kind).
///
/// For every odd position i < 2n: a positive update of (Phi_r(u), Phi_r'(W[i]))
/// and `negatives` updates against draws from the role-r' noise table. With
/// joint training each step also pairs Phi_r(u) with Phi_r(W[i+1]) and with
/// role-r noise draws. Context rows update immediately; the accumulated error
/// is added to Phi_r(u) once, after the walk.
void train_walk(std::span<const NodeId> walk, WalkKind kind, EmbeddingPair& emb,
                const TrainConfig& cfg, double lr, const NoiseTables& noise, const Sigmoid& sigmoid,
                Rng& rng, std::span<double> error, UpdateObserver* observer = nullptr);

/// Uniform initialization in [-0.5 / d, 0.5 / d] for both roles.
EmbeddingPair initial_embeddings(std::size_t nodes, int dim, std::uint64_t seed);

/// Runs total_walks(N) walks, each a source or target walk with probability
/// 1/2, with linearly decaying learning rate. With threads > 1 workers update
/// the shared matrices without locks; with threads == 1 the result is a
/// deterministic function of (graph, config).
EmbeddingPair train(const DirectedGraph& g, const TrainConfig& cfg);

}  // namespace nerd
