#include "nerd/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

namespace nerd {

void TrainConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (pairs < 1) throw ConfigError("pairs (n) must be >= 1");
  if (negatives < 1) throw ConfigError("negatives (kappa) must be >= 1");
  if (!(initial_lr > 0.0) || !std::isfinite(initial_lr)) throw ConfigError("learning rate must be > 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

TrainConfig link_prediction_preset(TrainConfig base) {
  base.pairs = 1;
  base.negatives = 3;
  base.joint = false;
  return base;
}

TrainConfig reconstruction_preset(TrainConfig base) {
  base.pairs = 10;
  base.negatives = 5;
  base.joint = true;
  return base;
}

double learning_rate(std::uint64_t walks_done, std::uint64_t total_walks, double initial_lr) noexcept {
  const double floor = initial_lr * 1e-4;
  if (total_walks == 0) return floor;
  const double frac = static_cast<double>(std::min(walks_done, total_walks)) /
                      static_cast<double>(total_walks);
  return std::max(initial_lr * (1.0 - frac), floor);
}

double Sigmoid::exact(double x) noexcept { return 1.0 / (1.0 + std::exp(-x)); }

Sigmoid::Sigmoid(Mode mode) : mode_(mode) {
  for (std::size_t k = 0; k < table_size; ++k)
    table_[k] = exact(-max_arg + static_cast<double>(k) / kScale);
}

double sgns_update(std::span<const double> u, std::span<double> v, int label, double lr,
                   const Sigmoid& sigmoid, std::span<double> error) noexcept {
  const std::size_t d = v.size();
  double dot = 0.0;
  for (std::size_t k = 0; k < d; ++k) dot += u[k] * v[k];
  const double g = (static_cast<double>(label) - sigmoid(dot)) * lr;
  for (std::size_t k = 0; k < d; ++k) {
    const double vk = v[k];
    error[k] += g * vk;
    v[k] = vk + g * u[k];
  }
  return g;
}

NoiseTables::NoiseTables(const DirectedGraph& g)
    : source(noise_distribution(g, Role::source)), target(noise_distribution(g, Role::target)) {}

void train_walk(std::span<const NodeId> walk, WalkKind kind, EmbeddingPair& emb,
                const TrainConfig& cfg, double lr, const NoiseTables& noise, const Sigmoid& sigmoid,
                Rng& rng, std::span<double> error, UpdateObserver* observer) {
  const Role role = start_role(kind);
  const Role other = opposite(role);
  const std::size_t last = 2 * static_cast<std::size_t>(cfg.pairs);
  if (walk.size() < last + 1) throw ConfigError("walk shorter than 2n+1 nodes");

  const NodeId u = walk[0];
  auto u_row = emb.of(role).row(u);
  std::fill(error.begin(), error.end(), 0.0);
  Matrix& opposite_rows = emb.of(other);
  Matrix& same_rows = emb.of(role);

  for (std::size_t i = 1; i < last; i += 2) {
    for (int j = 0; j <= cfg.negatives; ++j) {
      NodeId v1, v2 = 0;
      int label;
      if (j == 0) {
        v1 = walk[i];
        v2 = walk[i + 1];
        label = 1;
      } else {
        v1 = noise.of(other).sample(rng);
        if (cfg.joint) v2 = noise.of(role).sample(rng);
        label = 0;
      }
      sgns_update(u_row, opposite_rows.row(v1), label, lr, sigmoid, error);
      if (observer) observer->on_update(role, u, other, v1, label);
      if (cfg.joint) {
        sgns_update(u_row, same_rows.row(v2), label, lr, sigmoid, error);
        if (observer) observer->on_update(role, u, role, v2, label);
      }
    }
  }
  for (std::size_t k = 0; k < u_row.size(); ++k) u_row[k] += error[k];
}

EmbeddingPair initial_embeddings(std::size_t nodes, int dim, std::uint64_t seed) {
  EmbeddingPair emb(nodes, static_cast<std::size_t>(dim));
  Rng rng(seed);
  const double half = 0.5 / dim;
  for (Role r : {Role::source, Role::target})
    for (double& x : emb.of(r).data()) x = (uniform01(rng) * 2.0 - 1.0) * half;
  return emb;
}

namespace {

constexpr std::uint64_t kLrSyncInterval = 256;

Rng worker_rng(std::uint64_t seed, int worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(worker) + 1u, 0x9e3779b9u};
  return Rng(seq);
}

}  // namespace

EmbeddingPair train(const DirectedGraph& g, const TrainConfig& cfg) {
  cfg.validate();
  EmbeddingPair emb = initial_embeddings(g.node_count(), cfg.dim, cfg.seed);
  const std::uint64_t total = cfg.total_walks(g.node_count());
  if (total == 0) return emb;

  const AlternatingWalker walker(g);
  const NoiseTables noise(g);
  const Sigmoid sigmoid;
  std::atomic<std::uint64_t> done{0};
  std::atomic<int> last_percent{-1};

  const auto threads = static_cast<std::uint64_t>(cfg.threads);
  auto worker = [&](int id) {
    Rng rng = worker_rng(cfg.seed, id);
    WalkScratch scratch;
    scratch.error.resize(static_cast<std::size_t>(cfg.dim));
    const std::uint64_t begin = total * static_cast<std::uint64_t>(id) / threads;
    const std::uint64_t end = total * static_cast<std::uint64_t>(id + 1) / threads;
    std::uint64_t pending = 0;
    for (std::uint64_t w = begin; w < end; ++w) {
      // Single-threaded runs see the exact walk index.
      const std::uint64_t t = threads == 1 ? w : done.load(std::memory_order_relaxed) + pending;
      const double lr = learning_rate(t, total, cfg.initial_lr);
      const WalkKind kind = uniform01(rng) > 0.5 ? WalkKind::source_walk : WalkKind::target_walk;
      walker.sample_into(kind, cfg.pairs, rng, scratch.nodes);
      train_walk(scratch.nodes, kind, emb, cfg, lr, noise, sigmoid, rng, scratch.error);
      if (++pending == kLrSyncInterval || w + 1 == end) {
        const auto now = done.fetch_add(pending, std::memory_order_relaxed) + pending;
        pending = 0;
        if (cfg.report_progress) {
          const int pct = static_cast<int>(100 * now / total);
          int prev = last_percent.load(std::memory_order_relaxed);
          if (pct > prev && last_percent.compare_exchange_strong(prev, pct))
            std::fprintf(stderr, "\rwalks: %3d%%", pct);
        }
      }
    }
  };

  if (cfg.threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int id = 0; id < cfg.threads; ++id) pool.emplace_back(worker, id);
  }
  if (cfg.report_progress) std::fprintf(stderr, "\n");
  return emb;
}

}  // namespace nerd
