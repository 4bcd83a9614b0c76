#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nerd/graph.hpp"
#include "nerd/types.hpp"

namespace nerd {

enum class DistributionKind : std::uint8_t { p_out, p_in, noise_out, noise_in };

/// Probability mass over nodes. probs[v] is zero exactly when the
/// underlying degree of v is zero.
struct Distribution {
  std::vector<double> probs;
  DistributionKind kind = DistributionKind::p_out;
};

/// role = source gives d_out(v) / vol, role = target gives d_in(v) / vol.
Distribution degree_distribution(const DirectedGraph& g, Role role);

/// Unigram-style noise: proportional to d_out^{3/4} for the source role and
/// d_in^{3/4} for the target role.
Distribution noise_distribution(const DirectedGraph& g, Role role);

/// Walker/Vose alias table. Construction is O(n), each draw is O(1) and uses
/// one 53-bit uniform.
class AliasTable {
 public:
  AliasTable() = default;
  /// Weights need not be normalized. Throws ConfigError when all weights are
  /// zero or any weight is negative or non-finite.
  explicit AliasTable(std::span<const double> weights);
  explicit AliasTable(const Distribution& dist) : AliasTable(std::span<const double>(dist.probs)) {}

  std::uint32_t sample(Rng& rng) const noexcept {
    const double u = uniform01(rng) * static_cast<double>(prob_.size());
    auto slot = static_cast<std::uint32_t>(u);
    if (slot >= prob_.size()) slot = static_cast<std::uint32_t>(prob_.size() - 1);
    return (u - slot) < prob_[slot] ? slot : alias_[slot];
  }

  std::size_t size() const noexcept { return prob_.size(); }
  std::span<const double> prob() const noexcept { return prob_; }
  std::span<const std::uint32_t> alias() const noexcept { return alias_; }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace nerd
