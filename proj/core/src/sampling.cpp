#include "nerd/sampling.hpp"

#include <cmath>

namespace nerd {

namespace {

Distribution normalized(std::vector<double> mass, DistributionKind kind) {
  double total = 0.0;
  for (double m : mass) total += m;
  for (double& m : mass) m /= total;
  return {std::move(mass), kind};
}

}  // namespace

Distribution degree_distribution(const DirectedGraph& g, Role role) {
  const auto deg = role == Role::source ? g.out_degrees() : g.in_degrees();
  std::vector<double> probs(deg.begin(), deg.end());
  for (double& p : probs) p /= g.volume();
  return {std::move(probs),
          role == Role::source ? DistributionKind::p_out : DistributionKind::p_in};
}

Distribution noise_distribution(const DirectedGraph& g, Role role) {
  const auto deg = role == Role::source ? g.out_degrees() : g.in_degrees();
  std::vector<double> mass(deg.size());
  for (std::size_t v = 0; v < deg.size(); ++v) mass[v] = deg[v] > 0.0 ? std::pow(deg[v], 0.75) : 0.0;
  return normalized(std::move(mass),
                    role == Role::source ? DistributionKind::noise_out : DistributionKind::noise_in);
}

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("alias weights must be finite and >= 0");
    total += w;
  }
  if (n == 0 || !(total > 0.0)) throw ConfigError("cannot build alias table from an all-zero distribution");

  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  std::uint32_t some_positive = 0;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    if (weights[i] > 0.0) some_positive = static_cast<std::uint32_t>(i);
    if (scaled[i] >= 1.0) large.push_back(static_cast<std::uint32_t>(i));
  }
  // Zero-mass slots go on top of the stack so they are paired while large
  // mass is still plentiful.
  for (std::size_t i = 0; i < n; ++i)
    if (scaled[i] < 1.0 && weights[i] > 0.0) small.push_back(static_cast<std::uint32_t>(i));
  for (std::size_t i = 0; i < n; ++i)
    if (weights[i] == 0.0) small.push_back(static_cast<std::uint32_t>(i));

  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (auto l : large) {
    prob_[l] = 1.0;
    alias_[l] = l;
  }
  // Leftovers here are rounding residue.
  for (auto s : small) {
    prob_[s] = weights[s] > 0.0 ? 1.0 : 0.0;
    alias_[s] = weights[s] > 0.0 ? s : some_positive;
  }
}

}  // namespace nerd
