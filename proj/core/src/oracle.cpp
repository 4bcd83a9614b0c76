#include "nerd/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

namespace nerd::oracle {

namespace {

void check_limit(const DirectedGraph& g, std::size_t limit) {
  if (g.node_count() > limit)
    throw SizeError("dense oracle limited to " + std::to_string(limit) + " nodes, graph has " +
                    std::to_string(g.node_count()));
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

// Sum of P^r over r = 1, 3, ..., 2n-1.
DenseMatrix odd_power_sum(const DenseMatrix& p, int pairs) {
  const DenseMatrix p2 = multiply(p, p);
  DenseMatrix power = p;
  DenseMatrix sum = p;
  for (int step = 1; step < pairs; ++step) {
    power = multiply(power, p2);
    auto s = sum.data();
    auto pw = power.data();
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += pw[k];
  }
  return sum;
}

double lift_degree(const DirectedGraph& g, std::size_t idx) {
  const auto n = g.node_count();
  return idx < n ? g.out_degree(static_cast<NodeId>(idx))
                 : g.in_degree(static_cast<NodeId>(idx - n));
}

}  // namespace

DenseMatrix bipartite_adjacency(const DirectedGraph& g, std::size_t limit) {
  check_limit(g, limit);
  const auto n = g.node_count();
  DenseMatrix a(2 * n, 2 * n);
  for (const auto& e : g.edges()) {
    a(e.src, n + e.dst) = e.weight;
    a(n + e.dst, e.src) = e.weight;
  }
  return a;
}

DenseMatrix bipartite_transition(const DirectedGraph& g, std::size_t limit) {
  DenseMatrix p = bipartite_adjacency(g, limit);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const double d = lift_degree(g, i);
    auto row = p.row(i);
    for (double& x : row) x = d > 0.0 ? x / d : 0.0;
  }
  return p;
}

DenseMatrix pair_distribution(const DirectedGraph& g, int pairs, std::size_t limit) {
  if (pairs < 1) throw ConfigError("pairs must be >= 1");
  const auto n = g.node_count();
  const DenseMatrix sum = odd_power_sum(bipartite_transition(g, limit), pairs);
  const double vol = g.volume();
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d_i = g.out_degree(static_cast<NodeId>(i));
    for (std::size_t j = 0; j < n; ++j) {
      const double d_j = g.in_degree(static_cast<NodeId>(j));
      out(i, j) = 0.5 * d_i / vol * sum(i, n + j) + 0.5 * d_j / vol * sum(n + j, i);
    }
  }
  return out;
}

DenseMatrix factorization_target(const DirectedGraph& g, int pairs, double kappa,
                                 std::size_t limit) {
  if (pairs < 1) throw ConfigError("pairs must be >= 1");
  if (!(kappa > 0.0)) throw ConfigError("kappa must be > 0");
  const auto n = g.node_count();
  const DenseMatrix sum = odd_power_sum(bipartite_transition(g, limit), pairs);
  const double vol = g.volume();
  const double log_kappa = std::log(kappa);
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d_j = g.in_degree(static_cast<NodeId>(j));
      // Right-multiplying by D^{-1} scales column N+j by 1/d_in(j).
      const double inner = d_j > 0.0 ? vol * sum(i, n + j) / d_j : 0.0;
      out(i, j) = inner > 0.0 ? std::log(inner) - log_kappa
                              : -std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

void write_tsv(std::ostream& out, const DenseMatrix& m) {
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << '\t';
      const double x = m(i, j);
      if (std::isinf(x)) {
        out << (x < 0 ? "-inf" : "inf");
      } else {
        std::snprintf(buf, sizeof buf, "%.6g", x);
        out << buf;
      }
    }
    out << '\n';
  }
}

}  // namespace nerd::oracle
