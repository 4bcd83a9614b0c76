#pragma once

#include <cstddef>
#include <iosfwd>

#include "nerd/embedding.hpp"
#include "nerd/graph.hpp"

namespace nerd::oracle {

/// Dense reference computations on small graphs. Entries may be -inf
/// (log of zero). Every function throws SizeError when N exceeds `limit`.

using DenseMatrix = Matrix;

inline constexpr std::size_t default_dense_limit = 2000;

/// 2N x 2N adjacency of the bipartite lift [[0, A], [A^T, 0]]; source copies
/// are rows/columns 0..N-1, target copies N..2N-1.
DenseMatrix bipartite_adjacency(const DirectedGraph& g, std::size_t limit = default_dense_limit);

/// Random-walk matrix D^{-1} A of the bipartite lift. Rows of zero-degree
/// copies are zero.
DenseMatrix bipartite_transition(const DirectedGraph& g, std::size_t limit = default_dense_limit);

/// N x N expected count of (source i, target j) pairs emitted per walk:
///   sum over odd r < 2n of  1/2 d_out(i)/vol (P^r)[i, N+j]
///                         + 1/2 d_in(j)/vol  (P^r)[N+j, i]
/// Total mass is n.
DenseMatrix pair_distribution(const DirectedGraph& g, int pairs,
                              std::size_t limit = default_dense_limit);

/// N x N source/target block of log(vol * sum over odd r < 2n of (D^{-1} A)^r D^{-1}) - log kappa,
/// the inner products non-joint training converges to. Entries with zero
/// inner value are -inf.
DenseMatrix factorization_target(const DirectedGraph& g, int pairs, double kappa,
                                 std::size_t limit = default_dense_limit);

/// Tab-separated rows, 6 significant digits, "-inf" for -infinity.
void write_tsv(std::ostream& out, const DenseMatrix& m);

}  // namespace nerd::oracle
