#ifndef GIAMG_COARSEN_H_HPP
#define GIAMG_COARSEN_H_HPP

#include <cstdint>
#include <vector>

#include "giamg/sparse.hpp"

namespace giamg {

// Symmetric strength-of-connection graph: edge (i,j), i != j, present iff
// |A[i,j]| >= theta * sqrt(|A[i,i]| * |A[j,j]|). Weights keep the scaled
// coupling magnitudes for tie-breaking during aggregation.
struct StrengthGraph {
  index_t n = 0;
  std::vector<index_t> row_offsets{0};
  std::vector<index_t> col_indices;
  std::vector<double> weights;
  double theta = 0.0;

  index_t num_edges() const { return static_cast<index_t>(col_indices.size()); }
};

// Partition of the dofs into aggregates. Each aggregate has exactly one
// root and roots form an independent set of the strength graph.
struct Aggregation {
  std::vector<index_t> assignment;  // dof -> aggregate id
  index_t n_aggregates = 0;
  std::vector<index_t> roots;  // aggregate id -> root dof
};

StrengthGraph strength_graph(const SparseMatrix& A, double theta);

// Greedy aggregation in ascending dof order: an unassigned dof becomes a
// root and absorbs its unassigned strength-neighbors; a second pass
// attaches any dof still unassigned to the adjacent aggregate with the
// strongest connection. Isolated dofs end up as singletons. The seed is
// reserved for future visit-order randomization; aggregation is currently
// deterministic.
Aggregation mis_aggregate(const StrengthGraph& g, std::uint64_t seed = 0);

// Piecewise-constant prolongation: T[i, assignment[i]] = 1.
SparseMatrix tentative_prolongation(const Aggregation& agg);

// Damped-Jacobi prolongation smoothing P = (I - omega D^-1 A) T.
SparseMatrix smooth_prolongation(const SparseMatrix& A, const SparseMatrix& T, double omega);

// Diagonal SPAI variant P = (I - M A) T with m_ii = A[i,i] / sum_j A[i,j]^2.
SparseMatrix smooth_prolongation_spai0(const SparseMatrix& A, const SparseMatrix& T);

}  // namespace giamg

#endif
