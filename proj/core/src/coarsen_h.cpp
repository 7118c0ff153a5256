#include "giamg/coarsen_h.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace giamg {

StrengthGraph strength_graph(const SparseMatrix& A, double theta) {
  if (A.nrows != A.ncols) throw std::invalid_argument("strength_graph: matrix not square");
  if (theta < 0.0 || theta >= 1.0)
    throw std::invalid_argument("strength_graph: theta must be in [0,1)");
  const std::vector<double> diag = diagonal(A);
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (diag[i] == 0.0)
      throw std::runtime_error("strength_graph: zero diagonal at row " + std::to_string(i));

  StrengthGraph g;
  g.n = A.nrows;
  g.theta = theta;
  g.row_offsets.assign(static_cast<std::size_t>(A.nrows) + 1, 0);
  for (index_t i = 0; i < A.nrows; ++i) {
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const index_t j = A.col_indices[k];
      if (j == i) continue;
      const double scale = std::sqrt(std::abs(diag[static_cast<std::size_t>(i)]) *
                                     std::abs(diag[static_cast<std::size_t>(j)]));
      const double strength = std::abs(A.values[k]) / scale;
      if (strength >= theta) {
        g.col_indices.push_back(j);
        g.weights.push_back(strength);
        ++g.row_offsets[static_cast<std::size_t>(i) + 1];
      }
    }
  }
  for (index_t i = 0; i < g.n; ++i) g.row_offsets[i + 1] += g.row_offsets[i];
  return g;
}

Aggregation mis_aggregate(const StrengthGraph& g, std::uint64_t seed) {
  (void)seed;
  Aggregation agg;
  agg.assignment.assign(static_cast<std::size_t>(g.n), -1);

  // Pass 1: greedy roots in ascending order; each root takes its
  // still-unassigned neighbors. A dof left unassigned at its visit cannot
  // neighbor an earlier root, so roots stay independent.
  for (index_t i = 0; i < g.n; ++i) {
    if (agg.assignment[static_cast<std::size_t>(i)] >= 0) continue;
    const index_t id = agg.n_aggregates++;
    agg.roots.push_back(i);
    agg.assignment[static_cast<std::size_t>(i)] = id;
    for (index_t k = g.row_offsets[i]; k < g.row_offsets[i + 1]; ++k) {
      const index_t j = g.col_indices[k];
      if (agg.assignment[static_cast<std::size_t>(j)] < 0)
        agg.assignment[static_cast<std::size_t>(j)] = id;
    }
  }

  // Pass 2: attach any remaining dof to the strongest adjacent aggregate.
  for (index_t i = 0; i < g.n; ++i) {
    if (agg.assignment[static_cast<std::size_t>(i)] >= 0) continue;
    index_t best = -1;
    double best_w = -1.0;
    for (index_t k = g.row_offsets[i]; k < g.row_offsets[i + 1]; ++k) {
      const index_t j = g.col_indices[k];
      const index_t a = agg.assignment[static_cast<std::size_t>(j)];
      if (a >= 0 && g.weights[static_cast<std::size_t>(k)] > best_w) {
        best_w = g.weights[static_cast<std::size_t>(k)];
        best = a;
      }
    }
    if (best >= 0) {
      agg.assignment[static_cast<std::size_t>(i)] = best;
    } else {
      const index_t id = agg.n_aggregates++;
      agg.roots.push_back(i);
      agg.assignment[static_cast<std::size_t>(i)] = id;
    }
  }
  return agg;
}

SparseMatrix tentative_prolongation(const Aggregation& agg) {
  const index_t n = static_cast<index_t>(agg.assignment.size());
  std::vector<CooTriplet> coo;
  coo.reserve(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) {
    const index_t a = agg.assignment[static_cast<std::size_t>(i)];
    if (a < 0 || a >= agg.n_aggregates)
      throw std::invalid_argument("tentative_prolongation: dof " + std::to_string(i) +
                                  " has invalid aggregate");
    coo.push_back({i, a, 1.0});
  }
  return coo_to_csr(std::move(coo), n, agg.n_aggregates);
}

namespace {

SparseMatrix apply_diagonal_smoother(const SparseMatrix& A, const SparseMatrix& T,
                                     const std::vector<double>& m) {
  // P = (I - diag(m) A) T, built by forming the sparse smoother first.
  std::vector<CooTriplet> coo;
  coo.reserve(static_cast<std::size_t>(A.nnz()) + static_cast<std::size_t>(A.nrows));
  for (index_t i = 0; i < A.nrows; ++i) {
    bool diag_seen = false;
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      const index_t j = A.col_indices[k];
      double v = -m[static_cast<std::size_t>(i)] * A.values[k];
      if (j == i) {
        v += 1.0;
        diag_seen = true;
      }
      coo.push_back({i, j, v});
    }
    if (!diag_seen) coo.push_back({i, i, 1.0});
  }
  const SparseMatrix S = coo_to_csr(std::move(coo), A.nrows, A.nrows);
  return matmul(S, T);
}

}  // namespace

SparseMatrix smooth_prolongation(const SparseMatrix& A, const SparseMatrix& T, double omega) {
  if (A.ncols != T.nrows) throw std::invalid_argument("smooth_prolongation: dimension mismatch");
  const std::vector<double> diag = diagonal(A);
  std::vector<double> m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] == 0.0)
      throw std::runtime_error("smooth_prolongation: zero diagonal at row " + std::to_string(i));
    m[i] = omega / diag[i];
  }
  return apply_diagonal_smoother(A, T, m);
}

SparseMatrix smooth_prolongation_spai0(const SparseMatrix& A, const SparseMatrix& T) {
  if (A.ncols != T.nrows)
    throw std::invalid_argument("smooth_prolongation_spai0: dimension mismatch");
  const std::vector<double> diag = diagonal(A);
  std::vector<double> m(static_cast<std::size_t>(A.nrows), 0.0);
  for (index_t i = 0; i < A.nrows; ++i) {
    double row_norm2 = 0.0;
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
      row_norm2 += A.values[k] * A.values[k];
    if (row_norm2 == 0.0 || diag[static_cast<std::size_t>(i)] == 0.0)
      throw std::runtime_error("smooth_prolongation_spai0: zero row or diagonal at row " +
                               std::to_string(i));
    m[static_cast<std::size_t>(i)] = diag[static_cast<std::size_t>(i)] / row_norm2;
  }
  return apply_diagonal_smoother(A, T, m);
}

}  // namespace giamg
