#ifndef GIAMG_SPARSE_HPP
#define GIAMG_SPARSE_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace giamg {

using index_t = std::int64_t;

// One (row, col, value) entry of a matrix under construction.
struct CooTriplet {
  index_t row = 0;
  index_t col = 0;
  double value = 0.0;
};

// Compressed-sparse-row matrix, square or rectangular.
//
// Invariants after construction:
//   - row_offsets has nrows+1 entries, is non-decreasing, starts at 0 and
//     ends at nnz()
//   - column indices are strictly increasing within each row
//   - all column indices are in [0, ncols)
//   - no stored entry has value exactly 0
// Immutable by convention once built; all kernels below are pure functions.
struct SparseMatrix {
  index_t nrows = 0;
  index_t ncols = 0;
  std::vector<index_t> row_offsets{0};
  std::vector<index_t> col_indices;
  std::vector<double> values;

  SparseMatrix() = default;
  SparseMatrix(index_t rows, index_t cols)
      : nrows(rows), ncols(cols), row_offsets(static_cast<std::size_t>(rows) + 1, 0) {}

  index_t nnz() const { return static_cast<index_t>(col_indices.size()); }

  // Value at (row, col), 0 if not stored. Binary search within the row.
  double at(index_t row, index_t col) const;
};

// Builds a CSR matrix from triplets. Duplicate (row, col) pairs collapse to
// the first occurrence's value; entries that are exactly 0 are dropped.
SparseMatrix coo_to_csr(std::vector<CooTriplet> triplets, index_t nrows, index_t ncols);

// Builds a CSR matrix from triplets, accumulating duplicate (row, col)
// pairs. Entries summing to exactly 0 are dropped. This is the constructor
// for finite element assembly, where duplicates must add up.
SparseMatrix coo_to_csr_sum(std::vector<CooTriplet> triplets, index_t nrows, index_t ncols);

// Expands a matrix back to sorted triplets.
std::vector<CooTriplet> to_triplets(const SparseMatrix& A);

SparseMatrix identity(index_t n);

// y = A x
void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y);
std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x);

SparseMatrix transpose(const SparseMatrix& A);

// Exact sparse product A B.
SparseMatrix matmul(const SparseMatrix& A, const SparseMatrix& B);

// Coarse-grid operator R A P, computed left to right so the intermediate
// R A stays small when R is short and wide.
SparseMatrix galerkin_triple(const SparseMatrix& R, const SparseMatrix& A, const SparseMatrix& P);

// Throws if any CSR invariant is violated. Used by tests and file import.
void validate(const SparseMatrix& A);

// Number of operator-producing constructions (coo finalize, transpose,
// matmul) since process start. Lets tests assert that the solve phase
// never builds new operators.
std::int64_t operator_build_count();

// max_i |A[i,i]| ... small shared helpers used across modules.
std::vector<double> diagonal(const SparseMatrix& A);
double max_abs_diagonal(const SparseMatrix& A);

// max |A - A^T| <= tol * max|A|; requires square A.
bool is_symmetric(const SparseMatrix& A, double rel_tol = 1e-12);

}  // namespace giamg

#endif
