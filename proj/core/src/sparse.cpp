#include "giamg/sparse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

namespace giamg {

namespace {

std::atomic<std::int64_t> g_operator_builds{0};

void check_triplet_bounds(const std::vector<CooTriplet>& triplets, index_t nrows, index_t ncols) {
  for (const CooTriplet& t : triplets) {
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols) {
      throw std::invalid_argument("coo_to_csr: triplet (" + std::to_string(t.row) + ", " +
                                  std::to_string(t.col) + ") outside " + std::to_string(nrows) +
                                  "x" + std::to_string(ncols) + " matrix");
    }
  }
  if (nrows < 0 || ncols < 0) throw std::invalid_argument("coo_to_csr: negative dimension");
}

// Shared finalize: triplets must already be sorted by (row, col) with
// duplicates resolved. Drops exact zeros and fills the CSR arrays.
SparseMatrix csr_from_sorted_unique(const std::vector<CooTriplet>& triplets, index_t nrows,
                                    index_t ncols) {
  SparseMatrix A(nrows, ncols);
  std::size_t kept = 0;
  for (const CooTriplet& t : triplets)
    if (t.value != 0.0) ++kept;
  A.col_indices.reserve(kept);
  A.values.reserve(kept);
  for (const CooTriplet& t : triplets) {
    if (t.value == 0.0) continue;
    A.col_indices.push_back(t.col);
    A.values.push_back(t.value);
    ++A.row_offsets[static_cast<std::size_t>(t.row) + 1];
  }
  for (index_t i = 0; i < nrows; ++i) A.row_offsets[i + 1] += A.row_offsets[i];
  ++g_operator_builds;
  return A;
}

}  // namespace

double SparseMatrix::at(index_t row, index_t col) const {
  auto begin = col_indices.begin() + row_offsets[row];
  auto end = col_indices.begin() + row_offsets[row + 1];
  auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return 0.0;
  return values[static_cast<std::size_t>(it - col_indices.begin())];
}

SparseMatrix coo_to_csr(std::vector<CooTriplet> triplets, index_t nrows, index_t ncols) {
  check_triplet_bounds(triplets, nrows, ncols);
  // stable_sort keeps the first occurrence of each (row, col) in front.
  std::stable_sort(triplets.begin(), triplets.end(), [](const CooTriplet& a, const CooTriplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  auto last = std::unique(triplets.begin(), triplets.end(),
                          [](const CooTriplet& a, const CooTriplet& b) {
                            return a.row == b.row && a.col == b.col;
                          });
  triplets.erase(last, triplets.end());
  return csr_from_sorted_unique(triplets, nrows, ncols);
}

SparseMatrix coo_to_csr_sum(std::vector<CooTriplet> triplets, index_t nrows, index_t ncols) {
  check_triplet_bounds(triplets, nrows, ncols);
  std::sort(triplets.begin(), triplets.end(), [](const CooTriplet& a, const CooTriplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < triplets.size();) {
    CooTriplet acc = triplets[i];
    std::size_t j = i + 1;
    while (j < triplets.size() && triplets[j].row == acc.row && triplets[j].col == acc.col) {
      acc.value += triplets[j].value;
      ++j;
    }
    triplets[out++] = acc;
    i = j;
  }
  triplets.resize(out);
  return csr_from_sorted_unique(triplets, nrows, ncols);
}

std::vector<CooTriplet> to_triplets(const SparseMatrix& A) {
  std::vector<CooTriplet> triplets;
  triplets.reserve(static_cast<std::size_t>(A.nnz()));
  for (index_t i = 0; i < A.nrows; ++i)
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
      triplets.push_back({i, A.col_indices[k], A.values[k]});
  return triplets;
}

SparseMatrix identity(index_t n) {
  SparseMatrix I(n, n);
  I.col_indices.resize(static_cast<std::size_t>(n));
  I.values.assign(static_cast<std::size_t>(n), 1.0);
  for (index_t i = 0; i < n; ++i) {
    I.col_indices[i] = i;
    I.row_offsets[i + 1] = i + 1;
  }
  ++g_operator_builds;
  return I;
}

void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
  if (static_cast<index_t>(x.size()) != A.ncols || static_cast<index_t>(y.size()) != A.nrows)
    throw std::invalid_argument("spmv: dimension mismatch");
  for (index_t i = 0; i < A.nrows; ++i) {
    double sum = 0.0;
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
      sum += A.values[k] * x[static_cast<std::size_t>(A.col_indices[k])];
    y[static_cast<std::size_t>(i)] = sum;
  }
}

std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x) {
  std::vector<double> y(static_cast<std::size_t>(A.nrows));
  spmv(A, x, y);
  return y;
}

SparseMatrix transpose(const SparseMatrix& A) {
  SparseMatrix B(A.ncols, A.nrows);
  B.col_indices.resize(static_cast<std::size_t>(A.nnz()));
  B.values.resize(static_cast<std::size_t>(A.nnz()));
  for (index_t k = 0; k < A.nnz(); ++k) ++B.row_offsets[A.col_indices[k] + 1];
  for (index_t j = 0; j < B.nrows; ++j) B.row_offsets[j + 1] += B.row_offsets[j];
  std::vector<index_t> next(B.row_offsets.begin(), B.row_offsets.end() - 1);
  for (index_t i = 0; i < A.nrows; ++i) {
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      index_t pos = next[static_cast<std::size_t>(A.col_indices[k])]++;
      B.col_indices[pos] = i;
      B.values[pos] = A.values[k];
    }
  }
  ++g_operator_builds;
  return B;
}

SparseMatrix matmul(const SparseMatrix& A, const SparseMatrix& B) {
  if (A.ncols != B.nrows) throw std::invalid_argument("matmul: inner dimension mismatch");
  SparseMatrix C(A.nrows, B.ncols);
  std::vector<double> accum(static_cast<std::size_t>(B.ncols), 0.0);
  std::vector<index_t> touched;
  std::vector<char> marked(static_cast<std::size_t>(B.ncols), 0);
  for (index_t i = 0; i < A.nrows; ++i) {
    touched.clear();
    for (index_t ka = A.row_offsets[i]; ka < A.row_offsets[i + 1]; ++ka) {
      const index_t j = A.col_indices[ka];
      const double va = A.values[ka];
      for (index_t kb = B.row_offsets[j]; kb < B.row_offsets[j + 1]; ++kb) {
        const index_t c = B.col_indices[kb];
        if (!marked[static_cast<std::size_t>(c)]) {
          marked[static_cast<std::size_t>(c)] = 1;
          touched.push_back(c);
        }
        accum[static_cast<std::size_t>(c)] += va * B.values[kb];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (index_t c : touched) {
      const double v = accum[static_cast<std::size_t>(c)];
      if (v != 0.0) {
        C.col_indices.push_back(c);
        C.values.push_back(v);
      }
      accum[static_cast<std::size_t>(c)] = 0.0;
      marked[static_cast<std::size_t>(c)] = 0;
    }
    C.row_offsets[i + 1] = C.nnz();
  }
  ++g_operator_builds;
  return C;
}

SparseMatrix galerkin_triple(const SparseMatrix& R, const SparseMatrix& A, const SparseMatrix& P) {
  if (R.ncols != A.nrows || A.ncols != P.nrows)
    throw std::invalid_argument("galerkin_triple: dimension mismatch");
  return matmul(matmul(R, A), P);
}

void validate(const SparseMatrix& A) {
  if (A.nrows < 0 || A.ncols < 0) throw std::runtime_error("invalid matrix: negative dimension");
  if (static_cast<index_t>(A.row_offsets.size()) != A.nrows + 1)
    throw std::runtime_error("invalid matrix: row_offsets size");
  if (A.row_offsets.front() != 0 || A.row_offsets.back() != A.nnz())
    throw std::runtime_error("invalid matrix: row_offsets endpoints");
  if (A.col_indices.size() != A.values.size())
    throw std::runtime_error("invalid matrix: col/value size mismatch");
  for (index_t i = 0; i < A.nrows; ++i) {
    if (A.row_offsets[i] > A.row_offsets[i + 1])
      throw std::runtime_error("invalid matrix: decreasing row_offsets");
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k) {
      if (A.col_indices[k] < 0 || A.col_indices[k] >= A.ncols)
        throw std::runtime_error("invalid matrix: column index out of range");
      if (k > A.row_offsets[i] && A.col_indices[k - 1] >= A.col_indices[k])
        throw std::runtime_error("invalid matrix: columns not strictly increasing");
      if (A.values[k] == 0.0) throw std::runtime_error("invalid matrix: stored explicit zero");
    }
  }
}

std::int64_t operator_build_count() { return g_operator_builds.load(); }

std::vector<double> diagonal(const SparseMatrix& A) {
  std::vector<double> d(static_cast<std::size_t>(A.nrows), 0.0);
  for (index_t i = 0; i < A.nrows && i < A.ncols; ++i) d[static_cast<std::size_t>(i)] = A.at(i, i);
  return d;
}

double max_abs_diagonal(const SparseMatrix& A) {
  double m = 0.0;
  for (double d : diagonal(A)) m = std::max(m, std::abs(d));
  return m;
}

bool is_symmetric(const SparseMatrix& A, double rel_tol) {
  if (A.nrows != A.ncols) return false;
  double max_abs = 0.0;
  for (double v : A.values) max_abs = std::max(max_abs, std::abs(v));
  const SparseMatrix At = transpose(A);
  // Same pattern sorted the same way, so a direct walk compares entries.
  if (At.col_indices.size() != A.col_indices.size()) {
    // Patterns may legitimately differ if asymmetry dropped an entry; fall
    // back to an entrywise check through lookups.
    for (index_t i = 0; i < A.nrows; ++i)
      for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
        if (std::abs(A.values[k] - At.at(i, A.col_indices[k])) > rel_tol * max_abs) return false;
    return true;
  }
  for (index_t i = 0; i < A.nrows; ++i) {
    index_t ka = A.row_offsets[i];
    index_t kt = At.row_offsets[i];
    const index_t end_a = A.row_offsets[i + 1];
    const index_t end_t = At.row_offsets[i + 1];
    if (end_a - ka != end_t - kt) return false;
    for (; ka < end_a; ++ka, ++kt) {
      if (A.col_indices[ka] != At.col_indices[kt]) return false;
      if (std::abs(A.values[ka] - At.values[kt]) > rel_tol * max_abs) return false;
    }
  }
  return true;
}

}  // namespace giamg
