#include "giamg/dense_lu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace giamg {

DenseLU DenseLU::factor(const SparseMatrix& A) {
  if (A.nrows != A.ncols) throw std::invalid_argument("DenseLU: matrix not square");
  DenseLU f;
  f.n_ = A.nrows;
  const std::size_t n = static_cast<std::size_t>(f.n_);
  f.lu_.assign(n * n, 0.0);
  f.piv_.resize(n);
  for (index_t i = 0; i < A.nrows; ++i)
    for (index_t k = A.row_offsets[i]; k < A.row_offsets[i + 1]; ++k)
      f.lu_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(A.col_indices[k])] =
          A.values[k];

  double* lu = f.lu_.data();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::abs(lu[r * n + col]);
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best == 0.0)
      throw std::runtime_error("DenseLU: exact zero pivot at elimination row " +
                               std::to_string(col));
    f.piv_[col] = static_cast<index_t>(pivot);
    if (pivot != col)
      std::swap_ranges(lu + col * n, lu + (col + 1) * n, lu + pivot * n);
    const double inv_piv = 1.0 / lu[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = lu[r * n + col] * inv_piv;
      lu[r * n + col] = m;
      if (m == 0.0) continue;
      for (std::size_t c = col + 1; c < n; ++c) lu[r * n + c] -= m * lu[col * n + c];
    }
  }
  return f;
}

void DenseLU::solve(std::span<const double> b, std::span<double> x) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  if (b.size() != n || x.size() != n) throw std::invalid_argument("DenseLU::solve: size mismatch");
  std::copy(b.begin(), b.end(), x.begin());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = static_cast<std::size_t>(piv_[i]);
    if (p != i) std::swap(x[i], x[p]);
  }
  const double* lu = lu_.data();
  for (std::size_t i = 1; i < n; ++i) {
    double sum = x[i];
    for (std::size_t j = 0; j < i; ++j) sum -= lu[i * n + j] * x[j];
    x[i] = sum;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double sum = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) sum -= lu[ii * n + j] * x[j];
    x[ii] = sum / lu[ii * n + ii];
  }
}

std::vector<double> DenseLU::solve(std::span<const double> b) const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  solve(b, x);
  return x;
}

}  // namespace giamg
