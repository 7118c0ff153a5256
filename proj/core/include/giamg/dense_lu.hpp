#ifndef GIAMG_DENSE_LU_HPP
#define GIAMG_DENSE_LU_HPP

#include <span>
#include <vector>

#include "giamg/sparse.hpp"

namespace giamg {

// Dense LU factorization with partial pivoting, used as the direct solver
// for the coarsest level of a hierarchy.
class DenseLU {
 public:
  DenseLU() = default;

  // Factors A in place; throws naming the pivot row on exact singularity.
  static DenseLU factor(const SparseMatrix& A);

  void solve(std::span<const double> b, std::span<double> x) const;
  std::vector<double> solve(std::span<const double> b) const;

  index_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

 private:
  index_t n_ = 0;
  std::vector<double> lu_;    // row-major, L below the diagonal, U on and above
  std::vector<index_t> piv_;  // row swap applied at each elimination step
};

}  // namespace giamg

#endif
