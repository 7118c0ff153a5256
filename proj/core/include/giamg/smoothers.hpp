#ifndef GIAMG_SMOOTHERS_HPP
#define GIAMG_SMOOTHERS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "giamg/sparse.hpp"

namespace giamg {

// Frozen per-level data for the Jacobi-accelerated Chebyshev smoother. The
// iteration targets eigenvalues of D^-1 A in
// [lambda_max/lo_factor, hi_factor*lambda_max].
struct ChebyshevData {
  std::vector<double> inv_diag;
  double lambda_max = 0.0;
  double lo_factor = 8.0;
  double hi_factor = 1.1;
  int iterations = 2;
};

// Scratch vectors for one smoothing call; reusable across calls on the
// same level.
struct ChebyshevWorkspace {
  std::vector<double> residual, z, direction, scratch;

  ChebyshevWorkspace() = default;
  explicit ChebyshevWorkspace(std::size_t n) { resize(n); }
  void resize(std::size_t n) {
    residual.resize(n);
    z.resize(n);
    direction.resize(n);
    scratch.resize(n);
  }
};

// Largest eigenvalue of D^-1 A by power iteration from a seeded random
// start vector, returning the final generalized Rayleigh quotient
// (x'Ax)/(x'Dx). Throws on a zero diagonal entry.
double estimate_lambda_max(const SparseMatrix& A, int iters = 30, std::uint64_t seed = 0);

ChebyshevData make_chebyshev(const SparseMatrix& A, int iterations, double lo_factor = 8.0,
                             double hi_factor = 1.1, int power_iters = 30, std::uint64_t seed = 0);

// Runs data.iterations steps of the three-term Chebyshev recurrence on the
// Jacobi-preconditioned system, updating x in place. Deterministic.
void chebyshev_smooth(const SparseMatrix& A, const ChebyshevData& data, std::span<const double> b,
                      std::span<double> x, ChebyshevWorkspace& ws);

}  // namespace giamg

#endif
