#ifndef GIAMG_KRYLOV_HPP
#define GIAMG_KRYLOV_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "giamg/options.hpp"
#include "giamg/sparse.hpp"

namespace giamg {

// Wall-clock breakdown of one solve, in seconds. The vcycle-internal
// categories (smooth through coarsest_solve) are filled in by the
// preconditioner when it is a multigrid cycle.
struct TimingBreakdown {
  double setup = 0.0;
  double total_solve = 0.0;
  double per_iteration = 0.0;
  double vcycle = 0.0;
  double smooth = 0.0;
  double first_level_smooth = 0.0;
  double residual = 0.0;
  double transfer = 0.0;
  double cg_matvec = 0.0;
  double cg_dot = 0.0;
  double coarsest_solve = 0.0;

  std::string to_text() const;
  std::string to_json() const;
};

struct ConvergenceLog {
  std::vector<double> relres;  // true relative residual, entry 0 from the initial guess
  std::int64_t iterations = 0;
  bool converged = false;
  TimingBreakdown timings;

  std::string to_csv() const;  // "iter,relres" lines
};

class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  // z = M^-1 r
  virtual void apply(std::span<const double> r, std::span<double> z) = 0;
  // Lets multigrid preconditioners report their internal timing split.
  virtual void collect_timers(TimingBreakdown&) const {}
};

class IdentityPreconditioner final : public Preconditioner {
 public:
  void apply(std::span<const double> r, std::span<double> z) override;
};

// z = D^-1 r. Throws on a non-positive diagonal entry.
class DiagonalPreconditioner final : public Preconditioner {
 public:
  explicit DiagonalPreconditioner(const SparseMatrix& A);
  void apply(std::span<const double> r, std::span<double> z) override;

 private:
  std::vector<double> inv_diag_;
};

// Standard preconditioned conjugate gradient with a zero default initial
// guess. Stops when the recomputed true residual satisfies
// ||b - A x|| <= rtol * ||b||, or after max_iters. Throws on an indefinite
// preconditioner (negative r'z) or CG breakdown (p'Ap <= 0).
std::pair<std::vector<double>, ConvergenceLog> pcg_solve(const SparseMatrix& A,
                                                         std::span<const double> b,
                                                         std::span<const double> x0,
                                                         Preconditioner& precond,
                                                         const SolveOptions& opts);

}  // namespace giamg

#endif
