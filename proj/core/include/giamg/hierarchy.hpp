#ifndef GIAMG_HIERARCHY_HPP
#define GIAMG_HIERARCHY_HPP

#include <span>
#include <string>
#include <vector>

#include "giamg/dense_lu.hpp"
#include "giamg/dofmaps.hpp"
#include "giamg/fem.hpp"
#include "giamg/krylov.hpp"
#include "giamg/options.hpp"
#include "giamg/smoothers.hpp"
#include "giamg/sparse.hpp"

namespace giamg {

enum class LevelKind { P, H, Coarsest };

struct Level {
  LevelKind kind = LevelKind::Coarsest;
  int order = -1;  // polynomial order on p-levels and a p-built coarsest, -1 otherwise
  SparseMatrix A;
  SparseMatrix P;  // to the next coarser level; empty on the coarsest
  SparseMatrix R;  // transpose of P
  ChebyshevData smoother;  // unused on the coarsest

  index_t size() const { return A.nrows; }
};

// Precomputed level stack, finest first. Operators, transfers and smoother
// data are all built during setup; solving allocates no new operators.
struct Hierarchy {
  std::vector<Level> levels;
  DenseLU coarsest_factorization;

  std::size_t num_levels() const { return levels.size(); }
};

// Order-by-order p-coarsening followed by smoothed-aggregation coarsening
// until the coarsest level fits coarsest_max_size (or coarsening stalls),
// then a dense factorization of the last operator. Maps are consumed
// during setup and not retained. Systems without elemental maps (order 1,
// eliminated boundaries, plain imports) go straight to h-coarsening.
Hierarchy setup(const SparseMatrix& A, const LocalToGlobalMap* l2g,
                const GlobalToUniversalMap* g2u, const SolveOptions& opts);
Hierarchy setup(const AssembledSystem& sys, const SolveOptions& opts);

// One line per level: "level kind order size nnz nnz_per_row".
std::string hierarchy_info(const Hierarchy& h);

// Seconds accumulated inside v-cycles, split the way profiling reports
// them.
struct VcycleTimers {
  double smooth = 0.0;
  double first_level_smooth = 0.0;
  double residual = 0.0;
  double transfer = 0.0;
  double coarsest_solve = 0.0;
  double total = 0.0;
  std::int64_t cycles = 0;
};

// Per-solve scratch buffers; a hierarchy is immutable after setup and
// shareable, so each concurrent solve owns one of these.
struct VcycleWorkspace {
  struct LevelBuffers {
    std::vector<double> residual;  // b - A x at this level
    std::vector<double> coarse_b;  // restricted residual
    std::vector<double> coarse_x;  // coarse-level error estimate
    std::vector<double> correction;
    ChebyshevWorkspace cheby;
  };
  std::vector<LevelBuffers> levels;
  VcycleTimers* timers = nullptr;
};

VcycleWorkspace make_vcycle_workspace(const Hierarchy& h);

// One multigrid cycle starting at the given level, updating x in place.
// The coarsest level solves directly through the stored factorization.
void vcycle(const Hierarchy& h, std::size_t level, std::span<const double> b,
            std::span<double> x, VcycleWorkspace& ws);

// One v-cycle from a zero initial guess, usable as the preconditioner
// inside conjugate gradient.
class GiamgPreconditioner final : public Preconditioner {
 public:
  explicit GiamgPreconditioner(const Hierarchy& h);
  void apply(std::span<const double> r, std::span<double> z) override;
  void collect_timers(TimingBreakdown& t) const override;
  const VcycleTimers& timers() const { return timers_; }

 private:
  const Hierarchy* h_;
  VcycleWorkspace ws_;
  VcycleTimers timers_;
};

}  // namespace giamg

#endif
