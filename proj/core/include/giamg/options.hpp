#ifndef GIAMG_OPTIONS_HPP
#define GIAMG_OPTIONS_HPP

#include <cstdint>

namespace giamg {

enum class PrecondKind { Giamg, Diagonal, None };

// How the tentative aggregation prolongation is smoothed.
enum class ProlongSmoother { DampedJacobi, Spai0 };

struct SolveOptions {
  double rtol = 1e-10;
  std::int64_t max_iters = 5000;

  // Chebyshev iterations in both pre- and postsmoothing.
  int smooth_iters = 2;

  // Order decrement between consecutive p-levels.
  int p_stride = 1;

  // Strength-of-connection threshold for aggregation.
  double theta = 0.25;

  // Coarsening stops once a level is at most this many dofs.
  std::int64_t coarsest_max_size = 1000;
  int max_h_levels = 6;

  PrecondKind preconditioner = PrecondKind::Giamg;

  // Chebyshev target interval [lambda_max/lo_factor, hi_factor*lambda_max]
  // and the power-iteration count used to estimate lambda_max.
  double cheby_lo_factor = 8.0;
  double cheby_hi_factor = 1.1;
  int power_iters = 30;
  std::uint64_t seed = 0;

  // Damping weight for the Jacobi prolongation smoother.
  double sa_omega = 2.0 / 3.0;
  ProlongSmoother prolong_smoother = ProlongSmoother::DampedJacobi;
};

}  // namespace giamg

#endif
