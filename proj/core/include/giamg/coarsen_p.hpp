#ifndef GIAMG_COARSEN_P_HPP
#define GIAMG_COARSEN_P_HPP

#include <vector>

#include "giamg/dofmaps.hpp"
#include "giamg/sparse.hpp"

namespace giamg {

// Descending list of polynomial orders visited by p-coarsening, always
// ending at 1.
struct PCoarsenPlan {
  std::vector<int> orders;
};

// Order sequence for a given start order and stride. Each step divides the
// order by the stride when it divides evenly (8 -> 4 -> 2 -> 1 at stride 2)
// and subtracts the stride otherwise (5 -> 3 -> 1), clamping so the plan
// terminates at exactly 1.
PCoarsenPlan plan_orders(int p_start, int stride);

// Injection prolongation between consecutive p-levels: one unit entry per
// coarse dof at (g2u_fine(fine dof), g2u_coarse(coarse dof)). Every column
// has exactly one nonzero and every row at most one.
SparseMatrix build_p_prolongation(const LocalToGlobalMap& l2g_fine,
                                  const LocalToGlobalMap& l2g_coarse,
                                  const GlobalToUniversalMap& g2u_fine,
                                  const GlobalToUniversalMap& g2u_coarse,
                                  const CoarseSelection& sel);

}  // namespace giamg

#endif
