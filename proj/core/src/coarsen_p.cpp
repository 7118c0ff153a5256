#include "giamg/coarsen_p.hpp"

#include <stdexcept>
#include <string>

namespace giamg {

PCoarsenPlan plan_orders(int p_start, int stride) {
  if (p_start < 1) throw std::invalid_argument("plan_orders: p_start must be >= 1");
  if (stride < 1) throw std::invalid_argument("plan_orders: stride must be >= 1");
  PCoarsenPlan plan;
  for (int p = p_start; p >= 1; p -= stride) plan.orders.push_back(p);
  // When the stride does not land on 1 exactly, the last step is shortened
  // so the plan still terminates at order 1.
  if (plan.orders.back() != 1) plan.orders.back() = 1;
  return plan;
}

SparseMatrix build_p_prolongation(const LocalToGlobalMap& l2g_fine,
                                  const LocalToGlobalMap& l2g_coarse,
                                  const GlobalToUniversalMap& g2u_fine,
                                  const GlobalToUniversalMap& g2u_coarse,
                                  const CoarseSelection& sel) {
  if (l2g_fine.rows.size() != l2g_coarse.rows.size())
    throw std::invalid_argument("build_p_prolongation: element counts differ");
  if (l2g_coarse.order >= l2g_fine.order)
    throw std::invalid_argument("build_p_prolongation: coarse order not below fine order");
  if (g2u_coarse.size() != static_cast<index_t>(sel.collect.size()))
    throw std::invalid_argument("build_p_prolongation: g2u_coarse size does not match selection");

  const index_t nfine = g2u_fine.size();
  const index_t ncoarse = g2u_coarse.size();
  std::vector<CooTriplet> coo;
  coo.reserve(l2g_coarse.rows.size() * l2g_coarse.rows.front().size());
  for (std::size_t e = 0; e < l2g_fine.rows.size(); ++e) {
    const std::vector<index_t> kept =
        extract_next_dof(l2g_fine.rows[e], l2g_fine.order, l2g_coarse.order);
    const std::vector<index_t>& coarse_row = l2g_coarse.rows[e];
    if (kept.size() != coarse_row.size())
      throw std::invalid_argument("build_p_prolongation: inconsistent fine/coarse rows");
    for (std::size_t d = 0; d < kept.size(); ++d) {
      if (kept[d] < 0 || kept[d] >= nfine || coarse_row[d] < 0 || coarse_row[d] >= ncoarse)
        throw std::invalid_argument("build_p_prolongation: dof outside map range");
      const index_t row = g2u_fine.values[static_cast<std::size_t>(kept[d])];
      const index_t col = g2u_coarse.values[static_cast<std::size_t>(coarse_row[d])];
      coo.push_back({row, col, 1.0});
    }
  }
  return coo_to_csr(std::move(coo), nfine, ncoarse);
}

}  // namespace giamg
