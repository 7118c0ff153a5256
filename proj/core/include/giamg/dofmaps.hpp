#ifndef GIAMG_DOFMAPS_HPP
#define GIAMG_DOFMAPS_HPP

#include <filesystem>
#include <span>
#include <unordered_map>
#include <vector>

#include "giamg/sparse.hpp"

namespace giamg {

// Local-to-global map: one row per element listing the element's dofs as
// process dof indices. Entry ordering follows the elemental tensor-product
// ordering (p+1)^2*i + (p+1)*j + k, which is what encodes each dof's
// per-axis mode orders.
struct LocalToGlobalMap {
  int order = 1;
  std::vector<std::vector<index_t>> rows;

  index_t num_elements() const { return static_cast<index_t>(rows.size()); }
  // One past the largest referenced process dof.
  index_t num_dofs() const;
};

// Process dof index -> universal dof index. The identity permutation in a
// single process.
struct GlobalToUniversalMap {
  std::vector<index_t> values;

  index_t size() const { return static_cast<index_t>(values.size()); }
  static GlobalToUniversalMap identity(index_t n);
};

// Output of dof_next: the fine process dofs surviving to the coarse level
// (sorted, unique) plus the lookup from fine dof to coarse dof.
struct CoarseSelection {
  std::vector<index_t> collect;
  std::unordered_map<index_t, index_t> hash_l2g;
};

// Picks the entries of one elemental dof row that survive truncation to
// order p_coarse: positions (p_fine+1)^2*i + (p_fine+1)*j + k for all
// 0 <= i,j,k <= p_coarse, in that loop order.
std::vector<index_t> extract_next_dof(std::span<const index_t> row, int p_fine, int p_coarse);

// Collects the surviving dofs of every element, sorted and deduplicated,
// and builds the fine->coarse lookup.
CoarseSelection dof_next(const LocalToGlobalMap& l2g, int p_coarse);

// Rebuilds the local-to-global map at the coarse level by relabeling each
// surviving elemental dof through the selection's lookup.
LocalToGlobalMap l2g_next(const LocalToGlobalMap& l2g, const CoarseSelection& sel, int p_coarse);

// Rebuilds the global-to-universal map at the coarse level by chaining
// coarse dof -> fine dof -> fine universal -> coarse universal.
GlobalToUniversalMap g2u_next(const LocalToGlobalMap& l2g_coarse, const CoarseSelection& sel,
                              const GlobalToUniversalMap& g2u);

// File formats, both 0-based:
//   l2g: line 1 "p <order>", then one line of (p+1)^3 indices per element
//   g2u: one index per line
void write_l2g(const LocalToGlobalMap& map, const std::filesystem::path& path);
LocalToGlobalMap read_l2g(const std::filesystem::path& path);
void write_g2u(const GlobalToUniversalMap& map, const std::filesystem::path& path);
GlobalToUniversalMap read_g2u(const std::filesystem::path& path);

}  // namespace giamg

#endif
