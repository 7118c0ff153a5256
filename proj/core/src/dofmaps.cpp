#include "giamg/dofmaps.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "giamg/io.hpp"

namespace giamg {

namespace {

index_t cube(int p) {
  const index_t e = p + 1;
  return e * e * e;
}

}  // namespace

index_t LocalToGlobalMap::num_dofs() const {
  index_t max_dof = -1;
  for (const auto& row : rows)
    for (index_t d : row) max_dof = std::max(max_dof, d);
  return max_dof + 1;
}

GlobalToUniversalMap GlobalToUniversalMap::identity(index_t n) {
  GlobalToUniversalMap g;
  g.values.resize(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) g.values[static_cast<std::size_t>(i)] = i;
  return g;
}

std::vector<index_t> extract_next_dof(std::span<const index_t> row, int p_fine, int p_coarse) {
  if (p_coarse < 1 || p_coarse >= p_fine)
    throw std::invalid_argument("extract_next_dof: need 1 <= p_coarse < p_fine");
  if (static_cast<index_t>(row.size()) != cube(p_fine))
    throw std::invalid_argument("extract_next_dof: row length is not (p_fine+1)^3");
  const index_t stride_i = static_cast<index_t>(p_fine + 1) * (p_fine + 1);
  const index_t stride_j = p_fine + 1;
  std::vector<index_t> out;
  out.reserve(static_cast<std::size_t>(cube(p_coarse)));
  for (int i = 0; i <= p_coarse; ++i)
    for (int j = 0; j <= p_coarse; ++j)
      for (int k = 0; k <= p_coarse; ++k)
        out.push_back(row[static_cast<std::size_t>(stride_i * i + stride_j * j + k)]);
  return out;
}

CoarseSelection dof_next(const LocalToGlobalMap& l2g, int p_coarse) {
  CoarseSelection sel;
  for (const auto& row : l2g.rows) {
    const std::vector<index_t> kept = extract_next_dof(row, l2g.order, p_coarse);
    sel.collect.insert(sel.collect.end(), kept.begin(), kept.end());
  }
  std::sort(sel.collect.begin(), sel.collect.end());
  sel.collect.erase(std::unique(sel.collect.begin(), sel.collect.end()), sel.collect.end());
  sel.hash_l2g.reserve(sel.collect.size());
  for (std::size_t i = 0; i < sel.collect.size(); ++i)
    sel.hash_l2g.emplace(sel.collect[i], static_cast<index_t>(i));
  return sel;
}

LocalToGlobalMap l2g_next(const LocalToGlobalMap& l2g, const CoarseSelection& sel, int p_coarse) {
  LocalToGlobalMap next;
  next.order = p_coarse;
  next.rows.reserve(l2g.rows.size());
  for (const auto& row : l2g.rows) {
    const std::vector<index_t> kept = extract_next_dof(row, l2g.order, p_coarse);
    std::vector<index_t> coarse_row(kept.size());
    for (std::size_t d = 0; d < kept.size(); ++d) {
      auto it = sel.hash_l2g.find(kept[d]);
      if (it == sel.hash_l2g.end())
        throw std::runtime_error("l2g_next: extracted dof " + std::to_string(kept[d]) +
                                 " missing from selection");
      coarse_row[d] = it->second;
    }
    next.rows.push_back(std::move(coarse_row));
  }
  return next;
}

GlobalToUniversalMap g2u_next(const LocalToGlobalMap& l2g_coarse, const CoarseSelection& sel,
                              const GlobalToUniversalMap& g2u) {
  // Universal indices of the surviving dofs, sorted and deduplicated. In a
  // single process the gather step is a plain copy of collect through g2u.
  std::vector<index_t> collect_univ;
  collect_univ.reserve(sel.collect.size());
  for (index_t fine_glb : sel.collect) {
    if (fine_glb < 0 || fine_glb >= g2u.size())
      throw std::runtime_error("g2u_next: collected dof outside g2u");
    collect_univ.push_back(g2u.values[static_cast<std::size_t>(fine_glb)]);
  }
  std::sort(collect_univ.begin(), collect_univ.end());
  collect_univ.erase(std::unique(collect_univ.begin(), collect_univ.end()), collect_univ.end());
  std::unordered_map<index_t, index_t> hash_g2u;
  hash_g2u.reserve(collect_univ.size());
  for (std::size_t i = 0; i < collect_univ.size(); ++i)
    hash_g2u.emplace(collect_univ[i], static_cast<index_t>(i));

  GlobalToUniversalMap next;
  next.values.assign(sel.collect.size(), -1);
  for (const auto& row : l2g_coarse.rows) {
    for (index_t coarse_glb : row) {
      if (coarse_glb < 0 || coarse_glb >= static_cast<index_t>(sel.collect.size()))
        throw std::runtime_error("g2u_next: coarse dof outside selection");
      const index_t fine_glb = sel.collect[static_cast<std::size_t>(coarse_glb)];
      const index_t fine_univ = g2u.values[static_cast<std::size_t>(fine_glb)];
      auto it = hash_g2u.find(fine_univ);
      if (it == hash_g2u.end())
        throw std::runtime_error("g2u_next: universal index missing from hash");
      next.values[static_cast<std::size_t>(coarse_glb)] = it->second;
    }
  }
  for (index_t v : next.values)
    if (v < 0) throw std::runtime_error("g2u_next: coarse dof not covered by any element");
  return next;
}

void write_l2g(const LocalToGlobalMap& map, const std::filesystem::path& path) {
  std::string out = "p " + std::to_string(map.order) + "\n";
  for (const auto& row : map.rows) {
    std::string line;
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (d) line += ' ';
      line += std::to_string(row[d]);
    }
    out += line;
    out += '\n';
  }
  atomic_write_text(path, out);
}

LocalToGlobalMap read_l2g(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  LocalToGlobalMap map;
  std::string tag;
  if (!(in >> tag >> map.order) || tag != "p")
    throw std::runtime_error(path.string() + ":1: expected 'p <order>' header");
  if (map.order < 1) throw std::runtime_error(path.string() + ":1: order must be >= 1");
  std::string line;
  std::getline(in, line);  // rest of the header line
  long lineno = 1;
  const index_t expected = cube(map.order);
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row_in(line);
    std::vector<index_t> row;
    row.reserve(static_cast<std::size_t>(expected));
    index_t d;
    while (row_in >> d) row.push_back(d);
    if (static_cast<index_t>(row.size()) != expected)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(expected) + " indices, got " +
                               std::to_string(row.size()));
    map.rows.push_back(std::move(row));
  }
  return map;
}

void write_g2u(const GlobalToUniversalMap& map, const std::filesystem::path& path) {
  std::string out;
  out.reserve(map.values.size() * 8);
  for (index_t v : map.values) {
    out += std::to_string(v);
    out += '\n';
  }
  atomic_write_text(path, out);
}

GlobalToUniversalMap read_g2u(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  GlobalToUniversalMap map;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      map.values.push_back(std::stoll(line));
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad index '" +
                               line + "'");
    }
  }
  return map;
}

}  // namespace giamg
