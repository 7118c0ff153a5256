#include "giamg/hierarchy.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "giamg/coarsen_h.hpp"
#include "giamg/coarsen_p.hpp"
#include "giamg/log.hpp"

namespace giamg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ChebyshevData level_smoother(const SparseMatrix& A, const SolveOptions& opts) {
  return make_chebyshev(A, opts.smooth_iters, opts.cheby_lo_factor, opts.cheby_hi_factor,
                        opts.power_iters, opts.seed);
}

}  // namespace

Hierarchy setup(const SparseMatrix& A, const LocalToGlobalMap* l2g,
                const GlobalToUniversalMap* g2u, const SolveOptions& opts) {
  if (A.nrows != A.ncols) throw std::invalid_argument("setup: matrix not square");
  if (!is_symmetric(A)) throw std::invalid_argument("setup: matrix not symmetric");

  Hierarchy h;
  SparseMatrix current = A;
  int order = (l2g && !l2g->rows.empty()) ? l2g->order : -1;

  // p-coarsening chain, driven by the elemental maps.
  if (order > 1) {
    if (!g2u) throw std::invalid_argument("setup: l2g given without g2u");
    if (l2g->num_dofs() != A.nrows || g2u->size() != A.nrows)
      throw std::invalid_argument("setup: maps inconsistent with matrix size");
    order = l2g->order;

    const PCoarsenPlan plan = plan_orders(order, opts.p_stride);
    LocalToGlobalMap l2g_cur = *l2g;
    GlobalToUniversalMap g2u_cur = *g2u;
    for (std::size_t s = 0; s + 1 < plan.orders.size(); ++s) {
      const int p_coarse = plan.orders[s + 1];
      const CoarseSelection sel = dof_next(l2g_cur, p_coarse);
      LocalToGlobalMap l2g_coarse = l2g_next(l2g_cur, sel, p_coarse);
      GlobalToUniversalMap g2u_coarse = g2u_next(l2g_coarse, sel, g2u_cur);

      Level level;
      level.kind = LevelKind::P;
      level.order = plan.orders[s];
      level.A = std::move(current);
      level.P = build_p_prolongation(l2g_cur, l2g_coarse, g2u_cur, g2u_coarse, sel);
      level.R = transpose(level.P);
      if (level.P.nrows != level.A.nrows)
        throw std::runtime_error("setup: prolongation rows do not match level size");
      current = galerkin_triple(level.R, level.A, level.P);
      level.smoother = level_smoother(level.A, opts);
      h.levels.push_back(std::move(level));

      l2g_cur = std::move(l2g_coarse);
      g2u_cur = std::move(g2u_coarse);
      order = p_coarse;
    }
    // Elemental maps are only needed to build the grids; they go out of
    // scope here.
  }

  // Smoothed-aggregation chain on the low-order operator.
  int h_levels = 0;
  while (current.nrows > opts.coarsest_max_size && h_levels < opts.max_h_levels) {
    const StrengthGraph graph = strength_graph(current, opts.theta);
    const Aggregation agg = mis_aggregate(graph, opts.seed);
    if (agg.n_aggregates >= current.nrows) break;  // coarsening stalled
    const SparseMatrix T = tentative_prolongation(agg);
    SparseMatrix P = opts.prolong_smoother == ProlongSmoother::DampedJacobi
                         ? smooth_prolongation(current, T, opts.sa_omega)
                         : smooth_prolongation_spai0(current, T);

    Level level;
    level.kind = LevelKind::H;
    level.order = h_levels == 0 ? order : -1;
    level.A = std::move(current);
    level.P = std::move(P);
    level.R = transpose(level.P);
    current = galerkin_triple(level.R, level.A, level.P);
    level.smoother = level_smoother(level.A, opts);
    h.levels.push_back(std::move(level));
    ++h_levels;
    order = -1;
  }

  Level coarsest;
  coarsest.kind = LevelKind::Coarsest;
  coarsest.order = order;
  coarsest.A = std::move(current);
  h.levels.push_back(std::move(coarsest));
  h.coarsest_factorization = DenseLU::factor(h.levels.back().A);

  for (std::size_t i = 0; i + 1 < h.levels.size(); ++i)
    if (h.levels[i + 1].size() >= h.levels[i].size())
      throw std::runtime_error("setup: level sizes not strictly decreasing");

  log_msg(1, "hierarchy built:\n" + hierarchy_info(h));
  return h;
}

Hierarchy setup(const AssembledSystem& sys, const SolveOptions& opts) {
  if (sys.has_maps() && sys.p > 1) return setup(sys.A, &sys.l2g, &sys.g2u, opts);
  return setup(sys.A, nullptr, nullptr, opts);
}

std::string hierarchy_info(const Hierarchy& h) {
  std::string out = "level kind order size nnz nnz_per_row\n";
  for (std::size_t i = 0; i < h.levels.size(); ++i) {
    const Level& lev = h.levels[i];
    const char* kind = lev.kind == LevelKind::P ? "p"
                       : lev.kind == LevelKind::H ? "h"
                                                  : "coarsest";
    out += std::to_string(i);
    out += ' ';
    out += kind;
    out += ' ';
    out += lev.order >= 0 ? std::to_string(lev.order) : std::string("-");
    out += ' ';
    out += std::to_string(lev.size());
    out += ' ';
    out += std::to_string(lev.A.nnz());
    char buf[32];
    std::snprintf(buf, sizeof(buf), " %.1f\n",
                  lev.size() > 0 ? static_cast<double>(lev.A.nnz()) / lev.size() : 0.0);
    out += buf;
  }
  return out;
}

VcycleWorkspace make_vcycle_workspace(const Hierarchy& h) {
  VcycleWorkspace ws;
  ws.levels.resize(h.levels.size());
  for (std::size_t i = 0; i < h.levels.size(); ++i) {
    const std::size_t n = static_cast<std::size_t>(h.levels[i].size());
    ws.levels[i].residual.resize(n);
    ws.levels[i].correction.resize(n);
    ws.levels[i].cheby.resize(n);
    if (i + 1 < h.levels.size()) {
      const std::size_t nc = static_cast<std::size_t>(h.levels[i + 1].size());
      ws.levels[i].coarse_b.resize(nc);
      ws.levels[i].coarse_x.resize(nc);
    }
  }
  return ws;
}

void vcycle(const Hierarchy& h, std::size_t level, std::span<const double> b,
            std::span<double> x, VcycleWorkspace& ws) {
  if (level >= h.levels.size()) throw std::invalid_argument("vcycle: level out of range");
  const Level& lev = h.levels[level];
  const std::size_t n = static_cast<std::size_t>(lev.size());
  if (b.size() != n || x.size() != n) throw std::invalid_argument("vcycle: dimension mismatch");
  VcycleTimers* timers = ws.timers;
  const auto t_entry = Clock::now();

  if (lev.kind == LevelKind::Coarsest) {
    h.coarsest_factorization.solve(b, x);
    if (timers) {
      timers->coarsest_solve += seconds_since(t_entry);
      if (level == 0) {
        timers->total += seconds_since(t_entry);
        ++timers->cycles;
      }
    }
    return;
  }

  VcycleWorkspace::LevelBuffers& buf = ws.levels[level];

  {
    const auto t0 = Clock::now();
    chebyshev_smooth(lev.A, lev.smoother, b, x, buf.cheby);
    if (timers) {
      const double dt = seconds_since(t0);
      timers->smooth += dt;
      if (level == 0) timers->first_level_smooth += dt;
    }
  }

  {
    const auto t0 = Clock::now();
    spmv(lev.A, x, buf.residual);
    for (std::size_t i = 0; i < n; ++i) buf.residual[i] = b[i] - buf.residual[i];
    if (timers) timers->residual += seconds_since(t0);
  }

  {
    const auto t0 = Clock::now();
    spmv(lev.R, buf.residual, buf.coarse_b);
    if (timers) timers->transfer += seconds_since(t0);
  }

  std::fill(buf.coarse_x.begin(), buf.coarse_x.end(), 0.0);
  vcycle(h, level + 1, buf.coarse_b, buf.coarse_x, ws);

  {
    const auto t0 = Clock::now();
    spmv(lev.P, buf.coarse_x, buf.correction);
    if (timers) timers->transfer += seconds_since(t0);
  }
  for (std::size_t i = 0; i < n; ++i) x[i] += buf.correction[i];

  {
    const auto t0 = Clock::now();
    chebyshev_smooth(lev.A, lev.smoother, b, x, buf.cheby);
    if (timers) {
      const double dt = seconds_since(t0);
      timers->smooth += dt;
      if (level == 0) timers->first_level_smooth += dt;
    }
  }

  if (timers && level == 0) {
    timers->total += seconds_since(t_entry);
    ++timers->cycles;
  }
}

GiamgPreconditioner::GiamgPreconditioner(const Hierarchy& h)
    : h_(&h), ws_(make_vcycle_workspace(h)) {
  ws_.timers = &timers_;
}

void GiamgPreconditioner::apply(std::span<const double> r, std::span<double> z) {
  std::fill(z.begin(), z.end(), 0.0);
  vcycle(*h_, 0, r, z, ws_);
}

void GiamgPreconditioner::collect_timers(TimingBreakdown& t) const {
  t.smooth = timers_.smooth;
  t.first_level_smooth = timers_.first_level_smooth;
  t.residual = timers_.residual;
  t.transfer = timers_.transfer;
  t.coarsest_solve = timers_.coarsest_solve;
}

}  // namespace giamg
