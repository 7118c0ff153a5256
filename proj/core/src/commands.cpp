#include "giamg/commands.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <stdexcept>

#include "giamg/hierarchy.hpp"
#include "giamg/io.hpp"
#include "giamg/log.hpp"

namespace giamg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

HexMesh unit_cube(int n_per_dim) {
  HexMesh mesh;
  mesh.n_per_dim = n_per_dim;
  return mesh;
}

// Builds or imports the system to operate on. Imported systems reuse the
// AssembledSystem carrier; exact_coeffs stays empty and the mesh is unused.
AssembledSystem load_system(const RunConfig& cfg, bool need_rhs, bool with_projection) {
  if (cfg.matrix_path.empty()) {
    if (cfg.n_per_dim < 1 || cfg.p < 1)
      throw std::invalid_argument("need n_per_dim >= 1 and p >= 1");
    return assemble_helmholtz(unit_cube(cfg.n_per_dim), cfg.p, cfg.lambda, cfg.bc,
                              with_projection);
  }
  AssembledSystem sys;
  sys.A = read_matrix_market(cfg.matrix_path);
  if (sys.A.nrows != sys.A.ncols) throw std::runtime_error("imported matrix is not square");
  if (need_rhs) {
    if (cfg.rhs_path.empty()) throw std::runtime_error("import solve requires --rhs");
    sys.b = read_vector(cfg.rhs_path);
    if (static_cast<index_t>(sys.b.size()) != sys.A.nrows)
      throw std::runtime_error("rhs length does not match the matrix");
  } else {
    sys.b.assign(static_cast<std::size_t>(sys.A.nrows), 0.0);
  }
  if (!cfg.l2g_path.empty() || !cfg.g2u_path.empty()) {
    if (cfg.l2g_path.empty() || cfg.g2u_path.empty())
      throw std::runtime_error("l2g and g2u must be imported together");
    sys.l2g = read_l2g(cfg.l2g_path);
    sys.g2u = read_g2u(cfg.g2u_path);
    sys.p = sys.l2g.order;
    if (sys.l2g.num_dofs() != sys.A.nrows || sys.g2u.size() != sys.A.nrows)
      throw std::runtime_error("imported maps do not match the matrix size");
  } else {
    sys.p = 1;
  }
  return sys;
}

}  // namespace

int cmd_assemble(const RunConfig& cfg) {
  const AssembledSystem sys = load_system(cfg, false, true);
  std::filesystem::create_directories(cfg.out_dir);
  write_matrix_market(sys.A, cfg.out_dir / "A.mtx");
  write_vector(sys.b, cfg.out_dir / "b.vec");
  write_vector(sys.exact_coeffs, cfg.out_dir / "exact.vec");
  write_l2g(sys.l2g, cfg.out_dir / "map.l2g");
  write_g2u(sys.g2u, cfg.out_dir / "map.g2u");
  std::cout << "assembled " << sys.A.nrows << " dofs, " << sys.A.nnz() << " nonzeros -> "
            << cfg.out_dir.string() << "\n";
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg) {
  const AssembledSystem sys = load_system(cfg, true, false);
  const SolveOptions& opts = cfg.options;

  double setup_seconds = 0.0;
  std::unique_ptr<Hierarchy> hierarchy;
  std::unique_ptr<Preconditioner> precond;
  switch (opts.preconditioner) {
    case PrecondKind::Giamg: {
      const auto t0 = Clock::now();
      hierarchy = std::make_unique<Hierarchy>(setup(sys, opts));
      setup_seconds = seconds_since(t0);
      precond = std::make_unique<GiamgPreconditioner>(*hierarchy);
      break;
    }
    case PrecondKind::Diagonal:
      precond = std::make_unique<DiagonalPreconditioner>(sys.A);
      break;
    case PrecondKind::None:
      precond = std::make_unique<IdentityPreconditioner>();
      break;
  }

  auto [x, log] = pcg_solve(sys.A, sys.b, {}, *precond, opts);
  log.timings.setup = setup_seconds;

  std::filesystem::create_directories(cfg.out_dir);
  write_vector(x, cfg.out_dir / "solution.vec");
  atomic_write_text(cfg.out_dir / "convergence.csv", log.to_csv());
  atomic_write_text(cfg.out_dir / "timings.txt", log.timings.to_text());
  if (cfg.write_json_timings)
    atomic_write_text(cfg.out_dir / "timings.json", log.timings.to_json());

  std::cout << (log.converged ? "converged" : "NOT converged") << " in " << log.iterations
            << " iterations, final relative residual " << format_double(log.relres.back())
            << "\n";
  return log.converged ? kExitOk : kExitNotConverged;
}

int cmd_hierarchy_info(const RunConfig& cfg) {
  const AssembledSystem sys = load_system(cfg, false, false);
  const Hierarchy h = setup(sys, cfg.options);
  std::cout << hierarchy_info(h);
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg) {
  const AssembledSystem sys = load_system(cfg, true, false);
  std::printf("%-7s %-7s %-10s %-12s %-12s %-12s %-12s %-12s %-12s\n", "stride", "smooth",
              "pcg_iters", "first_smooth", "smooth", "residual", "transfer", "coarsest",
              "vcycle");
  for (int stride : cfg.bench_strides) {
    for (int smooth : cfg.bench_smooth_iters) {
      SolveOptions opts = cfg.options;
      opts.p_stride = stride;
      opts.smooth_iters = smooth;
      const Hierarchy h = setup(sys, opts);

      VcycleTimers timers;
      VcycleWorkspace ws = make_vcycle_workspace(h);
      std::vector<double> x(sys.b.size());
      for (int rep = 0; rep < cfg.bench_warmup; ++rep) {
        std::fill(x.begin(), x.end(), 0.0);
        vcycle(h, 0, sys.b, x, ws);
      }
      ws.timers = &timers;
      for (int rep = 0; rep < cfg.bench_repeats; ++rep) {
        std::fill(x.begin(), x.end(), 0.0);
        vcycle(h, 0, sys.b, x, ws);
      }
      const double cycles = timers.cycles > 0 ? static_cast<double>(timers.cycles) : 1.0;

      GiamgPreconditioner precond(h);
      const auto [sol, log] = pcg_solve(sys.A, sys.b, {}, precond, opts);
      (void)sol;

      std::printf("%-7d %-7d %-10lld %-12.3e %-12.3e %-12.3e %-12.3e %-12.3e %-12.3e\n", stride,
                  smooth, static_cast<long long>(log.iterations),
                  timers.first_level_smooth / cycles, timers.smooth / cycles,
                  timers.residual / cycles, timers.transfer / cycles,
                  timers.coarsest_solve / cycles, timers.total / cycles);
    }
  }
  return kExitOk;
}

int run(const RunConfig& cfg) {
  try {
    switch (cfg.command) {
      case Command::Assemble:
        return cmd_assemble(cfg);
      case Command::Solve:
        return cmd_solve(cfg);
      case Command::HierarchyInfo:
        return cmd_hierarchy_info(cfg);
      case Command::Bench:
        return cmd_bench(cfg);
    }
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace giamg
