#ifndef GIAMG_COMMANDS_HPP
#define GIAMG_COMMANDS_HPP

#include <filesystem>
#include <vector>

#include "giamg/fem.hpp"
#include "giamg/options.hpp"

namespace giamg {

enum class Command { Assemble, Solve, HierarchyInfo, Bench };

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitInputError = 3;

struct RunConfig {
  Command command = Command::Solve;

  // Built-in benchmark problem, used when no matrix path is given.
  int n_per_dim = 2;
  int p = 4;
  double lambda = 1.0;
  BoundaryPolicy bc = BoundaryPolicy::Penalty;

  // Imported system. l2g/g2u are required to p-coarsen an imported matrix
  // of order above 1; without them the hierarchy is aggregation-only.
  std::filesystem::path matrix_path;
  std::filesystem::path rhs_path;
  std::filesystem::path l2g_path;
  std::filesystem::path g2u_path;

  SolveOptions options;
  std::filesystem::path out_dir = ".";
  bool write_json_timings = false;

  // Sweep settings for the bench command.
  std::vector<int> bench_smooth_iters{2};
  std::vector<int> bench_strides{1};
  int bench_warmup = 2;
  int bench_repeats = 10;
};

// Writes A.mtx, b.vec, exact.vec, map.l2g and map.g2u into out_dir.
int cmd_assemble(const RunConfig& cfg);

// Solves the configured system; writes solution.vec, convergence.csv and
// timings.txt (plus timings.json when enabled) into out_dir.
int cmd_solve(const RunConfig& cfg);

// Prints the per-level table for the configured system.
int cmd_hierarchy_info(const RunConfig& cfg);

// Repeated timed v-cycles (after warmup) plus a solve per configuration,
// one report row per (stride, smoothing iterations) pair.
int cmd_bench(const RunConfig& cfg);

// Dispatches on cfg.command; maps thrown errors to kExitInputError.
int run(const RunConfig& cfg);

}  // namespace giamg

#endif
