// Command-line front end: assemble benchmark systems, solve them or
// imported ones, and inspect or profile the multigrid hierarchy.

#include <CLI11.hpp>

#include <string>
#include <vector>

#include "giamg/commands.hpp"

namespace {

// Accepts "2", "1,3" and "1..4" forms for sweep flags.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    out.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void add_problem_flags(CLI::App* cmd, giamg::RunConfig& cfg, std::string& bc) {
  cmd->add_option("--n", cfg.n_per_dim, "Elements per axis of the unit-cube benchmark");
  cmd->add_option("--p", cfg.p, "Polynomial order of the benchmark basis");
  cmd->add_option("--lambda", cfg.lambda, "Reaction coefficient of the benchmark operator");
  cmd->add_option("--bc", bc, "Boundary handling: penalty or eliminate")
      ->check(CLI::IsMember({"penalty", "eliminate"}));
  cmd->add_option("--matrix", cfg.matrix_path, "Matrix Market file of an imported system");
  cmd->add_option("--rhs", cfg.rhs_path, "Right-hand-side vector file for an imported system");
  cmd->add_option("--l2g", cfg.l2g_path, "Local-to-global map file for an imported system");
  cmd->add_option("--g2u", cfg.g2u_path, "Global-to-universal map file for an imported system");
  cmd->add_option("--out-dir", cfg.out_dir, "Directory for output artifacts");
}

void add_solver_flags(CLI::App* cmd, giamg::RunConfig& cfg, std::string& precond) {
  auto& o = cfg.options;
  cmd->add_option("--rtol", o.rtol, "Relative residual tolerance");
  cmd->add_option("--max-iters", o.max_iters, "Iteration cap");
  cmd->add_option("--p-stride", o.p_stride, "Order decrement per p-level");
  cmd->add_option("--theta", o.theta, "Strength-of-connection threshold");
  cmd->add_option("--coarsest-max", o.coarsest_max_size, "Largest allowed coarsest level");
  cmd->add_option("--max-h-levels", o.max_h_levels, "Cap on aggregation levels");
  cmd->add_option("--precond", precond, "Preconditioner: giamg, diag or none")
      ->check(CLI::IsMember({"giamg", "diag", "none"}));
  cmd->add_option("--seed", o.seed, "Seed for spectral estimation start vectors");
  cmd->add_option("--cheby-lo", o.cheby_lo_factor, "Chebyshev interval lower factor");
  cmd->add_option("--cheby-hi", o.cheby_hi_factor, "Chebyshev interval upper factor");
  cmd->add_option("--power-iters", o.power_iters, "Power-iteration steps for lambda_max");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry-informed algebraic multigrid solver for high-order hexahedral systems"};
  app.require_subcommand(1);

  giamg::RunConfig cfg;
  std::string bc = "penalty";
  std::string precond = "giamg";
  std::string smooth_list = "2";
  std::string stride_list;

  CLI::App* assemble = app.add_subcommand("assemble", "Assemble a benchmark system to files");
  add_problem_flags(assemble, cfg, bc);

  CLI::App* solve = app.add_subcommand("solve", "Solve a benchmark or imported system");
  add_problem_flags(solve, cfg, bc);
  add_solver_flags(solve, cfg, precond);
  solve->add_option("--smooth-iters", cfg.options.smooth_iters,
                    "Chebyshev iterations per pre/post smoothing pass");
  solve->add_flag("--json", cfg.write_json_timings, "Also write timings.json");

  CLI::App* info = app.add_subcommand("hierarchy-info", "Print the per-level hierarchy table");
  add_problem_flags(info, cfg, bc);
  add_solver_flags(info, cfg, precond);
  info->add_option("--smooth-iters", cfg.options.smooth_iters,
                   "Chebyshev iterations per pre/post smoothing pass");

  CLI::App* bench = app.add_subcommand("bench", "Time v-cycle phases, optionally over sweeps");
  add_problem_flags(bench, cfg, bc);
  add_solver_flags(bench, cfg, precond);
  bench->add_option("--smooth-iters", smooth_list,
                    "Smoothing iterations, single value, comma list or lo..hi range");
  bench->add_option("--p-stride-list", stride_list,
                    "Strides to compare, comma list (overrides --p-stride)");
  bench->add_option("--warmup", cfg.bench_warmup, "Untimed v-cycles before measuring");
  bench->add_option("--repeats", cfg.bench_repeats, "Timed v-cycles per configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return giamg::kExitInputError;
  }

  cfg.bc = bc == "eliminate" ? giamg::BoundaryPolicy::Eliminate : giamg::BoundaryPolicy::Penalty;
  cfg.options.preconditioner = precond == "diag"   ? giamg::PrecondKind::Diagonal
                               : precond == "none" ? giamg::PrecondKind::None
                                                   : giamg::PrecondKind::Giamg;
  if (assemble->parsed()) cfg.command = giamg::Command::Assemble;
  if (solve->parsed()) cfg.command = giamg::Command::Solve;
  if (info->parsed()) cfg.command = giamg::Command::HierarchyInfo;
  if (bench->parsed()) {
    cfg.command = giamg::Command::Bench;
    try {
      cfg.bench_smooth_iters = parse_int_list(smooth_list);
      cfg.bench_strides =
          stride_list.empty() ? std::vector<int>{cfg.options.p_stride} : parse_int_list(stride_list);
    } catch (const std::exception&) {
      std::fprintf(stderr, "error: bad sweep list\n");
      return giamg::kExitInputError;
    }
  }
  return giamg::run(cfg);
}
