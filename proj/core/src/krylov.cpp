#include "giamg/krylov.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "giamg/io.hpp"

namespace giamg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void append_kv(std::string& out, const char* key, double value, bool json, bool last = false) {
  if (json) {
    out += "  \"";
    out += key;
    out += "\": ";
    out += format_double(value);
    out += last ? "\n" : ",\n";
  } else {
    out += key;
    out += " ";
    out += format_double(value);
    out += "\n";
  }
}

std::string render_timings(const TimingBreakdown& t, bool json) {
  std::string out;
  if (json) out += "{\n";
  append_kv(out, "setup", t.setup, json);
  append_kv(out, "total_solve", t.total_solve, json);
  append_kv(out, "per_iteration", t.per_iteration, json);
  append_kv(out, "vcycle", t.vcycle, json);
  append_kv(out, "smooth", t.smooth, json);
  append_kv(out, "first_level_smooth", t.first_level_smooth, json);
  append_kv(out, "residual", t.residual, json);
  append_kv(out, "transfer", t.transfer, json);
  append_kv(out, "cg_matvec", t.cg_matvec, json);
  append_kv(out, "cg_dot", t.cg_dot, json);
  append_kv(out, "coarsest_solve", t.coarsest_solve, json, true);
  if (json) out += "}\n";
  return out;
}

}  // namespace

std::string TimingBreakdown::to_text() const { return render_timings(*this, false); }
std::string TimingBreakdown::to_json() const { return render_timings(*this, true); }

std::string ConvergenceLog::to_csv() const {
  std::string out = "iter,relres\n";
  for (std::size_t i = 0; i < relres.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(relres[i]);
    out += '\n';
  }
  return out;
}

void IdentityPreconditioner::apply(std::span<const double> r, std::span<double> z) {
  std::copy(r.begin(), r.end(), z.begin());
}

DiagonalPreconditioner::DiagonalPreconditioner(const SparseMatrix& A) {
  inv_diag_ = diagonal(A);
  for (std::size_t i = 0; i < inv_diag_.size(); ++i) {
    if (inv_diag_[i] <= 0.0)
      throw std::runtime_error("DiagonalPreconditioner: non-positive diagonal at row " +
                               std::to_string(i));
    inv_diag_[i] = 1.0 / inv_diag_[i];
  }
}

void DiagonalPreconditioner::apply(std::span<const double> r, std::span<double> z) {
  for (std::size_t i = 0; i < r.size(); ++i) z[i] = inv_diag_[i] * r[i];
}

std::pair<std::vector<double>, ConvergenceLog> pcg_solve(const SparseMatrix& A,
                                                         std::span<const double> b,
                                                         std::span<const double> x0,
                                                         Preconditioner& precond,
                                                         const SolveOptions& opts) {
  if (A.nrows != A.ncols) throw std::invalid_argument("pcg_solve: matrix not square");
  const std::size_t n = static_cast<std::size_t>(A.nrows);
  if (b.size() != n) throw std::invalid_argument("pcg_solve: rhs size mismatch");
  if (!x0.empty() && x0.size() != n)
    throw std::invalid_argument("pcg_solve: initial guess size mismatch");

  const auto t_start = Clock::now();
  ConvergenceLog log;
  std::vector<double> x(n, 0.0);
  if (!x0.empty()) std::copy(x0.begin(), x0.end(), x.begin());

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    // Zero right-hand side: the solution is zero by convention and the
    // solve reports immediate convergence.
    std::fill(x.begin(), x.end(), 0.0);
    log.relres.push_back(0.0);
    log.converged = true;
    log.timings.total_solve = seconds_since(t_start);
    return {std::move(x), log};
  }

  std::vector<double> r(n), z(n), p(n), Ap(n), r_true(n);

  auto timed_matvec = [&](std::span<const double> in, std::span<double> out) {
    const auto t0 = Clock::now();
    spmv(A, in, out);
    log.timings.cg_matvec += seconds_since(t0);
  };
  auto timed_dot = [&](std::span<const double> a, std::span<const double> c) {
    const auto t0 = Clock::now();
    const double d = dot(a, c);
    log.timings.cg_dot += seconds_since(t0);
    return d;
  };

  timed_matvec(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  log.relres.push_back(norm2(r) / bnorm);
  if (log.relres.back() <= opts.rtol) {
    log.converged = true;
    log.timings.total_solve = seconds_since(t_start);
    precond.collect_timers(log.timings);
    return {std::move(x), log};
  }

  {
    const auto t0 = Clock::now();
    precond.apply(r, z);
    log.timings.vcycle += seconds_since(t0);
  }
  std::copy(z.begin(), z.end(), p.begin());
  double rz = timed_dot(r, z);
  if (rz < 0.0)
    throw std::runtime_error("pcg_solve: indefinite preconditioner detected at iteration 0");

  for (std::int64_t k = 1; k <= opts.max_iters; ++k) {
    timed_matvec(p, Ap);
    const double pAp = timed_dot(p, Ap);
    if (pAp <= 0.0)
      throw std::runtime_error("pcg_solve: breakdown, p'Ap <= 0 at iteration " +
                               std::to_string(k));
    const double alpha = rz / pAp;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }

    // Convergence is judged on the residual recomputed from scratch, not
    // the recursively updated one.
    timed_matvec(x, r_true);
    for (std::size_t i = 0; i < n; ++i) r_true[i] = b[i] - r_true[i];
    log.relres.push_back(norm2(r_true) / bnorm);
    log.iterations = k;
    if (log.relres.back() <= opts.rtol) {
      log.converged = true;
      break;
    }
    if (k == opts.max_iters) break;

    {
      const auto t0 = Clock::now();
      precond.apply(r, z);
      log.timings.vcycle += seconds_since(t0);
    }
    const double rz_new = timed_dot(r, z);
    if (rz_new < 0.0)
      throw std::runtime_error("pcg_solve: indefinite preconditioner detected at iteration " +
                               std::to_string(k));
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  log.timings.total_solve = seconds_since(t_start);
  if (log.iterations > 0)
    log.timings.per_iteration = log.timings.total_solve / static_cast<double>(log.iterations);
  precond.collect_timers(log.timings);
  return {std::move(x), log};
}

}  // namespace giamg
