#include "giamg/smoothers.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace giamg {

namespace {

std::vector<double> inverse_diagonal(const SparseMatrix& A) {
  std::vector<double> inv = diagonal(A);
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (inv[i] == 0.0)
      throw std::runtime_error("smoother: zero diagonal entry at row " + std::to_string(i));
    inv[i] = 1.0 / inv[i];
  }
  return inv;
}

}  // namespace

double estimate_lambda_max(const SparseMatrix& A, int iters, std::uint64_t seed) {
  if (A.nrows != A.ncols) throw std::invalid_argument("estimate_lambda_max: matrix not square");
  if (A.nrows == 0) return 0.0;
  const std::vector<double> inv_diag = inverse_diagonal(A);
  const std::size_t n = static_cast<std::size_t>(A.nrows);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(n), y(n);
  for (double& v : x) v = dist(rng);

  for (int it = 0; it < iters; ++it) {
    spmv(A, x, y);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] *= inv_diag[i];
      norm2 += y[i] * y[i];
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) return 0.0;  // x happened to be in the null space
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }

  // Generalized Rayleigh quotient (x'Ax)/(x'Dx) of the final iterate.
  spmv(A, x, y);
  double xax = 0.0, xdx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xax += x[i] * y[i];
    xdx += x[i] * x[i] / inv_diag[i];
  }
  return xax / xdx;
}

ChebyshevData make_chebyshev(const SparseMatrix& A, int iterations, double lo_factor,
                             double hi_factor, int power_iters, std::uint64_t seed) {
  if (iterations < 1) throw std::invalid_argument("make_chebyshev: iterations must be >= 1");
  if (lo_factor <= 1.0 || hi_factor < 1.0)
    throw std::invalid_argument("make_chebyshev: need lo_factor > 1 and hi_factor >= 1");
  ChebyshevData data;
  data.inv_diag = inverse_diagonal(A);
  data.lambda_max = estimate_lambda_max(A, power_iters, seed);
  if (data.lambda_max <= 0.0)
    throw std::runtime_error("make_chebyshev: nonpositive eigenvalue estimate");
  data.lo_factor = lo_factor;
  data.hi_factor = hi_factor;
  data.iterations = iterations;
  return data;
}

void chebyshev_smooth(const SparseMatrix& A, const ChebyshevData& data, std::span<const double> b,
                      std::span<double> x, ChebyshevWorkspace& ws) {
  const std::size_t n = static_cast<std::size_t>(A.nrows);
  if (b.size() != n || x.size() != n)
    throw std::invalid_argument("chebyshev_smooth: dimension mismatch");
  ws.resize(n);

  const double lmin = data.lambda_max / data.lo_factor;
  const double lmax = data.hi_factor * data.lambda_max;
  const double theta = 0.5 * (lmax + lmin);
  const double delta = 0.5 * (lmax - lmin);

  spmv(A, x, ws.residual);
  for (std::size_t i = 0; i < n; ++i) ws.residual[i] = b[i] - ws.residual[i];

  // Degenerate single-point interval: the recurrence collapses to
  // Richardson steps with 1/theta, exact for a single eigenvalue.
  if (delta <= 1e-14 * theta) {
    for (int it = 0; it < data.iterations; ++it) {
      for (std::size_t i = 0; i < n; ++i) x[i] += data.inv_diag[i] * ws.residual[i] / theta;
      if (it + 1 == data.iterations) break;
      spmv(A, x, ws.residual);
      for (std::size_t i = 0; i < n; ++i) ws.residual[i] = b[i] - ws.residual[i];
    }
    return;
  }

  const double sigma = theta / delta;
  double rho_prev = 1.0 / sigma;
  for (std::size_t i = 0; i < n; ++i)
    ws.direction[i] = data.inv_diag[i] * ws.residual[i] / theta;
  for (std::size_t i = 0; i < n; ++i) x[i] += ws.direction[i];

  for (int it = 1; it < data.iterations; ++it) {
    spmv(A, ws.direction, ws.scratch);
    for (std::size_t i = 0; i < n; ++i) ws.residual[i] -= ws.scratch[i];
    const double rho = 1.0 / (2.0 * sigma - rho_prev);
    const double c_dir = rho * rho_prev;
    const double c_res = 2.0 * rho / delta;
    for (std::size_t i = 0; i < n; ++i)
      ws.direction[i] = c_dir * ws.direction[i] + c_res * data.inv_diag[i] * ws.residual[i];
    for (std::size_t i = 0; i < n; ++i) x[i] += ws.direction[i];
    rho_prev = rho;
  }
}

}  // namespace giamg
