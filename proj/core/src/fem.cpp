#include "giamg/fem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "giamg/krylov.hpp"
#include "giamg/options.hpp"

namespace giamg {

namespace {

constexpr double kPi = std::numbers::pi;

index_t axis_position(index_t elem, int mode, int p) {
  if (mode == 0) return elem * p;
  if (mode == 1) return elem * p + p;
  return elem * p + mode - 1;
}

struct GridIndexer {
  int n = 1;
  int p = 1;
  index_t n1 = 2;  // positions per axis, n*p + 1

  GridIndexer(int n_per_dim, int order)
      : n(n_per_dim), p(order), n1(static_cast<index_t>(n_per_dim) * order + 1) {}

  index_t num_dofs() const { return n1 * n1 * n1; }
  index_t global(index_t px, index_t py, index_t pz) const { return (px * n1 + py) * n1 + pz; }
  bool boundary_position(index_t pos) const { return pos == 0 || pos == n1 - 1; }
  bool is_boundary(index_t g) const {
    const index_t pz = g % n1;
    const index_t py = (g / n1) % n1;
    const index_t px = g / (n1 * n1);
    return boundary_position(px) || boundary_position(py) || boundary_position(pz);
  }
};

// 1D basis values and derivatives tabulated at the quadrature points.
struct BasisTable {
  int p;
  int nq;
  std::vector<double> value;  // (p+1) x nq
  std::vector<double> deriv;

  BasisTable(int order, const Quadrature1D& quad)
      : p(order), nq(static_cast<int>(quad.points.size())) {
    value.resize(static_cast<std::size_t>(p + 1) * nq);
    deriv.resize(static_cast<std::size_t>(p + 1) * nq);
    for (int i = 0; i <= p; ++i) {
      for (int q = 0; q < nq; ++q) {
        value[static_cast<std::size_t>(i) * nq + q] = phi_1d(i, p, quad.points[q]);
        deriv[static_cast<std::size_t>(i) * nq + q] = phi_1d_derivative(i, p, quad.points[q]);
      }
    }
  }
  double val(int i, int q) const { return value[static_cast<std::size_t>(i) * nq + q]; }
  double der(int i, int q) const { return deriv[static_cast<std::size_t>(i) * nq + q]; }
};

void add_to_diagonal(SparseMatrix& A, index_t row, double delta) {
  auto begin = A.col_indices.begin() + A.row_offsets[row];
  auto end = A.col_indices.begin() + A.row_offsets[row + 1];
  auto it = std::lower_bound(begin, end, row);
  if (it == end || *it != row)
    throw std::runtime_error("assemble: missing diagonal entry at row " + std::to_string(row));
  A.values[static_cast<std::size_t>(it - A.col_indices.begin())] += delta;
}

}  // namespace

double jacobi_poly(int n, double alpha, double beta, double a) {
  if (n < 0) throw std::invalid_argument("jacobi_poly: negative order");
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p_cur = 0.5 * ((alpha - beta) + (alpha + beta + 2.0) * a);
  for (int k = 2; k <= n; ++k) {
    const double ab = alpha + beta;
    const double c1 = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0);
    const double c2 = (2.0 * k + ab - 1.0) * (alpha * alpha - beta * beta);
    const double c3 = (2.0 * k + ab - 2.0) * (2.0 * k + ab - 1.0) * (2.0 * k + ab);
    const double c4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab);
    const double p_next = ((c2 + c3 * a) * p_cur - c4 * p_prev) / c1;
    p_prev = p_cur;
    p_cur = p_next;
  }
  return p_cur;
}

double jacobi_poly_derivative(int n, double alpha, double beta, double a) {
  if (n < 0) throw std::invalid_argument("jacobi_poly_derivative: negative order");
  if (n == 0) return 0.0;
  return 0.5 * (n + alpha + beta + 1.0) * jacobi_poly(n - 1, alpha + 1.0, beta + 1.0, a);
}

double phi_1d(int i, int p, double a) {
  if (i < 0 || i > p)
    throw std::invalid_argument("phi_1d: mode " + std::to_string(i) + " outside order " +
                                std::to_string(p));
  if (i == 0) return 0.5 * (1.0 - a);
  if (i == 1) return 0.5 * (1.0 + a);
  return 0.25 * (1.0 - a) * (1.0 + a) * jacobi_poly(i - 2, 1.0, 1.0, a);
}

double phi_1d_derivative(int i, int p, double a) {
  if (i < 0 || i > p)
    throw std::invalid_argument("phi_1d_derivative: mode " + std::to_string(i) +
                                " outside order " + std::to_string(p));
  if (i == 0) return -0.5;
  if (i == 1) return 0.5;
  return -0.5 * a * jacobi_poly(i - 2, 1.0, 1.0, a) +
         0.25 * (1.0 - a) * (1.0 + a) * jacobi_poly_derivative(i - 2, 1.0, 1.0, a);
}

index_t elemental_dof_index(int i, int j, int k, int p) {
  if (i < 0 || j < 0 || k < 0 || i > p || j > p || k > p)
    throw std::invalid_argument("elemental_dof_index: tensor index outside [0, p]");
  const index_t e = p + 1;
  return e * e * i + e * j + k;
}

Quadrature1D gauss_legendre(int npoints) {
  if (npoints < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  Quadrature1D quad;
  quad.points.resize(static_cast<std::size_t>(npoints));
  quad.weights.resize(static_cast<std::size_t>(npoints));
  const int n = npoints;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pn = 0.0, dpn = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre value and derivative at x by recurrence.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pn = p1;
      dpn = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Recompute derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dpn = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
    quad.points[static_cast<std::size_t>(i)] = -x;  // ascending order
    quad.weights[static_cast<std::size_t>(i)] = w;
    quad.points[static_cast<std::size_t>(n - 1 - i)] = x;
    quad.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) {
    // Middle point of an odd rule is 0; the loop above already set it, but
    // pin it exactly.
    quad.points[static_cast<std::size_t>(n / 2)] = 0.0;
  }
  return quad;
}

ElementMatrices element_matrices(const HexMesh& mesh, int p) {
  if (p < 1) throw std::invalid_argument("element_matrices: order must be >= 1");
  const Quadrature1D quad = gauss_legendre(p + 2);
  const BasisTable basis(p, quad);
  const int nq = basis.nq;
  const int nb = p + 1;
  const auto h = mesh.element_size();

  // Reference 1D mass and stiffness, then per-axis physical scaling.
  std::vector<double> mref(static_cast<std::size_t>(nb) * nb, 0.0);
  std::vector<double> kref(static_cast<std::size_t>(nb) * nb, 0.0);
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      double m = 0.0, k = 0.0;
      for (int q = 0; q < nq; ++q) {
        m += quad.weights[q] * basis.val(i, q) * basis.val(j, q);
        k += quad.weights[q] * basis.der(i, q) * basis.der(j, q);
      }
      mref[static_cast<std::size_t>(i) * nb + j] = m;
      kref[static_cast<std::size_t>(i) * nb + j] = k;
    }
  }
  std::array<std::vector<double>, 3> M, K;
  for (int ax = 0; ax < 3; ++ax) {
    M[ax].resize(mref.size());
    K[ax].resize(kref.size());
    for (std::size_t t = 0; t < mref.size(); ++t) {
      M[ax][t] = 0.5 * h[ax] * mref[t];
      K[ax][t] = 2.0 / h[ax] * kref[t];
    }
  }

  ElementMatrices em;
  em.p = p;
  em.ndof = static_cast<index_t>(nb) * nb * nb;
  em.stiffness.resize(static_cast<std::size_t>(em.ndof) * em.ndof);
  em.mass.resize(static_cast<std::size_t>(em.ndof) * em.ndof);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < nb; ++k) {
        const index_t a = elemental_dof_index(i, j, k, p);
        for (int i2 = 0; i2 < nb; ++i2)
          for (int j2 = 0; j2 < nb; ++j2)
            for (int k2 = 0; k2 < nb; ++k2) {
              const index_t b = elemental_dof_index(i2, j2, k2, p);
              const double mx = M[0][static_cast<std::size_t>(i) * nb + i2];
              const double my = M[1][static_cast<std::size_t>(j) * nb + j2];
              const double mz = M[2][static_cast<std::size_t>(k) * nb + k2];
              const double kx = K[0][static_cast<std::size_t>(i) * nb + i2];
              const double ky = K[1][static_cast<std::size_t>(j) * nb + j2];
              const double kz = K[2][static_cast<std::size_t>(k) * nb + k2];
              em.stiffness[static_cast<std::size_t>(a) * em.ndof + b] =
                  kx * my * mz + mx * ky * mz + mx * my * kz;
              em.mass[static_cast<std::size_t>(a) * em.ndof + b] = mx * my * mz;
            }
      }
  return em;
}

LocalToGlobalMap build_structured_l2g(int n_per_dim, int p) {
  if (n_per_dim < 1 || p < 1)
    throw std::invalid_argument("build_structured_l2g: need n_per_dim >= 1 and p >= 1");
  const GridIndexer grid(n_per_dim, p);
  LocalToGlobalMap map;
  map.order = p;
  map.rows.reserve(static_cast<std::size_t>(grid.n) * grid.n * grid.n);
  for (index_t ex = 0; ex < grid.n; ++ex)
    for (index_t ey = 0; ey < grid.n; ++ey)
      for (index_t ez = 0; ez < grid.n; ++ez) {
        std::vector<index_t> row(static_cast<std::size_t>(p + 1) * (p + 1) * (p + 1));
        for (int i = 0; i <= p; ++i)
          for (int j = 0; j <= p; ++j)
            for (int k = 0; k <= p; ++k)
              row[static_cast<std::size_t>(elemental_dof_index(i, j, k, p))] =
                  grid.global(axis_position(ex, i, p), axis_position(ey, j, p),
                              axis_position(ez, k, p));
        map.rows.push_back(std::move(row));
      }
  return map;
}

double helmholtz_exact_solution(const std::array<double, 3>& x) {
  return std::sin(kPi * x[0]) * std::sin(kPi * x[1]) * std::sin(kPi * x[2]);
}

double helmholtz_forcing(double lambda, const std::array<double, 3>& x) {
  return (lambda + 3.0 * kPi * kPi) * helmholtz_exact_solution(x);
}

AssembledSystem assemble_helmholtz(const HexMesh& mesh, int p, double lambda, BoundaryPolicy bc,
                                   bool with_projection) {
  if (p < 1) throw std::invalid_argument("assemble_helmholtz: order must be >= 1");
  if (lambda < 0.0) throw std::invalid_argument("assemble_helmholtz: lambda must be >= 0");
  if (mesh.n_per_dim < 1) throw std::invalid_argument("assemble_helmholtz: empty mesh");
  for (int ax = 0; ax < 3; ++ax)
    if (!(mesh.hi[ax] > mesh.lo[ax]))
      throw std::invalid_argument("assemble_helmholtz: degenerate domain box");

  const GridIndexer grid(mesh.n_per_dim, p);
  const LocalToGlobalMap l2g_full = build_structured_l2g(mesh.n_per_dim, p);
  const ElementMatrices em = element_matrices(mesh, p);
  const index_t nfull = grid.num_dofs();

  // Process numbering: identity under Penalty, interior-only under
  // Eliminate.
  std::vector<index_t> full_to_process;
  index_t nproc = nfull;
  if (bc == BoundaryPolicy::Eliminate) {
    full_to_process.assign(static_cast<std::size_t>(nfull), -1);
    nproc = 0;
    for (index_t g = 0; g < nfull; ++g)
      if (!grid.is_boundary(g)) full_to_process[static_cast<std::size_t>(g)] = nproc++;
  }
  auto to_process = [&](index_t g) -> index_t {
    return full_to_process.empty() ? g : full_to_process[static_cast<std::size_t>(g)];
  };

  const index_t ndof_el = em.ndof;
  std::vector<CooTriplet> coo;
  coo.reserve(static_cast<std::size_t>(ndof_el) * ndof_el * l2g_full.rows.size());
  std::vector<CooTriplet> mass_coo;
  if (with_projection) mass_coo.reserve(coo.capacity());

  for (const auto& row : l2g_full.rows) {
    for (index_t a = 0; a < ndof_el; ++a) {
      const index_t pa = to_process(row[static_cast<std::size_t>(a)]);
      if (pa < 0) continue;
      for (index_t b = 0; b < ndof_el; ++b) {
        const index_t pb = to_process(row[static_cast<std::size_t>(b)]);
        if (pb < 0) continue;
        const std::size_t t = static_cast<std::size_t>(a) * ndof_el + b;
        const double mass = em.mass[t];
        const double val = em.stiffness[t] + lambda * mass;
        if (val != 0.0) coo.push_back({pa, pb, val});
        if (with_projection && mass != 0.0) mass_coo.push_back({pa, pb, mass});
      }
    }
  }
  SparseMatrix A = coo_to_csr_sum(std::move(coo), nproc, nproc);

  // Right-hand side and, when requested, the projection load vector, per
  // element by tensor quadrature.
  const Quadrature1D quad = gauss_legendre(p + 2);
  const BasisTable basis(p, quad);
  const auto h = mesh.element_size();
  const int nq = basis.nq;
  const int nb = p + 1;
  std::vector<double> b(static_cast<std::size_t>(nproc), 0.0);
  std::vector<double> proj_rhs;
  if (with_projection) proj_rhs.assign(static_cast<std::size_t>(nproc), 0.0);
  const double jac = 0.125 * h[0] * h[1] * h[2];

  std::size_t element_index = 0;
  for (index_t ex = 0; ex < grid.n; ++ex)
    for (index_t ey = 0; ey < grid.n; ++ey)
      for (index_t ez = 0; ez < grid.n; ++ez, ++element_index) {
        const auto& row = l2g_full.rows[element_index];
        for (int qx = 0; qx < nq; ++qx) {
          const double x = mesh.lo[0] + (ex + 0.5 * (quad.points[qx] + 1.0)) * h[0];
          for (int qy = 0; qy < nq; ++qy) {
            const double y = mesh.lo[1] + (ey + 0.5 * (quad.points[qy] + 1.0)) * h[1];
            for (int qz = 0; qz < nq; ++qz) {
              const double z = mesh.lo[2] + (ez + 0.5 * (quad.points[qz] + 1.0)) * h[2];
              const double w =
                  jac * quad.weights[qx] * quad.weights[qy] * quad.weights[qz];
              const double f = w * helmholtz_forcing(lambda, {x, y, z});
              const double u = with_projection ? w * helmholtz_exact_solution({x, y, z}) : 0.0;
              for (int i = 0; i < nb; ++i) {
                const double vx = basis.val(i, qx);
                for (int j = 0; j < nb; ++j) {
                  const double vxy = vx * basis.val(j, qy);
                  for (int k = 0; k < nb; ++k) {
                    const index_t pd = to_process(
                        row[static_cast<std::size_t>(elemental_dof_index(i, j, k, p))]);
                    if (pd < 0) continue;
                    const double shape = vxy * basis.val(k, qz);
                    b[static_cast<std::size_t>(pd)] += f * shape;
                    if (with_projection) proj_rhs[static_cast<std::size_t>(pd)] += u * shape;
                  }
                }
              }
            }
          }
        }
      }

  if (bc == BoundaryPolicy::Penalty) {
    const double beta = 1e10 * max_abs_diagonal(A);
    for (index_t g = 0; g < nfull; ++g) {
      if (!grid.is_boundary(g)) continue;
      add_to_diagonal(A, g, beta);
      b[static_cast<std::size_t>(g)] = 0.0;  // beta * g with g = 0 on the boundary
    }
  }

  AssembledSystem sys;
  sys.A = std::move(A);
  sys.b = std::move(b);
  sys.p = p;
  sys.mesh = mesh;
  sys.lambda = lambda;
  sys.bc = bc;
  sys.full_to_process = std::move(full_to_process);
  sys.g2u = GlobalToUniversalMap::identity(nproc);
  if (bc == BoundaryPolicy::Penalty) {
    sys.l2g = l2g_full;
  } else {
    // Elemental rows would have to reference eliminated dofs, so the map
    // is left empty and the hierarchy falls back to h-coarsening only.
    sys.l2g.order = p;
  }

  if (with_projection) {
    SparseMatrix M = coo_to_csr_sum(std::move(mass_coo), nproc, nproc);
    DiagonalPreconditioner diag(M);
    SolveOptions popts;
    popts.rtol = 1e-12;
    popts.max_iters = 50000;
    auto [coeffs, log] = pcg_solve(M, proj_rhs, {}, diag, popts);
    if (!log.converged)
      throw std::runtime_error("assemble_helmholtz: mass projection did not converge");
    sys.exact_coeffs = std::move(coeffs);
  }
  return sys;
}

double evaluate_solution(const AssembledSystem& sys, std::span<const double> coeffs,
                         const std::array<double, 3>& point) {
  const HexMesh& mesh = sys.mesh;
  const auto h = mesh.element_size();
  const double eps = 1e-12 * (mesh.hi[0] - mesh.lo[0]);
  std::array<index_t, 3> elem;
  std::array<double, 3> local;
  for (int ax = 0; ax < 3; ++ax) {
    if (point[ax] < mesh.lo[ax] - eps || point[ax] > mesh.hi[ax] + eps)
      throw std::invalid_argument("evaluate_solution: point outside domain");
    index_t e = static_cast<index_t>(std::floor((point[ax] - mesh.lo[ax]) / h[ax]));
    e = std::clamp<index_t>(e, 0, mesh.n_per_dim - 1);
    elem[ax] = e;
    local[ax] = 2.0 * (point[ax] - mesh.lo[ax] - e * h[ax]) / h[ax] - 1.0;
  }

  const int p = sys.p;
  const GridIndexer grid(mesh.n_per_dim, p);
  std::array<std::vector<double>, 3> phi;
  for (int ax = 0; ax < 3; ++ax) {
    phi[ax].resize(static_cast<std::size_t>(p + 1));
    for (int i = 0; i <= p; ++i) phi[ax][static_cast<std::size_t>(i)] = phi_1d(i, p, local[ax]);
  }

  double sum = 0.0;
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j)
      for (int k = 0; k <= p; ++k) {
        const index_t g = grid.global(axis_position(elem[0], i, p), axis_position(elem[1], j, p),
                                      axis_position(elem[2], k, p));
        const index_t pd = sys.full_to_process.empty()
                               ? g
                               : sys.full_to_process[static_cast<std::size_t>(g)];
        if (pd < 0) continue;
        if (pd >= static_cast<index_t>(coeffs.size()))
          throw std::invalid_argument("evaluate_solution: coefficient vector too short");
        sum += coeffs[static_cast<std::size_t>(pd)] * phi[0][static_cast<std::size_t>(i)] *
               phi[1][static_cast<std::size_t>(j)] * phi[2][static_cast<std::size_t>(k)];
      }
  return sum;
}

}  // namespace giamg
