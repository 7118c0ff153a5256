#ifndef GIAMG_FEM_HPP
#define GIAMG_FEM_HPP

#include <array>
#include <vector>

#include "giamg/dofmaps.hpp"
#include "giamg/sparse.hpp"

namespace giamg {

// Structured mesh of identical axis-aligned hexahedra: n_per_dim elements
// along each axis of the box [lo, hi].
struct HexMesh {
  int n_per_dim = 1;
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};

  index_t num_elements() const {
    const index_t n = n_per_dim;
    return n * n * n;
  }
  std::array<double, 3> element_size() const {
    return {(hi[0] - lo[0]) / n_per_dim, (hi[1] - lo[1]) / n_per_dim,
            (hi[2] - lo[2]) / n_per_dim};
  }
};

// How Dirichlet boundaries enter the assembled system. Penalty keeps every
// dof and adds a large diagonal shift on boundary dofs; Eliminate removes
// boundary rows and columns entirely.
enum class BoundaryPolicy { Penalty, Eliminate };

// Jacobi polynomial P_n^{alpha,beta}(a) by the three-term recurrence.
double jacobi_poly(int n, double alpha, double beta, double a);
double jacobi_poly_derivative(int n, double alpha, double beta, double a);

// Hierarchical 1D modal basis on [-1,1]:
//   phi_0 = (1-a)/2, phi_1 = (1+a)/2 (vertex modes),
//   phi_i = (1-a)/2 * (1+a)/2 * P_{i-2}^{1,1}(a) for i >= 2.
double phi_1d(int i, int p, double a);
double phi_1d_derivative(int i, int p, double a);

// Tensor-product position of mode (i,j,k) inside an order-p element:
// (p+1)^2*i + (p+1)*j + k.
index_t elemental_dof_index(int i, int j, int k, int p);

struct Quadrature1D {
  std::vector<double> points;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1,1], exact for polynomials of degree
// 2*npoints-1.
Quadrature1D gauss_legendre(int npoints);

// Dense elemental operators, row-major (p+1)^3 square, for the identical
// elements of a structured mesh.
struct ElementMatrices {
  int p = 1;
  index_t ndof = 0;
  std::vector<double> stiffness;
  std::vector<double> mass;
};
ElementMatrices element_matrices(const HexMesh& mesh, int p);

// Local-to-global map for the structured mesh: modes are placed on a
// global (n*p+1)^3 tensor grid where vertex modes of adjacent elements
// share positions and edge/face/interior modes get unique ones.
LocalToGlobalMap build_structured_l2g(int n_per_dim, int p);

// Manufactured Helmholtz benchmark -laplacian(u) + lambda*u = f with
// u = sin(pi x) sin(pi y) sin(pi z).
double helmholtz_exact_solution(const std::array<double, 3>& x);
double helmholtz_forcing(double lambda, const std::array<double, 3>& x);

struct AssembledSystem {
  SparseMatrix A;
  std::vector<double> b;
  LocalToGlobalMap l2g;  // no rows under Eliminate
  GlobalToUniversalMap g2u;
  std::vector<double> exact_coeffs;  // empty when projection is skipped
  int p = 1;
  HexMesh mesh;
  double lambda = 1.0;
  BoundaryPolicy bc = BoundaryPolicy::Penalty;
  // Full tensor-grid dof -> process dof (-1 if eliminated); empty means
  // the identity (Penalty keeps all dofs).
  std::vector<index_t> full_to_process;

  bool has_maps() const { return !l2g.rows.empty(); }
};

// Assembles the weak form with tensor Gauss-Legendre quadrature (p+2
// points per direction) and the manufactured right-hand side. When
// with_projection is set, exact_coeffs holds the L2 projection of the
// exact solution, obtained by a mass-matrix solve.
AssembledSystem assemble_helmholtz(const HexMesh& mesh, int p, double lambda, BoundaryPolicy bc,
                                   bool with_projection = true);

// Evaluates a coefficient vector (in the system's dof numbering) at a
// point inside the mesh. Throws if the point lies outside the domain.
double evaluate_solution(const AssembledSystem& sys, std::span<const double> coeffs,
                         const std::array<double, 3>& point);

}  // namespace giamg

#endif
