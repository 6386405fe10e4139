#pragma once

#include <span>
#include <vector>

#include "blv/linalg.hpp"
#include "blv/rational.hpp"

namespace blv {

// Flavor of the rotation symmetry attached to a subspace V of R^n: the
// subgroup fixing V vector-by-vector (pointwise) or merely preserving it
// as a set (setwise).
enum class SubspaceKind { pointwise, setwise };

class Subspace {
 public:
  // Span of the given coordinate axes (0-based, strictly increasing).
  static Subspace coordinate(int n, std::span<const int> coords, SubspaceKind kind);
  // Columns of basis_cols must be orthonormal (within 1e-12).
  static Subspace from_basis(const Matrix& basis_cols, SubspaceKind kind);

  int ambient() const { return projector_.rows(); }
  int dim() const { return dim_; }
  SubspaceKind kind() const { return kind_; }
  const Matrix& projector() const { return projector_; }

 private:
  Subspace(Matrix projector, int dim, SubspaceKind kind)
      : projector_(std::move(projector)), dim_(dim), kind_(kind) {}
  Matrix projector_;
  int dim_;
  SubspaceKind kind_;
};

// lambda_min(Id - sum_i c_i P_i) on R^n: nonnegative exactly when the
// weighted projectors are dominated by the identity in the psd order.
double psd_decomposition_check(int n, std::span<const Subspace> subspaces,
                               std::span<const double> c);

int so_dim(int n);  // n(n-1)/2

// Normalized elementary antisymmetric matrix (e_i e_j^T - e_j e_i^T)/sqrt(2).
Matrix so_basis_element(int n, int i, int j);

// Orthogonal projection (within so(n)) of an antisymmetric matrix onto the
// directions that move the subspace's statistic:
//   pointwise: P A + A P - P A P,
//   setwise:   P A + A P - 2 P A P.
Matrix lie_projection(const Subspace& s, const Matrix& a);

// Matrix of sum_k c_k Proj_k acting on so(n), written in the normalized
// elementary basis ordered lexicographically by (i, j), i < j. Symmetric.
Matrix lie_lift_operator(int n, std::span<const Subspace> subspaces, std::span<const double> c);

struct LiftCheck {
  double vector_lambda_min;   // lambda_min(Id - sum c_i P_i) on R^n
  double algebra_lambda_max;  // lambda_max(sum (c_i/2) Proj_i) on so(n)
  bool premise_holds;         // vector side >= -tol
  bool pass;                  // premise holds and algebra side <= 1 + tol
};

// Checks that halving the coefficients carries a psd decomposition on R^n
// to one on so(n): if sum c_i P_i <= Id then sum (c_i/2) Proj_i <= Id.
LiftCheck lie_lift_check(int n, std::span<const Subspace> subspaces, std::span<const double> c,
                         double tol = 1e-10);

// Polynomial sum_j coeffs[j] u^j.
using Poly = std::vector<double>;
double poly_eval(const Poly& p, double u);

// Correlation defect for coordinate functions on the unit sphere in R^n
// (n = 2 or 3), in log scale:
//   gap = sum_i c_i log int f_i(x_i)^{1/c_i} dsigma - log int prod_i f_i(x_i) dsigma.
// Each 1/c_i must be a positive integer; f_i must be nonnegative on [-1, 1].
// Quadrature is exact for the admissible degrees (deg f_i <= 60,
// deg f_i / c_i <= 120, sum of degrees <= 120).
double sphere_quadrature_gap(int n, std::span<const Poly> f, std::span<const Rational> c);
// Same with all c_i = 1/2.
double sphere_quadrature_gap(int n, std::span<const Poly> f);

}  // namespace blv
