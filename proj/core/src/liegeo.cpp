#include "blv/liegeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "blv/quadrature.hpp"

namespace blv {

Subspace Subspace::coordinate(int n, std::span<const int> coords, SubspaceKind kind) {
  if (coords.empty()) throw std::invalid_argument("subspace needs at least one coordinate");
  Matrix p(n, n);
  int prev = -1;
  for (int i : coords) {
    if (i < 0 || i >= n) throw std::invalid_argument("coordinate out of range");
    if (i <= prev) throw std::invalid_argument("coordinates must be strictly increasing");
    prev = i;
    p(i, i) = 1.0;
  }
  return Subspace(std::move(p), static_cast<int>(coords.size()), kind);
}

Subspace Subspace::from_basis(const Matrix& basis_cols, SubspaceKind kind) {
  const int n = basis_cols.rows();
  const int d = basis_cols.cols();
  if (d < 1 || d > n) throw std::invalid_argument("basis must have between 1 and n columns");
  Matrix gram = basis_cols.transpose() * basis_cols;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (std::fabs(gram(i, j) - (i == j ? 1.0 : 0.0)) > 1e-12)
        throw std::invalid_argument("basis columns are not orthonormal");
  return Subspace(basis_cols * basis_cols.transpose(), d, kind);
}

double psd_decomposition_check(int n, std::span<const Subspace> subspaces,
                               std::span<const double> c) {
  if (subspaces.size() != c.size())
    throw std::invalid_argument("one coefficient per subspace is required");
  Matrix residual = Matrix::identity(n);
  for (std::size_t k = 0; k < subspaces.size(); ++k) {
    if (subspaces[k].ambient() != n)
      throw std::invalid_argument("subspace lives in the wrong ambient dimension");
    if (!(c[k] >= 0.0)) throw std::invalid_argument("coefficients must be nonnegative");
    residual = residual - subspaces[k].projector().scaled(c[k]);
  }
  return min_eigenvalue(residual);
}

int so_dim(int n) { return n * (n - 1) / 2; }

Matrix so_basis_element(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw std::invalid_argument("so basis element needs distinct indices in range");
  Matrix b(n, n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  b(i, j) = inv_sqrt2;
  b(j, i) = -inv_sqrt2;
  return b;
}

Matrix lie_projection(const Subspace& s, const Matrix& a) {
  const int n = s.ambient();
  if (a.rows() != n || a.cols() != n)
    throw std::invalid_argument("matrix does not match the ambient dimension");
  double scale = std::max(1.0, a.max_abs());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::fabs(a(i, j) + a(j, i)) > 1e-12 * scale)
        throw std::invalid_argument("lie_projection needs an antisymmetric matrix");

  const Matrix& p = s.projector();
  Matrix pa = p * a;
  Matrix ap = a * p;
  Matrix pap = pa * p;
  Matrix out = pa + ap - pap;
  if (s.kind() == SubspaceKind::setwise) out = out - pap;
  return out;
}

Matrix lie_lift_operator(int n, std::span<const Subspace> subspaces, std::span<const double> c) {
  if (subspaces.size() != c.size())
    throw std::invalid_argument("one coefficient per subspace is required");
  for (const auto& s : subspaces)
    if (s.ambient() != n)
      throw std::invalid_argument("subspace lives in the wrong ambient dimension");

  const int dim = so_dim(n);
  Matrix m(dim, dim);
  const double sqrt2 = std::sqrt(2.0);
  int col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++col) {
      Matrix b = so_basis_element(n, i, j);
      Matrix image(n, n);
      for (std::size_t k = 0; k < subspaces.size(); ++k) {
        if (c[k] == 0.0) continue;
        image = image + lie_projection(subspaces[k], b).scaled(c[k]);
      }
      int row = 0;
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l, ++row) m(row, col) = sqrt2 * image(k, l);
    }
  return m;
}

LiftCheck lie_lift_check(int n, std::span<const Subspace> subspaces, std::span<const double> c,
                         double tol) {
  LiftCheck out;
  out.vector_lambda_min = psd_decomposition_check(n, subspaces, c);
  std::vector<double> half(c.begin(), c.end());
  for (double& v : half) v *= 0.5;
  out.algebra_lambda_max = max_eigenvalue(lie_lift_operator(n, subspaces, half));
  out.premise_holds = out.vector_lambda_min >= -tol;
  out.pass = out.premise_holds && out.algebra_lambda_max <= 1.0 + tol;
  return out;
}

double poly_eval(const Poly& p, double u) {
  double v = 0.0;
  for (std::size_t j = p.size(); j-- > 0;) v = v * u + p[j];
  return v;
}

namespace {

int poly_degree(const Poly& p) {
  for (std::size_t j = p.size(); j-- > 0;)
    if (p[j] != 0.0) return static_cast<int>(j);
  return 0;
}

void check_nonnegative(const Poly& p, int which) {
  double max_abs = 0.0, min_val = 0.0;
  const int samples = 4001;
  for (int s = 0; s < samples; ++s) {
    double u = -1.0 + 2.0 * s / (samples - 1);
    double v = poly_eval(p, u);
    max_abs = std::max(max_abs, std::fabs(v));
    min_val = std::min(min_val, v);
  }
  if (min_val < -1e-9 * std::max(1.0, max_abs))
    throw std::invalid_argument("factor " + std::to_string(which) +
                                " is negative on [-1, 1]");
}

}  // namespace

double sphere_quadrature_gap(int n, std::span<const Poly> f, std::span<const Rational> c) {
  if (n != 2 && n != 3) throw std::invalid_argument("sphere check supports n = 2 and n = 3");
  if (f.size() != static_cast<std::size_t>(n) || c.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("need one factor and one exponent per coordinate");

  std::vector<int> p_int(n);
  int degree_sum = 0;
  for (int i = 0; i < n; ++i) {
    if (f[i].empty()) throw std::invalid_argument("factor polynomial is empty");
    if (!(c[i] > 0) || c[i] > 1 || c[i].get_num() != 1)
      throw std::invalid_argument("exponents must be reciprocals of positive integers");
    p_int[i] = static_cast<int>(c[i].get_den().get_si());
    int deg = poly_degree(f[i]);
    degree_sum += deg;
    if (deg > 60 || deg * p_int[i] > 120 || p_int[i] > 60)
      throw std::invalid_argument("degree or exponent too large for exact quadrature");
    check_nonnegative(f[i], i);
  }
  if (degree_sum > 120)
    throw std::invalid_argument("total degree too large for exact quadrature");

  double log_rhs = 0.0;
  double lhs = 0.0;

  if (n == 2) {
    const int nodes = 4096;
    // Uniform trapezoid on the circle: exact for trigonometric polynomials
    // of degree < nodes.
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int s = 0; s < nodes; ++s) {
        double theta = 2.0 * M_PI * s / nodes;
        double xi = i == 0 ? std::cos(theta) : std::sin(theta);
        acc += std::pow(poly_eval(f[i], xi), p_int[i]);
      }
      acc /= nodes;
      if (acc <= 0.0) return std::numeric_limits<double>::infinity();
      log_rhs += to_double(c[i]) * std::log(acc);
    }
    for (int s = 0; s < nodes; ++s) {
      double theta = 2.0 * M_PI * s / nodes;
      lhs += poly_eval(f[0], std::cos(theta)) * poly_eval(f[1], std::sin(theta));
    }
    lhs /= nodes;
  } else {
    // z = third coordinate; each coordinate of the uniform sphere measure
    // is uniform on [-1, 1], so the marginals reduce to 1D Gauss-Legendre.
    QuadratureRule gl = gauss_legendre(64);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t s = 0; s < gl.nodes.size(); ++s)
        acc += 0.5 * gl.weights[s] * std::pow(poly_eval(f[i], gl.nodes[s]), p_int[i]);
      if (acc <= 0.0) return std::numeric_limits<double>::infinity();
      log_rhs += to_double(c[i]) * std::log(acc);
    }
    const int azimuth = 256;
    for (std::size_t s = 0; s < gl.nodes.size(); ++s) {
      double z = gl.nodes[s];
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double ring = 0.0;
      for (int a = 0; a < azimuth; ++a) {
        double theta = 2.0 * M_PI * a / azimuth;
        ring += poly_eval(f[0], r * std::cos(theta)) * poly_eval(f[1], r * std::sin(theta));
      }
      ring /= azimuth;
      lhs += 0.5 * gl.weights[s] * ring * poly_eval(f[2], z);
    }
  }

  if (lhs <= 0.0) return std::numeric_limits<double>::infinity();
  return log_rhs - std::log(lhs);
}

double sphere_quadrature_gap(int n, std::span<const Poly> f) {
  std::vector<Rational> c(n, frac(1, 2));
  return sphere_quadrature_gap(n, f, c);
}

}  // namespace blv
