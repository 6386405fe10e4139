#pragma once

#include <cstddef>
#include <vector>

namespace blv {

// Dense row-major matrix of doubles. Small and boring on purpose: the
// workbench only needs symmetric eigensolves and basic arithmetic on
// matrices of modest size.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(double s) const;

  double frobenius_norm() const;
  double max_abs() const;
  bool is_symmetric(double tol) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

struct EigenResult {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j pairs with values[j]
};

// Cyclic Jacobi iteration for a symmetric matrix. Sweeps rotate away each
// off-diagonal entry in turn until the off-diagonal Frobenius norm falls
// below tol (absolute, relative to the input scale). Most inputs converge in
// under ten sweeps; the generous cap covers clustered spectra, whose
// pre-asymptotic phase decays only linearly.
EigenResult jacobi_eigensolve(const Matrix& sym, double tol = 1e-13, int max_sweeps = 512);

double min_eigenvalue(const Matrix& sym);
double max_eigenvalue(const Matrix& sym);

}  // namespace blv
