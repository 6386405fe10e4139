#pragma once

#include <functional>
#include <vector>

namespace blv {

struct QuadratureRule {
  std::vector<double> nodes;    // in (-1, 1), ascending
  std::vector<double> weights;  // sum to 2
};

// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
// <= 2n - 1. Nodes found by Newton iteration on the Legendre recurrence.
QuadratureRule gauss_legendre(int n);

// Adaptive Simpson on [a, b] with Richardson correction; tol is the
// absolute error budget for the whole interval.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 40);

}  // namespace blv
