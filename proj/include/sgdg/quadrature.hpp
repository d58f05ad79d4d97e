#ifndef SGDG_QUADRATURE_HPP_
#define SGDG_QUADRATURE_HPP_

#include <utility>
#include <vector>

namespace sgdg {

/// Legendre polynomial P_n(x) by the three-term recurrence.
double legendre(int n, double x);

/// (P_n(x), P_n'(x)).
std::pair<double, double> legendre_with_derivative(int n, double x);

/// Gauss-Legendre rule on the reference interval [-1, 1].
/// Weights sum to 2; nodes are returned in increasing order.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Newton iteration on P_n from Chebyshev initial guesses
/// (tolerance 1e-15, at most 100 iterations per node).
QuadratureRule gauss_legendre(int n_points);

/// Orthonormal Legendre function on [-1, 1] w.r.t. Lebesgue measure:
/// sqrt((2m+1)/2) P_m(r).
double orthonormal_legendre(int m, double r);
double orthonormal_legendre_derivative(int m, double r);

}  // namespace sgdg

#endif  // SGDG_QUADRATURE_HPP_
