#include "sgdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sgdg {

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = x;
  for (int k = 1; k < n; ++k) {
    const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
    p_prev = p;
    p = p_next;
  }
  return p;
}

std::pair<double, double> legendre_with_derivative(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  // dP_k = dP_{k-2} + (2k-1) P_{k-1} avoids the 1/(1-x^2) singularity at the ends.
  double p_prev = 1.0, p = x;
  double dp_prev = 0.0, dp = 1.0;
  for (int k = 1; k < n; ++k) {
    const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
    const double dp_next = dp_prev + (2.0 * k + 1.0) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp};
}

QuadratureRule gauss_legendre(int n_points) {
  if (n_points < 1) {
    throw std::invalid_argument("gauss_legendre: n_points must be >= 1, got " +
                                std::to_string(n_points));
  }
  constexpr double kTol = 1e-15;
  constexpr int kMaxIter = 100;
  const int n = n_points;
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev node as the starting guess; roots come out in decreasing order.
    double x = std::cos(std::numbers::pi * (i + 0.5) / n);
    double dp = 1.0;
    for (int it = 0; it < kMaxIter; ++it) {
      auto [p, d] = legendre_with_derivative(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) <= kTol) break;
    }
    dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double orthonormal_legendre(int m, double r) {
  return std::sqrt((2.0 * m + 1.0) / 2.0) * legendre(m, r);
}

double orthonormal_legendre_derivative(int m, double r) {
  return std::sqrt((2.0 * m + 1.0) / 2.0) * legendre_with_derivative(m, r).second;
}

}  // namespace sgdg
