#include "sgdg/stochastic_basis.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "sgdg/quadrature.hpp"

namespace sgdg {

UniformDistribution::UniformDistribution(double lower_, double upper_)
    : lower(lower_), upper(upper_) {
  if (!(lower < upper)) {
    throw std::invalid_argument("UniformDistribution: lower must be < upper");
  }
}

StochasticQuadrature gauss_quadrature(int n_points, const UniformDistribution& dist) {
  const QuadratureRule ref = gauss_legendre(n_points);
  StochasticQuadrature q;
  q.nodes.resize(n_points);
  q.weights.resize(n_points);
  const double mid = dist.mean();
  const double half = 0.5 * (dist.upper - dist.lower);
  for (int i = 0; i < n_points; ++i) {
    q.nodes[i] = mid + half * ref.nodes[i];
    q.weights[i] = 0.5 * ref.weights[i];
  }
  return q;
}

Moments moments(std::span<const double> coeffs) {
  Moments m;
  if (coeffs.empty()) return m;
  m.mean = coeffs[0];
  for (std::size_t n = 1; n < coeffs.size(); ++n) m.variance += coeffs[n] * coeffs[n];
  return m;
}

double psi(const UniformDistribution& dist, int n, double xi) {
  return std::sqrt(2.0 * n + 1.0) * legendre(n, dist.to_reference(xi));
}

std::vector<double> triple_products(const UniformDistribution& dist, int max_degree,
                                    const StochasticQuadrature& quad) {
  const int n_modes = max_degree + 1;
  const int n_k = 2 * max_degree + 1;
  std::vector<double> c(static_cast<std::size_t>(n_k) * n_modes * n_modes, 0.0);
  std::vector<double> table(static_cast<std::size_t>(quad.size()) * n_k);
  for (int q = 0; q < quad.size(); ++q)
    for (int n = 0; n < n_k; ++n) table[q * n_k + n] = psi(dist, n, quad.nodes[q]);
  for (int k = 0; k < n_k; ++k)
    for (int i = 0; i < n_modes; ++i)
      for (int j = i; j < n_modes; ++j) {
        double s = 0.0;
        for (int q = 0; q < quad.size(); ++q)
          s += quad.weights[q] * table[q * n_k + i] * table[q * n_k + j] * table[q * n_k + k];
        c[(static_cast<std::size_t>(k) * n_modes + i) * n_modes + j] = s;
        c[(static_cast<std::size_t>(k) * n_modes + j) * n_modes + i] = s;
      }
  return c;
}

StochasticBasis::StochasticBasis(UniformDistribution dist, int max_degree, int n_quadrature)
    : dist_(dist), degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("StochasticBasis: max_degree must be >= 0");
  // Psi_i Psi_j Psi_k has degree up to 4N; 3N+1 points integrate it exactly.
  if (n_quadrature < 3 * max_degree + 1) {
    throw std::invalid_argument("StochasticBasis: need at least 3N+1 = " +
                                std::to_string(3 * max_degree + 1) +
                                " quadrature points, got " + std::to_string(n_quadrature));
  }
  quad_ = gauss_quadrature(n_quadrature, dist_);
  const int n_k = 2 * degree_ + 1;
  psi_nodes_.resize(static_cast<std::size_t>(quad_.size()) * n_k);
  for (int q = 0; q < quad_.size(); ++q)
    for (int n = 0; n < n_k; ++n) psi_nodes_[q * n_k + n] = psi(dist_, n, quad_.nodes[q]);

  triple_ = triple_products(dist_, degree_, quad_);
  // Legendre triple products vanish unless |i-j| <= k <= i+j and i+j+k is even.
  entries_.resize(n_k);
  const int n_modes = size();
  for (int k = 0; k < n_k; ++k)
    for (int i = 0; i < n_modes; ++i)
      for (int j = 0; j < n_modes; ++j) {
        double& v = triple_[(static_cast<std::size_t>(k) * n_modes + i) * n_modes + j];
        const bool nonzero = std::abs(i - j) <= k && k <= i + j && (i + j + k) % 2 == 0;
        if (!nonzero) {
          v = 0.0;
        } else if (i <= j) {
          entries_[k].push_back({i, j, v});
        }
      }
}

double StochasticBasis::eval(int n, double xi) const {
  if (n < 0 || n > 2 * degree_) {
    throw std::out_of_range("StochasticBasis::eval: degree " + std::to_string(n) +
                            " outside [0, 2N] = [0, " + std::to_string(2 * degree_) + "]");
  }
  return psi(dist_, n, xi);
}

StochasticCoefficients StochasticBasis::project(const std::function<double(double)>& g) const {
  StochasticCoefficients c(size(), 0.0);
  const int n_k = 2 * degree_ + 1;
  for (int q = 0; q < quad_.size(); ++q) {
    const double wg = quad_.weights[q] * g(quad_.nodes[q]);
    for (int m = 0; m < size(); ++m) c[m] += wg * psi_nodes_[q * n_k + m];
  }
  return c;
}

double StochasticBasis::evaluate_series(std::span<const double> coeffs, double xi) const {
  const double r = dist_.to_reference(xi);
  double s = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n)
    s += coeffs[n] * std::sqrt(2.0 * n + 1.0) * legendre(static_cast<int>(n), r);
  return s;
}

}  // namespace sgdg
