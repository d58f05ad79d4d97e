#ifndef SGDG_STOCHASTIC_BASIS_HPP_
#define SGDG_STOCHASTIC_BASIS_HPP_

#include <functional>
#include <span>
#include <vector>

namespace sgdg {

/// xi ~ U[lower, upper] with density 1/(upper - lower).
struct UniformDistribution {
  double lower = 0.0;
  double upper = 1.0;

  UniformDistribution() = default;
  UniformDistribution(double lower_, double upper_);

  double density() const { return 1.0 / (upper - lower); }
  double mean() const { return 0.5 * (lower + upper); }
  double variance() const { return (upper - lower) * (upper - lower) / 12.0; }
  /// Affine map [lower, upper] -> [-1, 1].
  double to_reference(double xi) const {
    return 2.0 * (xi - lower) / (upper - lower) - 1.0;
  }
};

/// Gauss-Legendre nodes mapped to [a, b] with probability weights (sum = 1).
struct StochasticQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

StochasticQuadrature gauss_quadrature(int n_points, const UniformDistribution& dist);

/// Chaos coefficients <g, Psi_m>, m = 0..N.
using StochasticCoefficients = std::vector<double>;

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(std::span<const double> coeffs);

/// Nonzero entry C_k[i][j] with i <= j.
struct TripleEntry {
  int i;
  int j;
  double value;
};

/// Orthonormal Legendre chaos {Psi_0..Psi_N} for a uniform random variable,
/// together with the quadrature rule and the triple products
/// C_k[i][j] = E(Psi_i Psi_j Psi_k), i, j <= N, k <= 2N.
///
/// Immutable after construction.
class StochasticBasis {
 public:
  static constexpr int kDefaultQuadraturePoints = 80;

  StochasticBasis(UniformDistribution dist, int max_degree,
                  int n_quadrature = kDefaultQuadraturePoints);

  const UniformDistribution& distribution() const { return dist_; }
  int max_degree() const { return degree_; }
  /// Number of chaos modes N + 1.
  int size() const { return degree_ + 1; }

  /// Psi_n(xi) for 0 <= n <= 2N.
  double eval(int n, double xi) const;

  const StochasticQuadrature& quadrature() const { return quad_; }
  /// Psi_n at quadrature node q, n <= 2N.
  double psi_at_node(int n, int q) const { return psi_nodes_[q * (2 * degree_ + 1) + n]; }

  /// C_k[i][j], i, j <= N, k <= 2N.
  double triple(int k, int i, int j) const {
    return triple_[(static_cast<std::size_t>(k) * size() + i) * size() + j];
  }
  /// Structurally nonzero entries of C_k (i <= j).
  std::span<const TripleEntry> triple_entries(int k) const { return entries_[k]; }

  StochasticCoefficients project(const std::function<double(double)>& g) const;

  /// sum_n coeffs[n] Psi_n(xi).
  double evaluate_series(std::span<const double> coeffs, double xi) const;

 private:
  UniformDistribution dist_;
  int degree_;
  StochasticQuadrature quad_;
  std::vector<double> psi_nodes_;
  std::vector<double> triple_;
  std::vector<std::vector<TripleEntry>> entries_;
};

/// Orthonormal Legendre Psi_n on U[a, b] without range checks.
double psi(const UniformDistribution& dist, int n, double xi);

/// C_k[i][j] for k = 0..2N by brute-force quadrature with the given rule.
/// Layout [k][i][j], sizes (2N+1) x (N+1) x (N+1).
std::vector<double> triple_products(const UniformDistribution& dist, int max_degree,
                                    const StochasticQuadrature& quad);

}  // namespace sgdg

#endif  // SGDG_STOCHASTIC_BASIS_HPP_
