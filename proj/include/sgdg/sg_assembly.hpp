#ifndef SGDG_SG_ASSEMBLY_HPP_
#define SGDG_SG_ASSEMBLY_HPP_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgdg/stochastic_basis.hpp"

namespace sgdg {

/// Scalar flux law of the random conservation law.
class FluxLaw {
 public:
  enum class Kind { LinearAdvection, Burgers };

  static FluxLaw advection(double speed) { return FluxLaw(Kind::LinearAdvection, speed); }
  static FluxLaw burgers() { return FluxLaw(Kind::Burgers, 0.0); }

  Kind kind() const { return kind_; }
  double speed() const { return speed_; }
  std::string name() const;

  double f(double u) const {
    return kind_ == Kind::Burgers ? 0.5 * u * u : speed_ * u;
  }
  double df(double u) const { return kind_ == Kind::Burgers ? u : speed_; }
  double d2f(double) const { return kind_ == Kind::Burgers ? 1.0 : 0.0; }

 private:
  FluxLaw(Kind kind, double speed) : kind_(kind), speed_(speed) {}

  Kind kind_;
  double speed_;
};

/// Deterministic function (t, x, xi) -> R used for initial data, sources and
/// exact solutions. An optional grid evaluator lets tensor-product sampling
/// share work across x and xi.
class RandomField {
 public:
  using PointFn = std::function<double(double t, double x, double xi)>;
  /// Fills out[ix * xi.size() + iq] = field(t, x[ix], xi[iq]).
  using GridFn = std::function<void(double t, std::span<const double> x,
                                    std::span<const double> xi, std::span<double> out)>;

  /// The zero field.
  RandomField() = default;
  explicit RandomField(PointFn fn, std::optional<int> polynomial_degree_in_xi = std::nullopt);

  static RandomField zero() { return RandomField(); }

  RandomField& with_grid(GridFn grid);

  double operator()(double t, double x, double xi) const { return fn_ ? fn_(t, x, xi) : 0.0; }
  void evaluate_grid(double t, std::span<const double> x, std::span<const double> xi,
                     std::span<double> out) const;

  bool is_zero() const { return !fn_; }
  /// Known polynomial degree in xi, if any (the zero field reports 0).
  std::optional<int> polynomial_degree_in_xi() const {
    return is_zero() ? std::optional<int>(0) : degree_;
  }

 private:
  PointFn fn_;
  GridFn grid_;
  std::optional<int> degree_;
};

/// SG flux f(u)_i = E(f(sum_n u_n Psi_n) Psi_i). Allocation free.
void sg_flux(const FluxLaw& flux, const StochasticBasis& basis, std::span<const double> u,
             std::span<double> out);
std::vector<double> sg_flux(const FluxLaw& flux, const StochasticBasis& basis,
                            std::span<const double> u);

/// out = J(u) v with J the Jacobian of the SG flux.
void sg_flux_jacobian_apply(const FluxLaw& flux, const StochasticBasis& basis,
                            std::span<const double> u, std::span<const double> v,
                            std::span<double> out);

/// Dense Jacobian, row-major (N+1) x (N+1).
std::vector<double> sg_flux_jacobian(const FluxLaw& flux, const StochasticBasis& basis,
                                     std::span<const double> u);

/// Mode l of f(sum_{k<=N} u_k Psi_k), including l > N.
double sg_flux_exact_mode(const FluxLaw& flux, const StochasticBasis& basis,
                          std::span<const double> u, int l);

/// Mode l of the spatial flux divergence for l > N: (du/dx)^T C_l u for
/// Burgers, 0 for advection.
double sg_flux_divergence_tail_mode(const FluxLaw& flux, const StochasticBasis& basis,
                                    std::span<const double> u, std::span<const double> du,
                                    int l);

/// <S(t, x, .), Psi_l>, l <= 2N.
double project_source(const RandomField& source, const StochasticBasis& basis, double t,
                      double x, int l);

/// Chaos modes 0..n_modes-1 of source(t, x[ix], .) for every x, using the
/// basis quadrature. out has layout [ix][l].
void project_source_grid(const RandomField& source, const StochasticBasis& basis, double t,
                         std::span<const double> x, int n_modes, std::span<double> out);

}  // namespace sgdg

#endif  // SGDG_SG_ASSEMBLY_HPP_
