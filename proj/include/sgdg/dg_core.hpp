#ifndef SGDG_DG_CORE_HPP_
#define SGDG_DG_CORE_HPP_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sgdg/quadrature.hpp"
#include "sgdg/sg_assembly.hpp"
#include "sgdg/stochastic_basis.hpp"

namespace sgdg {

/// Periodic 1D mesh x_0 < x_1 < ... < x_M with x_0 identified with x_M.
class Mesh1D {
 public:
  explicit Mesh1D(std::vector<double> vertices);
  static Mesh1D uniform(double left, double right, int n_elements);

  int n_elements() const { return static_cast<int>(vertices_.size()) - 1; }
  double left() const { return vertices_.front(); }
  double right() const { return vertices_.back(); }
  double length() const { return right() - left(); }
  double vertex(int k) const { return vertices_[k]; }
  double width(int k) const { return vertices_[k + 1] - vertices_[k]; }
  /// max h / min h.
  double quasi_uniformity() const { return quasi_uniformity_; }
  /// Harmonic mean of the widths adjacent to vertex k (periodic).
  double interface_width(int k) const;
  /// Maps x into [left, right) by periodicity.
  double wrap(double x) const;
  /// Element containing the wrapped x. At a vertex, `from_left` selects the
  /// element to the left of it.
  int locate(double x, bool from_left = false) const;
  std::span<const double> vertices() const { return vertices_; }

 private:
  std::vector<double> vertices_;
  double quasi_uniformity_ = 1.0;
};

/// Broken polynomial space V_p on a mesh with the orthonormal Legendre basis
/// phi_m(r) = sqrt((2m+1)/2) P_m(r) on the reference element [-1, 1], so the
/// element mass matrix is (h_k / 2) I.
class DGSpace {
 public:
  static constexpr int kDefaultQuadraturePoints = 25;

  DGSpace(Mesh1D mesh, int degree, int n_quadrature = kDefaultQuadraturePoints);

  const Mesh1D& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int n_dofs_per_element() const { return degree_ + 1; }
  const QuadratureRule& quadrature() const { return quad_; }

  /// phi_m at reference quadrature node q.
  double phi(int q, int m) const { return phi_[q * (degree_ + 1) + m]; }
  /// d phi_m / dr at reference quadrature node q.
  double dphi(int q, int m) const { return dphi_[q * (degree_ + 1) + m]; }
  double phi_left(int m) const { return phi_left_[m]; }
  double phi_right(int m) const { return phi_right_[m]; }

  double to_reference(int k, double x) const;
  double to_physical(int k, double r) const;

  /// Physical coordinates of all element quadrature nodes, layout [k][q].
  std::vector<double> quadrature_points() const;

 private:
  Mesh1D mesh_;
  int degree_;
  QuadratureRule quad_;
  std::vector<double> phi_, dphi_, phi_left_, phi_right_;
};

enum class Side { Left, Right };

/// Discrete SG-DG solution u_h: coefficients [element][DG mode][chaos mode].
class SGField {
 public:
  SGField(std::shared_ptr<const DGSpace> space, std::shared_ptr<const StochasticBasis> basis);

  const DGSpace& space() const { return *space_; }
  const StochasticBasis& basis() const { return *basis_; }
  std::shared_ptr<const DGSpace> space_ptr() const { return space_; }
  std::shared_ptr<const StochasticBasis> basis_ptr() const { return basis_; }

  int n_elements() const { return n_elements_; }
  int n_dg() const { return n_dg_; }
  int n_chaos() const { return n_chaos_; }

  double& operator()(int k, int m, int n) { return data_[index(k, m, n)]; }
  double operator()(int k, int m, int n) const { return data_[index(k, m, n)]; }
  std::span<double> element(int k) {
    return {data_.data() + static_cast<std::size_t>(k) * n_dg_ * n_chaos_,
            static_cast<std::size_t>(n_dg_ * n_chaos_)};
  }
  std::span<const double> element(int k) const {
    return {data_.data() + static_cast<std::size_t>(k) * n_dg_ * n_chaos_,
            static_cast<std::size_t>(n_dg_ * n_chaos_)};
  }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  /// Chaos vector at reference point r of element k.
  void evaluate_modes(int k, double r, std::span<double> out) const;
  /// Chaos vectors of the left / right trace of element k.
  void trace(int k, Side side, std::span<double> out) const;

  bool all_finite() const;
  /// this += a * other.
  void axpy(double a, const SGField& other);
  void scale(double a);
  void set_zero();

  std::size_t index(int k, int m, int n) const {
    return (static_cast<std::size_t>(k) * n_dg_ + m) * n_chaos_ + n;
  }

 private:
  std::shared_ptr<const DGSpace> space_;
  std::shared_ptr<const StochasticBasis> basis_;
  int n_elements_, n_dg_, n_chaos_;
  std::vector<double> data_;
};

/// Interface flux G(u-, u+) = f(w(u-, u+)) with w(u, u) = u.
class NumericalFlux {
 public:
  enum class Kind { Upwind, LaxWendroff };

  NumericalFlux(Kind kind, FluxLaw flux, std::shared_ptr<const StochasticBasis> basis,
                double dt = 0.0);

  Kind kind() const { return kind_; }
  const FluxLaw& flux_law() const { return flux_; }
  const StochasticBasis& basis() const { return *basis_; }
  double time_step() const { return dt_; }
  /// Copy with the Lax-Wendroff time step replaced.
  NumericalFlux with_time_step(double dt) const;

  /// Trace function w; h is the interface width.
  void trace(std::span<const double> u_minus, std::span<const double> u_plus, double h,
             std::span<double> out) const;
  /// d/dt w(u-(t), u+(t)) given du-/dt and du+/dt.
  void trace_derivative(std::span<const double> u_minus, std::span<const double> u_plus,
                        std::span<const double> du_minus, std::span<const double> du_plus,
                        double h, std::span<double> out) const;
  void flux(std::span<const double> u_minus, std::span<const double> u_plus, double h,
            std::span<double> out) const;

 private:
  Kind kind_;
  FluxLaw flux_;
  std::shared_ptr<const StochasticBasis> basis_;
  double dt_;
};

NumericalFlux::Kind parse_numerical_flux(const std::string& name);
std::string to_string(NumericalFlux::Kind kind);

enum class ProjectionMethod { RadauPlus, GaussLegendreInterp };

ProjectionMethod parse_projection_method(const std::string& name);
std::string to_string(ProjectionMethod method);

/// Initial DG-SG coefficients of u0(x, xi) (evaluated at t = 0). The chaos
/// direction always uses the basis projection.
SGField project_initial(const RandomField& u0, std::shared_ptr<const DGSpace> space,
                        std::shared_ptr<const StochasticBasis> basis, ProjectionMethod method,
                        double t = 0.0);

/// Mass-inverted right-hand side L_h(u) of the semi-discrete DG-SG scheme.
SGField apply_Lh(const SGField& u, const NumericalFlux& flux, const RandomField& source, double t);

/// Chaos-componentwise TVB-modified minmod slope limiter.
SGField apply_limiter(const SGField& u, double tvb_constant);

/// Modified minmod: a1 if |a1| <= threshold, otherwise minmod(a1, a2, a3).
double modified_minmod(double a1, double a2, double a3, double threshold);

/// Pointwise value (derivative_order 0) or x-derivative (1) of the
/// chaos-expanded field. At a vertex, `side` picks the one-sided limit.
double eval_field(const SGField& u, double x, double xi, int derivative_order = 0,
                  Side side = Side::Right);

}  // namespace sgdg

#endif  // SGDG_DG_CORE_HPP_
