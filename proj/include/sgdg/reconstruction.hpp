#ifndef SGDG_RECONSTRUCTION_HPP_
#define SGDG_RECONSTRUCTION_HPP_

#include <memory>
#include <span>
#include <vector>

#include "sgdg/dg_core.hpp"
#include "sgdg/time_integrator.hpp"

namespace sgdg {

/// Piecewise cubic Hermite interpolant in time of the trajectory states,
/// using the stored L_h values as endpoint derivatives.
class TemporalReconstruction {
 public:
  explicit TemporalReconstruction(std::shared_ptr<const Trajectory> trajectory);

  const Trajectory& trajectory() const { return *traj_; }
  double start_time() const { return traj_->times.front(); }
  double end_time() const { return traj_->times.back(); }

  /// Value of u^t(t); `rate`, when given, receives d/dt u^t(t).
  void evaluate(double t, SGField& value, SGField* rate = nullptr) const;
  SGField value(double t) const;

 private:
  std::shared_ptr<const Trajectory> traj_;
};

/// Element-wise degree-(p+1) field, continuous across vertices, with an
/// optional time derivative; coefficients [element][mode 0..p+1][chaos mode].
struct LiftedField {
  std::shared_ptr<const DGSpace> space;
  std::shared_ptr<const StochasticBasis> basis;
  int degree = 0;
  std::vector<double> value;
  std::vector<double> rate;

  int n_modes() const { return degree + 1; }
  int n_chaos() const { return basis->size(); }
  std::size_t index(int k, int m, int n) const {
    return (static_cast<std::size_t>(k) * n_modes() + m) * n_chaos() + n;
  }
  double coefficient(int k, int m, int n) const { return value[index(k, m, n)]; }

  /// Chaos vectors of value, d/dx and d/dt at reference point r of element k.
  /// Any output span may be empty to skip it.
  void evaluate_modes(int k, double r, std::span<double> v, std::span<double> dx,
                      std::span<double> dt) const;
};

/// Solves, per element, for the p+2 Legendre coefficients that keep the first
/// p moments and take prescribed end values. The (p+2)x(p+2) matrix only
/// depends on p and is inverted once.
class LiftingOperator {
 public:
  explicit LiftingOperator(int dg_degree);

  int dg_degree() const { return p_; }
  /// interior: the p lowest coefficients; out: p+2 coefficients.
  void apply(std::span<const double> interior, double left_value, double right_value,
             std::span<double> out) const;

 private:
  int p_;
  std::vector<double> inverse_;
};

/// Continuous lift of a DG field (and optionally of its time derivative)
/// with interface values w(u(x_k^-), u(x_k^+)).
LiftedField spatial_reconstruct(const SGField& ut, const NumericalFlux& flux,
                                const SGField* ut_rate = nullptr);

enum class Quantity { Value, TimeDerivative, SpaceDerivative };

/// Space-time reconstruction of a trajectory, started at the trajectory node
/// nearest to the requested start time.
class SpaceTimeReconstruction {
 public:
  explicit SpaceTimeReconstruction(std::shared_ptr<const Trajectory> trajectory,
                                   double requested_start = 0.0);

  const TemporalReconstruction& temporal() const { return temporal_; }
  const Trajectory& trajectory() const { return temporal_.trajectory(); }
  int start_node() const { return start_node_; }
  double start_time() const { return trajectory().times[start_node_]; }
  double end_time() const { return temporal_.end_time(); }

  /// Lax-Wendroff step used inside w at time t.
  double flux_time_step(double t) const;
  /// Reconstruction (value and time derivative) at time t.
  LiftedField at(double t) const;

  /// Chaos-expanded value / d/dt / d/dx at (t, x, xi).
  double eval_sts(double t, double x, double xi, Quantity which, Side side = Side::Right) const;

 private:
  TemporalReconstruction temporal_;
  int start_node_;
};

/// Extremes of the chaos-expanded lift over a tensor sample grid: n_x
/// equal subintervals per element and n_xi equal subintervals of [a, b]
/// (end points included, so doubling either count samples a superset).
struct SampledExtrema {
  double min_value = 0.0;
  double max_value = 0.0;
  double max_abs_dx = 0.0;
};

SampledExtrema sample_extrema(const LiftedField& field, int n_x_samples, int n_xi_samples);

/// max |d/dx u^sts(t, ., .)| over the sample grid.
double lipschitz_bound_dx(const SpaceTimeReconstruction& rec, double t, int n_x_samples = 25,
                          int n_xi_samples = 80);

}  // namespace sgdg

#endif  // SGDG_RECONSTRUCTION_HPP_
