#ifndef SGDG_RESIDUAL_ESTIMATOR_HPP_
#define SGDG_RESIDUAL_ESTIMATOR_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgdg/reconstruction.hpp"

namespace sgdg {

struct QuadratureConfig {
  int n_time_per_interval = 8;
  int n_space_per_element = 25;
  int n_stochastic = 80;
  /// Multiplier on the sample counts used for L-infinity norms.
  int oversampling = 1;

  void validate() const;
};

/// Per-element snapshot at the end time: element centre, cell mean of chaos
/// mode 0, and element averages of the squared residual parts.
struct ResidualProfile {
  std::vector<double> x;
  std::vector<double> mode0;
  std::vector<double> R_st_density;
  std::vector<double> R_stoch_density;
};

struct ResidualReport {
  double R_st_sq = 0.0;
  /// Squared stochastic residual by direct xi-quadrature of the pointwise tail.
  double R_stoch_sq = 0.0;
  double R_sts_sq = 0.0;
  double E0_st = 0.0;
  double E0_stoch = 0.0;
  /// R_sts_sq - R_st_sq, unclamped.
  double pythagoras_gap = 0.0;
  /// Sum of the squared tail modes l = N+1..2N (flux part minus source modes).
  double tail_direct_sq = 0.0;
  std::vector<double> R_st_by_mode;
  std::vector<double> tail_by_mode;
  std::vector<double> E0_st_by_mode;
  ResidualProfile profile;
  std::vector<std::string> warnings;
};

struct EstimatorReport {
  std::optional<double> exact_error_sq;
  double bound_reconstruction = 0.0;
  double bound_numerical = 0.0;
  double exp_factor = 1.0;
  double C_fpp = 0.0;
  double recon_vs_numerical_sq = 0.0;
  std::optional<double> effectivity;
};

/// Value and first derivatives of a scalar field at one point.
struct Jet {
  double value = 0.0;
  double dt = 0.0;
  double dx = 0.0;
};

/// d_t u + f'(u) d_x u - s.
double residual_pointwise(const FluxLaw& flux, const Jet& u, double source_value);
/// Residual of the space-time-stochastic reconstruction at (t, x, xi).
double residual_pointwise(const SpaceTimeReconstruction& rec, const RandomField& source, double t,
                          double x, double xi);

/// Residual norms over (t_start, t_end) plus the residual profile at t_end.
/// The initial-error fields are left at zero.
ResidualReport residual_norms(const SpaceTimeReconstruction& rec, const RandomField& source,
                              const QuadratureConfig& quad, double t_start, double t_end);

struct InitialErrorSplit {
  double E0_st = 0.0;
  double E0_stoch = 0.0;
  std::vector<double> E0_st_by_mode;
};

/// Splits ||u0 - u^sts(t0)||^2 into the deterministic-mode part and the
/// chaos truncation part; u0 is sampled at time t0.
InitialErrorSplit initial_error_split(const RandomField& u0, double t0, const LiftedField& rec_at_t0,
                                      const QuadratureConfig& quad);

/// Exponential factor and the two upper bounds, integrated from the
/// reconstruction start to s.
EstimatorReport compute_bound(const SpaceTimeReconstruction& rec, const ResidualReport& residuals,
                              const QuadratureConfig& quad, double s, double M3_proxy);

/// Discontinuity locations in x of an exact solution at (t, xi).
using BreakpointFn = std::function<std::vector<double>(double t, double xi)>;

/// ||u_h - exact(t)||^2 over the domain and the distribution.
double exact_error_sq(const SGField& u, const RandomField& exact, double t,
                      const QuadratureConfig& quad, const BreakpointFn& breakpoints = {});

}  // namespace sgdg

#endif  // SGDG_RESIDUAL_ESTIMATOR_HPP_
