#ifndef SGDG_TIME_INTEGRATOR_HPP_
#define SGDG_TIME_INTEGRATOR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "sgdg/dg_core.hpp"

namespace sgdg {

/// Explicit Runge-Kutta method in the convex-combination (alpha, beta) form
///   u^(j) = Lambda( sum_{l<j} alpha_jl (u^(l) + beta_jl / alpha_jl dt L(u^(l))) ).
struct RKScheme {
  std::string name;
  int order = 0;
  /// alpha[j-1][l], beta[j-1][l] for stage j = 1..S, l = 0..j-1.
  std::vector<std::vector<double>> alpha;
  std::vector<std::vector<double>> beta;

  int stages() const { return static_cast<int>(alpha.size()); }
  /// Abscissae c_0..c_{S-1} of the states u^(0)..u^(S-1) at which L is evaluated.
  std::vector<double> stage_times() const;
  /// Throws std::invalid_argument if alpha < 0, rows do not sum to 1, or
  /// beta != 0 where alpha == 0.
  void validate() const;
};

/// Three-stage third-order strong-stability-preserving scheme (Shu-Osher).
RKScheme ssprk3();
/// Seven-stage third-order low-storage scheme optimized for DG operators,
/// converted to the (alpha, beta) form.
RKScheme rk3_7();
std::vector<RKScheme> builtin_schemes();
RKScheme scheme_by_name(const std::string& name);

/// Non-finite value produced during a Runge-Kutta stage.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double time, int stage);
  double time() const { return time_; }
  int stage() const { return stage_; }

 private:
  double time_;
  int stage_;
};

struct StepOptions {
  bool limiter_on = false;
  double tvb_constant = 0.0;
};

/// One step of the limited RK algorithm from t_n to t_n + dt.
/// The Lax-Wendroff time step inside `flux` is set to dt.
SGField rk_step(const SGField& u_n, const RKScheme& scheme, double dt, const NumericalFlux& flux,
                const RandomField& source, double t_n, const StepOptions& options = {});

/// Accepted time nodes of a run, with d^n = L_h(u_h^n) stored for Hermite
/// reconstruction.
struct Trajectory {
  std::vector<double> times;
  std::vector<SGField> states;
  std::vector<SGField> derivatives;
  /// Length of the step leaving node n (the last node reuses the last step).
  std::vector<double> step_sizes;
  std::vector<double> wall_seconds;
  NumericalFlux flux;
  RandomField source;

  int n_steps() const { return static_cast<int>(times.size()) - 1; }
  double final_time() const { return times.back(); }
  /// Interval index n with t in [t_n, t_{n+1}] (the last interval for t = T).
  int interval_of(double t) const;
  /// Index of the node nearest to t.
  int nearest_node(double t) const;
};

/// Uniform steps of size dt with a truncated last step; ceil(T/dt) steps.
Trajectory march(const SGField& u0, const RKScheme& scheme, double dt, double final_time,
                 const NumericalFlux& flux, const RandomField& source,
                 const StepOptions& options = {});

}  // namespace sgdg

#endif  // SGDG_TIME_INTEGRATOR_HPP_
