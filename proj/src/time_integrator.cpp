#include "sgdg/time_integrator.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <sstream>

namespace sgdg {

std::vector<double> RKScheme::stage_times() const {
  std::vector<double> c(stages(), 0.0);
  for (int j = 1; j < stages(); ++j) {
    double s = 0.0;
    for (int l = 0; l < j; ++l) s += alpha[j - 1][l] * c[l] + beta[j - 1][l];
    c[j] = s;
  }
  return c;
}

void RKScheme::validate() const {
  if (alpha.size() != beta.size() || alpha.empty())
    throw std::invalid_argument("RKScheme " + name + ": alpha/beta stage count mismatch");
  for (int j = 0; j < stages(); ++j) {
    if (static_cast<int>(alpha[j].size()) != j + 1 || static_cast<int>(beta[j].size()) != j + 1)
      throw std::invalid_argument("RKScheme " + name + ": row " + std::to_string(j + 1) +
                                  " must have " + std::to_string(j + 1) + " entries");
    double sum = 0.0;
    for (int l = 0; l <= j; ++l) {
      if (alpha[j][l] < 0.0)
        throw std::invalid_argument("RKScheme " + name + ": negative alpha");
      if (beta[j][l] != 0.0 && alpha[j][l] == 0.0)
        throw std::invalid_argument("RKScheme " + name + ": beta != 0 requires alpha != 0");
      sum += alpha[j][l];
    }
    if (std::abs(sum - 1.0) > 1e-14)
      throw std::invalid_argument("RKScheme " + name + ": alpha row " + std::to_string(j + 1) +
                                  " does not sum to 1");
  }
}

RKScheme ssprk3() {
  RKScheme s;
  s.name = "ssprk3";
  s.order = 3;
  s.alpha = {{1.0}, {0.75, 0.25}, {1.0 / 3.0, 0.0, 2.0 / 3.0}};
  s.beta = {{1.0}, {0.0, 0.25}, {0.0, 0.0, 2.0 / 3.0}};
  return s;
}

RKScheme rk3_7() {
  // Toulorge & Desmet (2012), RKC73, in 2N-storage form:
  //   k_i = A_i k_{i-1} + dt L(u_{i-1}),  u_i = u_{i-1} + B_i k_i.
  constexpr int kStages = 7;
  constexpr std::array<double, kStages> a2n = {
      0.0, -0.8083163874983830, -1.503407858773331, -1.053064525050744,
      -1.463149119280508, -0.6592881281087830, -1.667891931891068};
  constexpr std::array<double, kStages> b2n = {
      0.01197052673097840, 0.8886897793820711, 0.4578382089261419, 0.5790045253338471,
      0.3160214638138484, 0.2483525368264122, 0.06771230959408840};

  // Butcher coefficients of the states u^(0..S): row j expresses u^(j) - u^(0)
  // in units of dt L(u^(l)).
  std::vector<std::vector<double>> butcher(kStages + 1, std::vector<double>(kStages, 0.0));
  std::vector<double> k(kStages, 0.0), u(kStages, 0.0);
  for (int i = 0; i < kStages; ++i) {
    for (double& v : k) v *= a2n[i];
    k[i] += 1.0;
    for (int l = 0; l < kStages; ++l) u[l] += b2n[i] * k[l];
    butcher[i + 1] = u;
  }

  // alpha_jl = 1/j spreads each stage over all previous states (alpha > 0
  // everywhere, so any beta is admissible).
  RKScheme s;
  s.name = "rk3_7";
  s.order = 3;
  for (int j = 1; j <= kStages; ++j) {
    std::vector<double> alpha(j, 1.0 / j), beta(j, 0.0);
    for (int m = 0; m < j; ++m) {
      double b = butcher[j][m];
      for (int l = 0; l < j; ++l) b -= alpha[l] * butcher[l][m];
      beta[m] = b;
    }
    s.alpha.push_back(std::move(alpha));
    s.beta.push_back(std::move(beta));
  }
  return s;
}

std::vector<RKScheme> builtin_schemes() { return {ssprk3(), rk3_7()}; }

RKScheme scheme_by_name(const std::string& name) {
  for (RKScheme& s : builtin_schemes())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown RK scheme '" + name + "' (expected ssprk3|rk3_7)");
}

BlowUpError::BlowUpError(double time, int stage)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "solver blow-up: non-finite values at t = " << time << ", stage " << stage;
        return os.str();
      }()),
      time_(time),
      stage_(stage) {}

SGField rk_step(const SGField& u_n, const RKScheme& scheme, double dt, const NumericalFlux& flux,
                const RandomField& source, double t_n, const StepOptions& options) {
  const int n_stages = scheme.stages();
  const std::vector<double> c = scheme.stage_times();
  const NumericalFlux step_flux = flux.with_time_step(dt);
  std::vector<SGField> states;
  std::vector<SGField> rates;
  states.reserve(n_stages + 1);
  rates.reserve(n_stages);
  states.push_back(u_n);
  for (int j = 1; j <= n_stages; ++j) {
    const int l_new = j - 1;
    rates.push_back(apply_Lh(states[l_new], step_flux, source, t_n + c[l_new] * dt));
    SGField next(u_n.space_ptr(), u_n.basis_ptr());
    for (int l = 0; l < j; ++l) {
      const double a = scheme.alpha[j - 1][l];
      const double b = scheme.beta[j - 1][l];
      if (a == 0.0) continue;  // beta is zero as well
      next.axpy(a, states[l]);
      if (b != 0.0) next.axpy(b * dt, rates[l]);
    }
    if (options.limiter_on) next = apply_limiter(next, options.tvb_constant);
    if (!next.all_finite()) throw BlowUpError(t_n, j);
    states.push_back(std::move(next));
  }
  return std::move(states.back());
}

int Trajectory::interval_of(double t) const {
  const int n = n_steps();
  if (n <= 0) return 0;
  auto it = std::upper_bound(times.begin(), times.end(), t);
  int idx = static_cast<int>(it - times.begin()) - 1;
  return std::clamp(idx, 0, n - 1);
}

int Trajectory::nearest_node(double t) const {
  int best = 0;
  for (int i = 1; i < static_cast<int>(times.size()); ++i)
    if (std::abs(times[i] - t) < std::abs(times[best] - t)) best = i;
  return best;
}

Trajectory march(const SGField& u0, const RKScheme& scheme, double dt, double final_time,
                 const NumericalFlux& flux, const RandomField& source, const StepOptions& options) {
  if (!(dt > 0.0)) throw std::invalid_argument("march: dt must be > 0");
  if (final_time < 0.0) throw std::invalid_argument("march: final time must be >= 0");
  scheme.validate();
  Trajectory traj{{}, {}, {}, {}, {}, flux, source};
  // Tolerate T/dt landing a hair above an integer.
  const int n_steps =
      final_time == 0.0 ? 0 : static_cast<int>(std::ceil(final_time / dt - 1e-9));
  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  for (int n = 0; n < n_steps; ++n) {
    const double t = traj.times.back();
    const double t_next = n + 1 == n_steps ? final_time : (n + 1) * dt;
    const double step = t_next - t;
    const auto start = std::chrono::steady_clock::now();
    traj.states.push_back(rk_step(traj.states.back(), scheme, step, flux, source, t, options));
    const auto stop = std::chrono::steady_clock::now();
    traj.times.push_back(t_next);
    traj.step_sizes.push_back(step);
    traj.wall_seconds.push_back(std::chrono::duration<double>(stop - start).count());
  }
  traj.step_sizes.push_back(n_steps > 0 ? traj.step_sizes.back() : dt);
  traj.derivatives.reserve(traj.states.size());
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    traj.derivatives.push_back(
        apply_Lh(traj.states[n], flux.with_time_step(traj.step_sizes[n]), source, traj.times[n]));
  }
  return traj;
}

}  // namespace sgdg
