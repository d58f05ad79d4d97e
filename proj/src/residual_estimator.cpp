#include "sgdg/residual_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sgdg {

void QuadratureConfig::validate() const {
  if (n_time_per_interval < 1 || n_space_per_element < 1 || n_stochastic < 1 || oversampling < 1)
    throw std::invalid_argument("QuadratureConfig: all quadrature orders must be >= 1");
}

namespace {

// Psi_l at the nodes of an n-point rule, l = 0..n_modes-1, layout [node][l].
struct PsiTable {
  StochasticQuadrature quad;
  int n_modes = 0;
  std::vector<double> values;

  PsiTable(const UniformDistribution& dist, int n_points, int modes)
      : quad(gauss_quadrature(n_points, dist)), n_modes(modes) {
    values.resize(static_cast<std::size_t>(quad.nodes.size()) * modes);
    for (std::size_t j = 0; j < quad.nodes.size(); ++j)
      for (int l = 0; l < modes; ++l) values[j * modes + l] = psi(dist, l, quad.nodes[j]);
  }
  int size() const { return static_cast<int>(quad.nodes.size()); }
  const double* row(int j) const { return &values[static_cast<std::size_t>(j) * n_modes]; }
};

double series(const double* coeffs, const double* psi_row, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += coeffs[i] * psi_row[i];
  return s;
}

// Physical quadrature points of all elements, layout [k][q].
std::vector<double> element_points(const Mesh1D& mesh, const QuadratureRule& rule) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(mesh.n_elements()) * rule.size());
  for (int k = 0; k < mesh.n_elements(); ++k)
    for (int q = 0; q < rule.size(); ++q)
      xs.push_back(mesh.vertex(k) + 0.5 * (rule.nodes[q] + 1.0) * mesh.width(k));
  return xs;
}

// Space-stochastic integrals of the squared residual parts at one time level,
// in total, per chaos mode and per element.
struct TimeSlice {
  double st = 0.0, stoch = 0.0, sts = 0.0, tail = 0.0;
  std::vector<double> st_by_mode, tail_by_mode;
  std::vector<double> element_st, element_stoch;
};

TimeSlice residual_slice(const LiftedField& f, const FluxLaw& law, const RandomField& source,
                         double t, const QuadratureRule& xrule, const PsiTable& table) {
  const StochasticBasis& basis = *f.basis;
  const Mesh1D& mesh = f.space->mesh();
  const int n_el = mesh.n_elements();
  const int nc = f.n_chaos();
  const int N = nc - 1;
  const int n_tail = N;  // modes N+1..2N
  const int nq = xrule.size();
  const int nxi = table.size();
  const std::vector<double> xs = element_points(mesh, xrule);

  std::vector<double> s_grid;
  if (!source.is_zero()) {
    s_grid.resize(xs.size() * nxi);
    source.evaluate_grid(t, xs, table.quad.nodes, s_grid);
  }

  TimeSlice out;
  out.st_by_mode.assign(nc, 0.0);
  out.tail_by_mode.assign(n_tail, 0.0);
  out.element_st.assign(n_el, 0.0);
  out.element_stoch.assign(n_el, 0.0);

  std::vector<double> v(nc), dx(nc), dt(nc), jdx(nc), r_modes(nc), s_modes(2 * N + 1);
  for (int k = 0; k < n_el; ++k) {
    const double half_h = 0.5 * mesh.width(k);
    for (int q = 0; q < nq; ++q) {
      const double wx = xrule.weights[q] * half_h;
      f.evaluate_modes(k, xrule.nodes[q], v, dx, dt);
      const double* s_row = s_grid.empty() ? nullptr : &s_grid[(k * nq + q) * nxi];

      std::fill(s_modes.begin(), s_modes.end(), 0.0);
      if (s_row != nullptr)
        for (int j = 0; j < nxi; ++j) {
          const double ws = table.quad.weights[j] * s_row[j];
          const double* ps = table.row(j);
          for (int l = 0; l <= 2 * N; ++l) s_modes[l] += ws * ps[l];
        }

      sg_flux_jacobian_apply(law, basis, v, dx, jdx);
      double st = 0.0;
      for (int i = 0; i < nc; ++i) {
        r_modes[i] = dt[i] + jdx[i] - s_modes[i];
        const double sq = r_modes[i] * r_modes[i];
        out.st_by_mode[i] += wx * sq;
        st += sq;
      }

      double sts = 0.0, stoch = 0.0;
      for (int j = 0; j < nxi; ++j) {
        const double* ps = table.row(j);
        const Jet jet{series(v.data(), ps, nc), series(dt.data(), ps, nc),
                      series(dx.data(), ps, nc)};
        const double r = residual_pointwise(law, jet, s_row == nullptr ? 0.0 : s_row[j]);
        const double tail = r - series(r_modes.data(), ps, nc);
        sts += table.quad.weights[j] * r * r;
        stoch += table.quad.weights[j] * tail * tail;
      }

      double tail_direct = 0.0;
      for (int l = N + 1; l <= 2 * N; ++l) {
        const double m = sg_flux_divergence_tail_mode(law, basis, v, dx, l) - s_modes[l];
        out.tail_by_mode[l - N - 1] += wx * m * m;
        tail_direct += m * m;
      }

      out.st += wx * st;
      out.sts += wx * sts;
      out.stoch += wx * stoch;
      out.tail += wx * tail_direct;
      out.element_st[k] += wx * st;
      out.element_stoch[k] += wx * stoch;
    }
  }
  return out;
}

}  // namespace

double residual_pointwise(const FluxLaw& flux, const Jet& u, double source_value) {
  return u.dt + flux.df(u.value) * u.dx - source_value;
}

double residual_pointwise(const SpaceTimeReconstruction& rec, const RandomField& source, double t,
                          double x, double xi) {
  const Jet jet{rec.eval_sts(t, x, xi, Quantity::Value), rec.eval_sts(t, x, xi, Quantity::TimeDerivative),
                rec.eval_sts(t, x, xi, Quantity::SpaceDerivative)};
  return residual_pointwise(rec.trajectory().flux.flux_law(), jet, source(t, x, xi));
}

ResidualReport residual_norms(const SpaceTimeReconstruction& rec, const RandomField& source,
                              const QuadratureConfig& quad, double t_start, double t_end) {
  quad.validate();
  const double tol = 1e-12 * std::max(1.0, std::abs(rec.end_time()));
  if (t_start < rec.start_time() - tol)
    throw std::invalid_argument("residual_norms: t_start precedes the reconstruction start");
  if (t_end > rec.end_time() + tol || t_end < t_start)
    throw std::invalid_argument("residual_norms: invalid time range");

  const Trajectory& tr = rec.trajectory();
  const StochasticBasis& basis = tr.states.front().basis();
  const FluxLaw& law = tr.flux.flux_law();
  const int nc = basis.size();
  const int N = nc - 1;
  const QuadratureRule trule = gauss_legendre(quad.n_time_per_interval);
  const QuadratureRule xrule = gauss_legendre(quad.n_space_per_element);
  const PsiTable table(basis.distribution(), quad.n_stochastic, 2 * N + 1);

  ResidualReport rep;
  rep.R_st_by_mode.assign(nc, 0.0);
  rep.tail_by_mode.assign(N, 0.0);

  for (int n = 0; n < tr.n_steps(); ++n) {
    const double a = std::max(tr.times[n], t_start);
    const double b = std::min(tr.times[n + 1], t_end);
    if (!(b > a)) continue;
    for (int i = 0; i < trule.size(); ++i) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * trule.nodes[i];
      const double wt = 0.5 * (b - a) * trule.weights[i];
      const TimeSlice s = residual_slice(rec.at(t), law, source, t, xrule, table);
      rep.R_st_sq += wt * s.st;
      rep.R_sts_sq += wt * s.sts;
      rep.R_stoch_sq += wt * s.stoch;
      rep.tail_direct_sq += wt * s.tail;
      for (int l = 0; l < nc; ++l) rep.R_st_by_mode[l] += wt * s.st_by_mode[l];
      for (int l = 0; l < N; ++l) rep.tail_by_mode[l] += wt * s.tail_by_mode[l];
    }
  }

  rep.pythagoras_gap = rep.R_sts_sq - rep.R_st_sq;
  const double scale = std::max(rep.R_sts_sq, 1e-30);
  if (rep.pythagoras_gap < -1e-9 * scale) {
    std::ostringstream os;
    os << "negative Pythagoras gap " << rep.pythagoras_gap << " (R_sts_sq = " << rep.R_sts_sq
       << "): quadrature inconsistency";
    rep.warnings.push_back(os.str());
  }
  if (std::abs(std::max(rep.pythagoras_gap, 0.0) - rep.R_stoch_sq) > 1e-9 * scale) {
    std::ostringstream os;
    os << "stochastic residual " << rep.R_stoch_sq << " differs from the Pythagoras gap "
       << rep.pythagoras_gap;
    rep.warnings.push_back(os.str());
  }

  // Snapshot at t_end.
  const LiftedField f = rec.at(t_end);
  const TimeSlice s = residual_slice(f, law, source, t_end, xrule, table);
  const Mesh1D& mesh = f.space->mesh();
  for (int k = 0; k < mesh.n_elements(); ++k) {
    const double h = mesh.width(k);
    rep.profile.x.push_back(mesh.vertex(k) + 0.5 * h);
    rep.profile.mode0.push_back(f.coefficient(k, 0, 0) / std::sqrt(2.0));
    rep.profile.R_st_density.push_back(s.element_st[k] / h);
    rep.profile.R_stoch_density.push_back(s.element_stoch[k] / h);
  }
  return rep;
}

InitialErrorSplit initial_error_split(const RandomField& u0, double t0, const LiftedField& rec_at_t0,
                                      const QuadratureConfig& quad) {
  quad.validate();
  const StochasticBasis& basis = *rec_at_t0.basis;
  const Mesh1D& mesh = rec_at_t0.space->mesh();
  const int nc = basis.size();
  const QuadratureRule xrule = gauss_legendre(quad.n_space_per_element);
  const PsiTable table(basis.distribution(), quad.n_stochastic, nc);
  const std::vector<double> xs = element_points(mesh, xrule);
  const int nq = xrule.size();
  const int nxi = table.size();
  std::vector<double> grid(xs.size() * nxi);
  u0.evaluate_grid(t0, xs, table.quad.nodes, grid);

  InitialErrorSplit out;
  out.E0_st_by_mode.assign(nc, 0.0);
  std::vector<double> modes(nc), v(nc);
  std::span<double> none;
  for (int k = 0; k < mesh.n_elements(); ++k) {
    const double half_h = 0.5 * mesh.width(k);
    for (int q = 0; q < nq; ++q) {
      const double wx = xrule.weights[q] * half_h;
      const double* g = &grid[(k * nq + q) * nxi];
      std::fill(modes.begin(), modes.end(), 0.0);
      for (int j = 0; j < nxi; ++j) {
        const double* ps = table.row(j);
        for (int l = 0; l < nc; ++l) modes[l] += table.quad.weights[j] * g[j] * ps[l];
      }
      double tail = 0.0;
      for (int j = 0; j < nxi; ++j) {
        const double d = g[j] - series(modes.data(), table.row(j), nc);
        tail += table.quad.weights[j] * d * d;
      }
      out.E0_stoch += wx * tail;
      rec_at_t0.evaluate_modes(k, xrule.nodes[q], v, none, none);
      for (int l = 0; l < nc; ++l) {
        const double d = modes[l] - v[l];
        out.E0_st_by_mode[l] += wx * d * d;
      }
    }
  }
  for (double e : out.E0_st_by_mode) out.E0_st += e;
  return out;
}

EstimatorReport compute_bound(const SpaceTimeReconstruction& rec, const ResidualReport& residuals,
                              const QuadratureConfig& quad, double s, double M3_proxy) {
  quad.validate();
  const Trajectory& tr = rec.trajectory();
  const FluxLaw& law = tr.flux.flux_law();
  const double t0 = rec.start_time();
  const int n_x = quad.n_space_per_element * quad.oversampling;
  const int n_xi = quad.n_stochastic * quad.oversampling;

  EstimatorReport rep;
  double lo = -std::abs(M3_proxy), hi = std::abs(M3_proxy);
  double exponent = 0.25 * (s - t0);
  // f'' is checked at the range ends and at 0; it is constant for the
  // implemented laws, so a nonzero value anywhere means it is nonzero here.
  const bool curved = law.d2f(lo) != 0.0 || law.d2f(hi) != 0.0 || law.d2f(0.0) != 0.0;
  if (curved) {
    const QuadratureRule trule = gauss_legendre(quad.n_time_per_interval);
    double integral = 0.0;
    for (int n = 0; n < tr.n_steps(); ++n) {
      const double a = std::max(tr.times[n], t0);
      const double b = std::min(tr.times[n + 1], s);
      if (!(b > a)) continue;
      for (int i = 0; i < trule.size(); ++i) {
        const double t = 0.5 * (a + b) + 0.5 * (b - a) * trule.nodes[i];
        const SampledExtrema ext = sample_extrema(rec.at(t), n_x, n_xi);
        lo = std::min(lo, ext.min_value);
        hi = std::max(hi, ext.max_value);
        integral += 0.5 * (b - a) * trule.weights[i] * ext.max_abs_dx;
      }
    }
    rep.C_fpp = 0.5 * std::max({std::abs(law.d2f(lo)), std::abs(law.d2f(hi)), std::abs(law.d2f(0.0))});
    exponent += rep.C_fpp * integral;
  }
  rep.exp_factor = std::exp(exponent);
  rep.bound_reconstruction =
      (residuals.R_sts_sq + residuals.E0_st + residuals.E0_stoch) * rep.exp_factor;

  // ||u^sts(t_n) - u_h^n||^2 by Parseval in xi and an exact Gauss rule in x.
  const int node = tr.nearest_node(s);
  const SGField& uh = tr.states[node];
  const LiftedField f = rec.at(tr.times[node]);
  const QuadratureRule xrule = gauss_legendre(quad.n_space_per_element);
  const int nc = uh.n_chaos();
  std::vector<double> a(nc), b(nc);
  std::span<double> none;
  double diff = 0.0;
  for (int k = 0; k < uh.n_elements(); ++k) {
    const double half_h = 0.5 * uh.space().mesh().width(k);
    for (int q = 0; q < xrule.size(); ++q) {
      f.evaluate_modes(k, xrule.nodes[q], a, none, none);
      uh.evaluate_modes(k, xrule.nodes[q], b);
      double d2 = 0.0;
      for (int n = 0; n < nc; ++n) d2 += (a[n] - b[n]) * (a[n] - b[n]);
      diff += xrule.weights[q] * half_h * d2;
    }
  }
  rep.recon_vs_numerical_sq = diff;
  rep.bound_numerical = 2.0 * diff + 2.0 * rep.bound_reconstruction;
  return rep;
}

double exact_error_sq(const SGField& u, const RandomField& exact, double t,
                      const QuadratureConfig& quad, const BreakpointFn& breakpoints) {
  quad.validate();
  const StochasticBasis& basis = u.basis();
  const Mesh1D& mesh = u.space().mesh();
  const int nc = u.n_chaos();
  const QuadratureRule xrule = gauss_legendre(quad.n_space_per_element);
  const PsiTable table(basis.distribution(), quad.n_stochastic, nc);
  const int nq = xrule.size();
  const int nxi = table.size();
  std::vector<double> modes(nc);

  double total = 0.0;
  if (!breakpoints) {
    const std::vector<double> xs = element_points(mesh, xrule);
    std::vector<double> grid(xs.size() * nxi);
    exact.evaluate_grid(t, xs, table.quad.nodes, grid);
    for (int k = 0; k < mesh.n_elements(); ++k) {
      const double half_h = 0.5 * mesh.width(k);
      for (int q = 0; q < nq; ++q) {
        u.evaluate_modes(k, xrule.nodes[q], modes);
        const double* g = &grid[(k * nq + q) * nxi];
        double acc = 0.0;
        for (int j = 0; j < nxi; ++j) {
          const double d = series(modes.data(), table.row(j), nc) - g[j];
          acc += table.quad.weights[j] * d * d;
        }
        total += xrule.weights[q] * half_h * acc;
      }
    }
    return total;
  }

  // Split every element at the discontinuities of the exact solution, per xi node.
  for (int j = 0; j < nxi; ++j) {
    const double xi = table.quad.nodes[j];
    std::vector<double> cuts;
    for (double c : breakpoints(t, xi)) cuts.push_back(mesh.wrap(c));
    std::sort(cuts.begin(), cuts.end());
    double acc = 0.0;
    for (int k = 0; k < mesh.n_elements(); ++k) {
      std::vector<double> pts{mesh.vertex(k)};
      for (double c : cuts)
        if (c > mesh.vertex(k) && c < mesh.vertex(k + 1)) pts.push_back(c);
      pts.push_back(mesh.vertex(k + 1));
      for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const double a = pts[s], b = pts[s + 1];
        for (int q = 0; q < nq; ++q) {
          const double x = 0.5 * (a + b) + 0.5 * (b - a) * xrule.nodes[q];
          u.evaluate_modes(k, u.space().to_reference(k, x), modes);
          const double d = series(modes.data(), table.row(j), nc) - exact(t, x, xi);
          acc += 0.5 * (b - a) * xrule.weights[q] * d * d;
        }
      }
    }
    total += table.quad.weights[j] * acc;
  }
  return total;
}

}  // namespace sgdg
