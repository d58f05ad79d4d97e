// Runs the numbered acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sgdg/experiments.hpp"

namespace {

using namespace sgdg;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Bound-property samples shared by criteria 2, 3, 6 and checked in 5.
struct BoundSample {
  std::string label;
  double bound_sq;
  double error_sq;
};
std::vector<BoundSample> g_bound_samples;

void record_bounds(const std::string& label, const std::vector<ConvergenceRow>& table) {
  for (const ConvergenceRow& r : table)
    g_bound_samples.push_back({label + " M=" + std::to_string(r.M) + " N=" + std::to_string(r.N),
                               r.bound * r.bound, r.error * r.error});
}

std::vector<ConvergenceRow> study(RunConfig cfg, int levels, RefineMode mode) {
  std::vector<ConvergenceRow> table;
  convergence_study(cfg, levels, mode, table);
  return table;
}

// Gauss rule with `panels` panels of `points` points each on [a, b],
// probability weights. Independent of the basis' own rule.
std::vector<std::pair<double, double>> panel_rule(const UniformDistribution& d, int panels,
                                                  int points) {
  const QuadratureRule g = gauss_legendre(points);
  std::vector<std::pair<double, double>> out;
  const double w = (d.upper - d.lower) / panels;
  for (int p = 0; p < panels; ++p)
    for (int q = 0; q < g.size(); ++q)
      out.emplace_back(d.lower + w * (p + 0.5 * (g.nodes[q] + 1.0)),
                       0.5 * g.weights[q] / panels);
  return out;
}

void criterion1(Outcome& o) {
  double gram = 0.0, triple = 0.0;
  for (const UniformDistribution& d : {UniformDistribution(1.0, 3.0), UniformDistribution(-0.2, 0.2)})
    for (int N = 0; N <= 12; ++N) {
      const StochasticBasis b(d, N);
      const auto oracle = panel_rule(d, 4, b.quadrature().size());
      std::vector<std::vector<double>> psi(oracle.size(), std::vector<double>(2 * N + 1));
      for (std::size_t q = 0; q < oracle.size(); ++q)
        for (int n = 0; n <= 2 * N; ++n) psi[q][n] = b.eval(n, oracle[q].first);
      for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) {
          double g = 0.0;
          for (std::size_t q = 0; q < oracle.size(); ++q) g += oracle[q].second * psi[q][i] * psi[q][j];
          gram = std::max(gram, std::abs(g - (i == j ? 1.0 : 0.0)));
          for (int k = 0; k <= N; ++k) {
            double t = 0.0;
            for (std::size_t q = 0; q < oracle.size(); ++q)
              t += oracle[q].second * psi[q][i] * psi[q][j] * psi[q][k];
            triple = std::max(triple, std::abs(t - b.triple(k, i, j)));
          }
        }
    }
  o.detail << "max Gram defect " << gram << ", max triple-product defect " << triple;
  o.check(gram <= 1e-12, "Gram");
  o.check(triple <= 1e-12, "triple products");
}

void criterion2(Outcome& o) {
  for (int p : {1, 2}) {
    RunConfig cfg = RunConfig::for_case("advection");
    cfg.N = 2;
    cfg.p = p;
    const auto t = study(cfg, 4, RefineMode::H);
    record_bounds("advection p=" + std::to_string(p), t);
    const ConvergenceRow& f = t.back();
    double e0 = 0.0, rs = 0.0;
    for (const auto& r : t) {
      e0 = std::max(e0, r.E0_stoch);
      rs = std::max(rs, r.R_stoch * r.R_stoch);
    }
    o.detail << "p=" << p << ": eoc(error) " << f.eoc_error << ", eoc(R_st) " << f.eoc_R_st
             << ", max E0_stoch " << e0 << ", max R_stoch " << rs << "; ";
    o.check(f.eoc_error >= p + 0.8 && f.eoc_error <= p + 1.2, "eoc error p=" + std::to_string(p));
    o.check(f.eoc_R_st >= p + 0.8 && f.eoc_R_st <= p + 1.2, "eoc R_st p=" + std::to_string(p));
    o.check(e0 <= 1e-12, "E0_stoch");
    o.check(rs <= 1e-18, "R_stoch");
  }
}

void criterion3(Outcome& o) {
  RunConfig cfg = RunConfig::for_case("advection");
  cfg.N = 0;
  const auto t = study(cfg, 4, RefineMode::H);
  record_bounds("advection N=0", t);
  const ConvergenceRow& f = t.back();
  const double plateau = std::sqrt(f.E0_stoch);
  o.detail << "finest error " << f.error << ", sqrt(E0_stoch) " << plateau << " (analytic "
           << std::sqrt(0.75) << ")";
  o.check(std::abs(f.error - plateau) <= 0.05 * plateau, "plateau");
  o.check(std::abs(plateau - std::sqrt(0.75)) <= 1e-10, "E0_stoch value");
}

void criterion4(Outcome& o) {
  auto basis = std::make_shared<const StochasticBasis>(UniformDistribution(1.0, 3.0), 2);
  auto space = std::make_shared<const DGSpace>(Mesh1D::uniform(0.0, 2.0, 16), 2);
  const NumericalFlux flux(NumericalFlux::Kind::LaxWendroff, FluxLaw::burgers(), basis);
  const RandomField u0([](double, double x, double xi) { return xi * std::cos(kPi * x); });
  const RandomField s([](double, double x, double xi) { return xi * xi * xi * std::sin(kPi * x); },
                      3);
  const SGField init = project_initial(u0, space, basis, ProjectionMethod::GaussLegendreInterp);
  auto traj = std::make_shared<const Trajectory>(march(init, rk3_7(), 0.008, 0.2, flux, s));
  const SpaceTimeReconstruction rec(traj);
  const ResidualReport r = residual_norms(rec, s, QuadratureConfig{}, 0.0, 0.2);
  const double rel = std::abs(r.tail_direct_sq - r.pythagoras_gap) / r.R_sts_sq;
  o.detail << "tail modes " << r.tail_direct_sq << ", R_sts - R_st " << r.pythagoras_gap
           << ", relative difference " << rel;
  o.check(rel <= 1e-8, "identity");
  o.check(r.tail_direct_sq > 0.0, "nontrivial tail");
}

std::vector<ConvergenceRow> g_burgers_h;

void criterion6(Outcome& o) {
  RunConfig cfg = RunConfig::for_case("burgers_smooth");
  cfg.N = 12;
  g_burgers_h = study(cfg, 4, RefineMode::H);
  record_bounds("burgers_smooth h", g_burgers_h);
  const double e = g_burgers_h.back().eoc_R_st;
  o.detail << "eoc(sqrt R_st) " << e << "; ";
  o.check(e >= 2.8 && e <= 3.2, "R_st eoc");

  RunConfig ncfg = RunConfig::for_case("burgers_smooth");
  ncfg.N = 2;
  const auto nt = study(ncfg, 7, RefineMode::N);
  record_bounds("burgers_smooth N", nt);
  bool monotone = true;
  double rmin = nt.front().R_st, rmax = nt.front().R_st;
  o.detail << "sqrt R_stoch over N=2..8:";
  for (std::size_t i = 0; i < nt.size(); ++i) {
    o.detail << ' ' << nt[i].R_stoch;
    if (i > 0) monotone = monotone && nt[i].R_stoch < nt[i - 1].R_stoch;
    rmin = std::min(rmin, nt[i].R_st);
    rmax = std::max(rmax, nt[i].R_st);
  }
  const double drop = nt.front().R_stoch / nt.back().R_stoch;
  const double spread = (rmax - rmin) / rmin;
  o.detail << "; drop " << drop << ", R_st spread " << spread;
  o.check(monotone, "R_stoch monotone");
  o.check(drop >= 10.0, "R_stoch drop");
  o.check(spread < 0.10, "R_st spread");
}

void criterion5(Outcome& o) {
  int violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const BoundSample& s : g_bound_samples) {
    if (!(s.bound_sq >= s.error_sq)) {
      ++violations;
      o.detail << s.label << " violates; ";
    }
    worst = std::min(worst, s.bound_sq / s.error_sq);
  }
  o.detail << g_bound_samples.size() << " runs, " << violations
           << " violations, smallest bound^2/error^2 " << worst;
  o.check(!g_bound_samples.empty(), "no samples");
  o.check(violations == 0, "violations");
}

void criterion7(Outcome& o) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  o.detail << "exp_factor:";
  for (const ConvergenceRow& r : g_burgers_h) {
    o.detail << ' ' << r.exp_factor;
    lo = std::min(lo, r.exp_factor);
    hi = std::max(hi, r.exp_factor);
  }
  o.detail << "; relative spread " << (hi - lo) / lo;
  o.check(g_burgers_h.size() >= 3, "levels");
  o.check((hi - lo) / lo < 0.20, "spread");
}

void criterion8(Outcome& o) {
  RunConfig cfg = RunConfig::for_case("burgers_artificial_shock");
  cfg.N = 1;
  cfg.limiter = true;
  cfg.M = 32;
  cfg.dt = 0.004;
  std::vector<ConvergenceRow> table;
  const RunResult last = convergence_study(cfg, 3, RefineMode::H, table);
  bool increasing = true;
  o.detail << "sqrt R_st at M=32,64,128:";
  for (std::size_t i = 0; i < table.size(); ++i) {
    o.detail << ' ' << table[i].R_st;
    if (i > 0) increasing = increasing && table[i].R_st > table[i - 1].R_st;
  }
  const ResidualProfile& prof = last.residuals.profile;
  const auto peak = std::max_element(prof.R_st_density.begin(), prof.R_st_density.end());
  const double x_peak = prof.x[peak - prof.R_st_density.begin()];
  const double h = 2.0 / table.back().M;
  // Steepest drop of the cell means of mode 0, for context.
  std::size_t jump = 0;
  for (std::size_t i = 1; i + 1 < prof.mode0.size(); ++i)
    if (prof.mode0[i] - prof.mode0[i + 1] > prof.mode0[jump] - prof.mode0[jump + 1]) jump = i;
  o.detail << "; R_st density peak at x = " << x_peak << " (" << std::abs(x_peak - 1.6) / h
           << " elements from 1.6), mode-0 jump between x = " << prof.x[jump] << " and "
           << prof.x[jump + 1];
  o.check(increasing, "R_st increasing");
  o.check(last.trajectory->states.back().all_finite(), "finite");
  o.check(std::abs(x_peak - 1.6) <= 3.0 * h, "peak location");
}

void criterion9(Outcome& o) {
  RunConfig cfg = RunConfig::for_case("riemann");
  cfg.M = 128;
  cfg.dt = 0.002;
  cfg.p = 2;
  cfg.N = 1;
  const auto t = study(cfg, 8, RefineMode::N);
  bool monotone = true;
  o.detail << "sqrt R_stoch over N=1..8:";
  for (std::size_t i = 0; i < t.size(); ++i) {
    o.detail << ' ' << t[i].R_stoch;
    if (i > 0) monotone = monotone && t[i].R_stoch < t[i - 1].R_stoch;
  }
  const double drop = t.front().R_stoch / t.back().R_stoch;
  o.detail << "; drop " << drop;
  o.check(monotone, "monotone");
  o.check(drop >= 10.0, "drop");
}

void criterion10(Outcome& o) {
  auto basis = std::make_shared<const StochasticBasis>(UniformDistribution(1.0, 3.0), 3);
  auto space = std::make_shared<const DGSpace>(Mesh1D::uniform(0.0, 2.0, 12), 2);
  double cont = 0.0, orth = 0.0;
  for (auto kind : {NumericalFlux::Kind::Upwind, NumericalFlux::Kind::LaxWendroff}) {
    const NumericalFlux flux(kind, FluxLaw::burgers(), basis);
    const RandomField u0([](double, double x, double xi) { return xi * std::cos(kPi * x); });
    auto traj = std::make_shared<const Trajectory>(
        march(project_initial(u0, space, basis, ProjectionMethod::RadauPlus), rk3_7(), 0.01, 0.1,
              flux, RandomField::zero(), {true, 0.0}));
    const SpaceTimeReconstruction rec(traj);
    const auto& q = space->quadrature();
    const int nc = basis->size();
    std::vector<double> a(nc), b(nc), lq(nc), uq(nc);
    std::span<double> none;
    for (int it = 0; it <= 20; ++it) {
      const double t = 0.1 * it / 20.0 + (it % 3) * 1e-3 * (it < 20);
      const LiftedField lf = rec.at(t);
      const SGField ut = rec.temporal().value(t);
      for (int k = 0; k < 12; ++k) {
        lf.evaluate_modes((k + 11) % 12, 1.0, a, none, none);
        lf.evaluate_modes(k, -1.0, b, none, none);
        for (int n = 0; n < nc; ++n) cont = std::max(cont, std::abs(a[n] - b[n]));
        for (int m = 0; m < 2; ++m)
          for (int n = 0; n < nc; ++n) {
            double s = 0.0;
            for (int i = 0; i < q.size(); ++i) {
              lf.evaluate_modes(k, q.nodes[i], lq, none, none);
              ut.evaluate_modes(k, q.nodes[i], uq);
              s += q.weights[i] * (lq[n] - uq[n]) * orthonormal_legendre(m, q.nodes[i]);
            }
            orth = std::max(orth, std::abs(s));
          }
      }
    }
  }

  // Globally continuous piecewise-quadratic input.
  const NumericalFlux lw(NumericalFlux::Kind::LaxWendroff, FluxLaw::burgers(), basis, 0.01);
  const RandomField g([](double, double x, double xi) { return xi * x * (2.0 - x); }, 1);
  const SGField uc = project_initial(g, space, basis, ProjectionMethod::RadauPlus);
  const LiftedField lc = spatial_reconstruct(uc, lw);
  double same = 0.0;
  for (int k = 0; k < 12; ++k)
    for (int n = 0; n < basis->size(); ++n) {
      for (int m = 0; m <= 2; ++m) same = std::max(same, std::abs(lc.coefficient(k, m, n) - uc(k, m, n)));
      same = std::max(same, std::abs(lc.coefficient(k, 3, n)));
    }

  // Hermite data from a cubic in time.
  SGField c0(space, basis), c1(space, basis), c2(space, basis), c3(space, basis);
  for (std::size_t i = 0; i < c0.data().size(); ++i) {
    c0.data()[i] = std::sin(1.0 + i);
    c1.data()[i] = std::cos(2.0 * i);
    c2.data()[i] = 0.5 - std::sin(3.0 * i);
    c3.data()[i] = std::cos(0.7 * i + 0.2);
  }
  const auto cubic = [&](double t, bool deriv) {
    SGField u(space, basis);
    for (std::size_t i = 0; i < u.data().size(); ++i)
      u.data()[i] = deriv ? c1.data()[i] + 2 * t * c2.data()[i] + 3 * t * t * c3.data()[i]
                          : c0.data()[i] + t * c1.data()[i] + t * t * c2.data()[i] +
                                t * t * t * c3.data()[i];
    return u;
  };
  const std::vector<double> times{0.0, 0.25, 0.6, 1.0};
  std::vector<SGField> states, derivs;
  for (double t : times) {
    states.push_back(cubic(t, false));
    derivs.push_back(cubic(t, true));
  }
  auto traj = std::make_shared<const Trajectory>(Trajectory{
      times, states, derivs, {0.25, 0.35, 0.4, 0.4}, {0, 0, 0, 0}, lw, RandomField::zero()});
  const TemporalReconstruction tr(traj);
  double herm = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double t = i / 40.0;
    const SGField v = tr.value(t), e = cubic(t, false);
    for (std::size_t j = 0; j < v.data().size(); ++j)
      herm = std::max(herm, std::abs(v.data()[j] - e.data()[j]));
  }

  o.detail << "continuity " << cont << ", orthogonality " << orth << ", continuous-input defect "
           << same << ", Hermite cubic defect " << herm;
  o.check(cont <= 1e-11, "continuity");
  o.check(orth <= 1e-12, "orthogonality");
  o.check(same <= 1e-12, "continuous input");
  o.check(herm <= 1e-13, "Hermite");
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* title;
    std::function<void(Outcome&)> fn;
  };
  // Criterion 5 reads the runs of 2, 3 and 6, so it is evaluated after them.
  const std::vector<Item> items{
      {1, "orthonormality and triple products", criterion1},
      {2, "advection EOC", criterion2},
      {3, "advection N=0 plateau", criterion3},
      {4, "Pythagoras identity", criterion4},
      {6, "smooth Burgers", criterion6},
      {5, "upper-bound property", criterion5},
      {7, "exponential factor bounded", criterion7},
      {8, "artificial shock", criterion8},
      {9, "Riemann stochastic decay", criterion9},
      {10, "reconstruction invariants", criterion10},
  };
  std::vector<std::pair<int, std::string>> lines;
  int failures = 0;
  for (const Item& it : items) {
    Outcome o;
    try {
      it.fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += o.pass ? 0 : 1;
    char head[96];
    std::snprintf(head, sizeof head, "criterion %2d %s  %s: ", it.id, o.pass ? "PASS" : "FAIL",
                  it.title);
    lines.emplace_back(it.id, head + o.detail.str());
    std::fflush(stdout);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d of %zu criteria failed\n", failures, lines.size());
  return failures;
}
