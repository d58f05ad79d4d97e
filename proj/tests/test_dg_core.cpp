#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "sgdg/dg_core.hpp"

namespace {

using namespace sgdg;

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const DGSpace> space(int M, int p, double a = 0.0, double b = 2.0) {
  return std::make_shared<const DGSpace>(Mesh1D::uniform(a, b, M), p);
}

std::shared_ptr<const StochasticBasis> basis(int N, double a = 1.0, double b = 3.0) {
  return std::make_shared<const StochasticBasis>(UniformDistribution(a, b), N);
}

SGField random_field(std::shared_ptr<const DGSpace> sp, std::shared_ptr<const StochasticBasis> bs,
                     unsigned seed) {
  SGField u(std::move(sp), std::move(bs));
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (double& v : u.data()) v = U(rng);
  return u;
}

// L2 norm over the domain of chaos mode `n` minus g(x).
double l2_mode_error(const SGField& u, int n, const std::function<double(double)>& g) {
  const DGSpace& sp = u.space();
  const auto& q = sp.quadrature();
  double s = 0.0;
  std::vector<double> modes(u.n_chaos());
  for (int k = 0; k < u.n_elements(); ++k)
    for (int i = 0; i < q.size(); ++i) {
      u.evaluate_modes(k, q.nodes[i], modes);
      const double e = modes[n] - g(sp.to_physical(k, q.nodes[i]));
      s += 0.5 * sp.mesh().width(k) * q.weights[i] * e * e;
    }
  return std::sqrt(s);
}

TEST(Mesh1D, UniformAndWrap) {
  const Mesh1D m = Mesh1D::uniform(-1.0, 1.0, 4);
  EXPECT_EQ(m.n_elements(), 4);
  EXPECT_DOUBLE_EQ(m.width(2), 0.5);
  EXPECT_DOUBLE_EQ(m.wrap(1.25), -0.75);
  EXPECT_EQ(m.locate(-0.5), 1);
  EXPECT_EQ(m.locate(-0.5, true), 0);
  EXPECT_DOUBLE_EQ(m.interface_width(0), 0.5);
  EXPECT_DOUBLE_EQ(m.quasi_uniformity(), 1.0);
}

TEST(Mesh1D, RejectsNonIncreasingVertices) {
  EXPECT_THROW(Mesh1D({0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST(DGSpace, OrthonormalMass) {
  const auto sp = space(3, 4);
  const auto& q = sp->quadrature();
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      double s = 0.0;
      for (int i = 0; i < q.size(); ++i) s += q.weights[i] * sp->phi(i, m) * sp->phi(i, n);
      EXPECT_NEAR(s, m == n ? 1.0 : 0.0, 1e-13);
    }
}

TEST(ProjectInitial, ConstantsForBothMethods) {
  for (auto method : {ProjectionMethod::RadauPlus, ProjectionMethod::GaussLegendreInterp}) {
    const SGField u = project_initial(RandomField([](double, double, double) { return 1.75; }, 0),
                                      space(5, 2), basis(2), method);
    for (int k = 0; k < 5; ++k)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
          EXPECT_NEAR(u(k, m, n), (m == 0 && n == 0) ? 1.75 * std::sqrt(2.0) : 0.0, 1e-13);
    EXPECT_NEAR(eval_field(u, 0.3, 2.2), 1.75, 1e-13);
    EXPECT_NEAR(eval_field(u, 0.3, 2.2, 1), 0.0, 1e-12);
  }
}

TEST(ProjectInitial, ReproducesTensorPolynomials) {
  const RandomField g([](double, double x, double xi) { return (1.0 + x - 0.5 * x * x) * xi * xi; },
                      2);
  for (auto method : {ProjectionMethod::RadauPlus, ProjectionMethod::GaussLegendreInterp}) {
    const SGField u = project_initial(g, space(4, 2), basis(2), method);
    for (double x : {0.05, 0.61, 1.37, 1.99})
      for (double xi : {1.0, 1.6, 2.9}) EXPECT_NEAR(eval_field(u, x, xi), g(0, x, xi), 1e-12);
  }
}

TEST(ProjectInitial, ChaosModesOfSeparableData) {
  const RandomField g([](double, double x, double xi) {
    return xi * (1.0 - 0.5 * std::cos(kPi * x));
  }, 1);
  const SGField u = project_initial(g, space(32, 3), basis(3), ProjectionMethod::RadauPlus);
  const auto prof = [](double x) { return 1.0 - 0.5 * std::cos(kPi * x); };
  EXPECT_LT(l2_mode_error(u, 0, [&](double x) { return 2.0 * prof(x); }), 1e-5);
  EXPECT_LT(l2_mode_error(u, 1, [&](double x) { return prof(x) / std::sqrt(3.0); }), 1e-5);
  EXPECT_LT(l2_mode_error(u, 2, [](double) { return 0.0; }), 1e-13);
  EXPECT_LT(l2_mode_error(u, 3, [](double) { return 0.0; }), 1e-13);
}

TEST(ProjectInitial, PointValueOfSeparableData) {
  const RandomField g([](double, double x, double xi) {
    return xi * (1.0 - 0.5 * std::cos(kPi * x));
  }, 1);
  const SGField u =
      project_initial(g, space(64, 4), basis(2), ProjectionMethod::GaussLegendreInterp);
  EXPECT_NEAR(eval_field(u, 0.0, 2.0), 1.0, 1e-10);
}

TEST(ProjectInitial, RadauMatchesRightTrace) {
  const RandomField g([](double, double x, double) { return std::exp(std::sin(kPi * x)); }, 0);
  const SGField u = project_initial(g, space(8, 2), basis(0), ProjectionMethod::RadauPlus);
  std::vector<double> tr(1);
  for (int k = 0; k < 8; ++k) {
    u.trace(k, Side::Right, tr);
    EXPECT_NEAR(tr[0], g(0, 0.25 * (k + 1), 0), 1e-13);
  }
}

TEST(ProjectionMethodNames, ParseAndPrint) {
  EXPECT_EQ(parse_projection_method("radau"), ProjectionMethod::RadauPlus);
  EXPECT_EQ(parse_projection_method("gauss_legendre"), ProjectionMethod::GaussLegendreInterp);
  EXPECT_THROW(parse_projection_method("l2"), std::invalid_argument);
  EXPECT_EQ(parse_numerical_flux(to_string(NumericalFlux::Kind::LaxWendroff)),
            NumericalFlux::Kind::LaxWendroff);
  EXPECT_THROW(parse_numerical_flux("godunov"), std::invalid_argument);
}

TEST(NumericalFlux, TraceOfEqualStatesIsTheState) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  const auto bs = basis(3);
  for (auto kind : {NumericalFlux::Kind::Upwind, NumericalFlux::Kind::LaxWendroff})
    for (const FluxLaw& law : {FluxLaw::advection(2.0), FluxLaw::burgers()}) {
      const NumericalFlux nf(kind, law, bs, 0.01);
      std::vector<double> u(4), w(4);
      for (double& v : u) v = U(rng);
      nf.trace(u, u, 0.1, w);
      for (int i = 0; i < 4; ++i) EXPECT_EQ(w[i], u[i]);
    }
}

TEST(NumericalFlux, UpwindTakesLeftState) {
  const NumericalFlux nf(NumericalFlux::Kind::Upwind, FluxLaw::advection(2.0), basis(1));
  const std::vector<double> a{1.0, 2.0}, b{5.0, 7.0};
  std::vector<double> w(2), g(2);
  nf.trace(a, b, 0.1, w);
  EXPECT_EQ(w, a);
  nf.flux(a, b, 0.1, g);
  EXPECT_DOUBLE_EQ(g[0], 2.0);
  EXPECT_DOUBLE_EQ(g[1], 4.0);
}

TEST(NumericalFlux, LaxWendroffScalarAdvection) {
  // Linear advection: w = (u- + u+)/2 - a dt/(2h) (u+ - u-).
  const NumericalFlux nf(NumericalFlux::Kind::LaxWendroff, FluxLaw::advection(2.0), basis(0), 0.01);
  const std::vector<double> a{1.0}, b{3.0};
  std::vector<double> w(1);
  nf.trace(a, b, 0.1, w);
  EXPECT_NEAR(w[0], 2.0 - 2.0 * 0.01 / 0.2 * 2.0, 1e-15);
}

TEST(NumericalFlux, TraceDerivativeMatchesFiniteDifference) {
  const auto bs = basis(2);
  const NumericalFlux nf(NumericalFlux::Kind::LaxWendroff, FluxLaw::burgers(), bs, 0.004);
  const std::vector<double> a{1.0, 0.2, -0.1}, b{0.7, 0.4, 0.05}, da{0.3, -1.0, 0.2},
      db{-0.5, 0.1, 0.6};
  std::vector<double> d(3), wp(3), wm(3);
  nf.trace_derivative(a, b, da, db, 0.05, d);
  const double eps = 1e-6;
  std::vector<double> ap(3), am(3), bp(3), bm(3);
  for (int i = 0; i < 3; ++i) {
    ap[i] = a[i] + eps * da[i];
    am[i] = a[i] - eps * da[i];
    bp[i] = b[i] + eps * db[i];
    bm[i] = b[i] - eps * db[i];
  }
  nf.trace(ap, bp, 0.05, wp);
  nf.trace(am, bm, 0.05, wm);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(d[i], (wp[i] - wm[i]) / (2 * eps), 1e-8);
}

TEST(ApplyLh, ConstantStateWithoutSourceIsStationary) {
  const auto sp = space(7, 2);
  const auto bs = basis(2);
  const SGField u = project_initial(RandomField([](double, double, double xi) { return xi; }, 1),
                                    sp, bs, ProjectionMethod::RadauPlus);
  for (auto kind : {NumericalFlux::Kind::Upwind, NumericalFlux::Kind::LaxWendroff}) {
    const SGField r = apply_Lh(u, NumericalFlux(kind, FluxLaw::burgers(), bs, 0.01),
                               RandomField::zero(), 0.0);
    for (double v : r.data()) EXPECT_NEAR(v, 0.0, 1e-12);
  }
}

TEST(ApplyLh, ConstantSourceFillsMeanMode) {
  const auto sp = space(5, 2);
  const auto bs = basis(1);
  SGField u(sp, bs);
  const SGField r = apply_Lh(u, NumericalFlux(NumericalFlux::Kind::Upwind, FluxLaw::advection(2.0), bs),
                             RandomField([](double, double, double) { return 1.0; }, 0), 0.0);
  std::vector<double> modes(2);
  for (int k = 0; k < 5; ++k)
    for (double rr : {-0.7, 0.0, 0.9}) {
      r.evaluate_modes(k, rr, modes);
      EXPECT_NEAR(modes[0], 1.0, 1e-13);
      EXPECT_NEAR(modes[1], 0.0, 1e-13);
    }
}

TEST(ApplyLh, ConservesTheMeanMode) {
  const auto sp = space(9, 3);
  const auto bs = basis(2);
  const SGField u = random_field(sp, bs, 5);
  for (auto kind : {NumericalFlux::Kind::Upwind, NumericalFlux::Kind::LaxWendroff}) {
    const SGField r = apply_Lh(u, NumericalFlux(kind, FluxLaw::burgers(), bs, 0.01),
                               RandomField::zero(), 0.0);
    for (int n = 0; n < 3; ++n) {
      double total = 0.0;
      for (int k = 0; k < 9; ++k) total += r(k, 0, n) * std::sqrt(2.0) * 0.5 * sp->mesh().width(k);
      EXPECT_NEAR(total, 0.0, 1e-12);
    }
  }
}

TEST(ApplyLh, AdvectionDerivativeConvergesAtOrderPPlusOne) {
  const RandomField g([](double, double x, double) { return std::sin(2.0 * kPi * x); }, 0);
  const auto bs = basis(0);
  const NumericalFlux nf(NumericalFlux::Kind::Upwind, FluxLaw::advection(2.0), bs);
  const auto target = [](double x) { return -2.0 * 2.0 * kPi * std::cos(2.0 * kPi * x); };
  for (int p : {2, 3}) {
    std::vector<double> err;
    for (int M : {16, 32, 64}) {
      const SGField u = project_initial(g, space(M, p), bs, ProjectionMethod::RadauPlus);
      err.push_back(l2_mode_error(apply_Lh(u, nf, RandomField::zero(), 0.0), 0, target));
    }
    EXPECT_GE(std::log2(err[1] / err[2]), p + 0.5) << "p=" << p;
  }
}

TEST(Limiter, ModifiedMinmod) {
  EXPECT_DOUBLE_EQ(modified_minmod(5.0, 1.0, -1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(modified_minmod(5.0, 1.0, 2.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(modified_minmod(-5.0, -3.0, -4.0, 0.0), -3.0);
  EXPECT_DOUBLE_EQ(modified_minmod(0.5, 0.1, -0.1, 1.0), 0.5);
}

TEST(Limiter, OppositeNeighbourDifferencesFlattenTheSlope) {
  const auto sp = space(3, 1, 0.0, 3.0);
  const auto bs = basis(0);
  SGField u(sp, bs);
  const double phi0 = sp->phi_right(0), phi1 = sp->phi_right(1);
  u(1, 0, 0) = 1.0 / phi0;
  u(1, 1, 0) = 5.0 / phi1;
  const SGField v = apply_limiter(u, 0.0);
  EXPECT_EQ(v(1, 1, 0), 0.0);
  EXPECT_EQ(v(1, 0, 0), u(1, 0, 0));
}

TEST(Limiter, PreservesMeansAndIsIdempotent) {
  const auto sp = space(12, 3);
  const auto bs = basis(2);
  const SGField u = random_field(sp, bs, 9);
  for (double tvb : {0.0, 10.0}) {
    const SGField once = apply_limiter(u, tvb);
    const SGField twice = apply_limiter(once, tvb);
    for (int k = 0; k < 12; ++k)
      for (int n = 0; n < 3; ++n) EXPECT_EQ(once(k, 0, n), u(k, 0, n));
    for (std::size_t i = 0; i < once.data().size(); ++i)
      EXPECT_NEAR(twice.data()[i], once.data()[i], 1e-14);
  }
}

TEST(Limiter, LargeTvbConstantLeavesSmoothDataAlone) {
  const RandomField g([](double, double x, double xi) { return xi * std::sin(kPi * x); }, 1);
  const SGField u = project_initial(g, space(16, 2), basis(1), ProjectionMethod::RadauPlus);
  const SGField v = apply_limiter(u, 1e3);
  EXPECT_EQ(v.data(), u.data());
}

TEST(EvalField, OneSidedValuesAtVertices) {
  const auto sp = space(2, 1, 0.0, 2.0);
  SGField u(sp, basis(0));
  u(0, 0, 0) = std::sqrt(2.0);
  u(1, 0, 0) = 3.0 * std::sqrt(2.0);
  EXPECT_NEAR(eval_field(u, 1.0, 2.0, 0, Side::Left), 1.0, 1e-14);
  EXPECT_NEAR(eval_field(u, 1.0, 2.0, 0, Side::Right), 3.0, 1e-14);
  EXPECT_NEAR(eval_field(u, 2.5, 2.0), 1.0, 1e-14);
  EXPECT_THROW(eval_field(u, 0.5, 2.0, 2), std::invalid_argument);
}

}  // namespace
