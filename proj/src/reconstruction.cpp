#include "sgdg/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sgdg {

// ---------------------------------------------------------------- temporal

TemporalReconstruction::TemporalReconstruction(std::shared_ptr<const Trajectory> trajectory)
    : traj_(std::move(trajectory)) {
  if (!traj_ || traj_->states.empty())
    throw std::invalid_argument("TemporalReconstruction: empty trajectory");
  if (traj_->derivatives.size() != traj_->states.size())
    throw std::invalid_argument("TemporalReconstruction: trajectory is missing stored derivatives (" +
                                std::to_string(traj_->derivatives.size()) + " of " +
                                std::to_string(traj_->states.size()) + ")");
}

void TemporalReconstruction::evaluate(double t, SGField& value, SGField* rate) const {
  const Trajectory& tr = *traj_;
  if (tr.n_steps() == 0) {
    value = tr.states.front();
    if (rate != nullptr) *rate = tr.derivatives.front();
    return;
  }
  const int n = tr.interval_of(t);
  const double t0 = tr.times[n];
  const double len = tr.times[n + 1] - t0;
  const double s = (t - t0) / len;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const auto& u0 = tr.states[n].data();
  const auto& u1 = tr.states[n + 1].data();
  const auto& d0 = tr.derivatives[n].data();
  const auto& d1 = tr.derivatives[n + 1].data();
  auto& v = value.data();
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = h00 * u0[i] + len * h10 * d0[i] + h01 * u1[i] + len * h11 * d1[i];
  if (rate != nullptr) {
    const double g00 = (6 * s2 - 6 * s) / len, g10 = 3 * s2 - 4 * s + 1;
    const double g01 = (-6 * s2 + 6 * s) / len, g11 = 3 * s2 - 2 * s;
    auto& r = rate->data();
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = g00 * u0[i] + g10 * d0[i] + g01 * u1[i] + g11 * d1[i];
  }
}

SGField TemporalReconstruction::value(double t) const {
  SGField v = traj_->states.front();
  evaluate(t, v);
  return v;
}

// ---------------------------------------------------------------- lifted field

void LiftedField::evaluate_modes(int k, double r, std::span<double> v, std::span<double> dx,
                                 std::span<double> dt) const {
  const int nc = n_chaos();
  const double scale = 2.0 / space->mesh().width(k);
  std::fill(v.begin(), v.end(), 0.0);
  std::fill(dx.begin(), dx.end(), 0.0);
  std::fill(dt.begin(), dt.end(), 0.0);
  for (int m = 0; m < n_modes(); ++m) {
    const double phi = orthonormal_legendre(m, r);
    const double dphi = orthonormal_legendre_derivative(m, r) * scale;
    const double* c = &value[index(k, m, 0)];
    if (!v.empty())
      for (int n = 0; n < nc; ++n) v[n] += c[n] * phi;
    if (!dx.empty())
      for (int n = 0; n < nc; ++n) dx[n] += c[n] * dphi;
    if (!dt.empty()) {
      const double* cr = &rate[index(k, m, 0)];
      for (int n = 0; n < nc; ++n) dt[n] += cr[n] * phi;
    }
  }
}

// ---------------------------------------------------------------- lifting

LiftingOperator::LiftingOperator(int dg_degree) : p_(dg_degree) {
  if (dg_degree < 0) throw std::invalid_argument("LiftingOperator: degree must be >= 0");
  const int n = p_ + 2;
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int m = 0; m < p_; ++m) a[m * n + m] = 1.0;
  for (int m = 0; m < n; ++m) {
    a[p_ * n + m] = orthonormal_legendre(m, -1.0);
    a[(p_ + 1) * n + m] = orthonormal_legendre(m, 1.0);
  }
  // Gauss-Jordan with partial pivoting.
  inverse_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) inverse_[i * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-12)
      throw std::runtime_error("LiftingOperator: singular element system for p = " +
                               std::to_string(p_));
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a[piv * n + c], a[col * n + c]);
        std::swap(inverse_[piv * n + c], inverse_[col * n + c]);
      }
    const double d = a[col * n + col];
    for (int c = 0; c < n; ++c) {
      a[col * n + c] /= d;
      inverse_[col * n + c] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r * n + col];
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a[r * n + c] -= f * a[col * n + c];
        inverse_[r * n + c] -= f * inverse_[col * n + c];
      }
    }
  }
}

void LiftingOperator::apply(std::span<const double> interior, double left_value,
                            double right_value, std::span<double> out) const {
  const int n = p_ + 2;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int m = 0; m < p_; ++m) s += inverse_[i * n + m] * interior[m];
    s += inverse_[i * n + p_] * left_value + inverse_[i * n + p_ + 1] * right_value;
    out[i] = s;
  }
}

namespace {

const LiftingOperator& lifting_for(int p) {
  // Small cache; degrees beyond it are built on demand.
  static const std::vector<LiftingOperator> cache = [] {
    std::vector<LiftingOperator> ops;
    for (int d = 0; d <= 8; ++d) ops.emplace_back(d);
    return ops;
  }();
  if (p < static_cast<int>(cache.size())) return cache[p];
  thread_local std::vector<std::unique_ptr<LiftingOperator>> extra;
  for (const auto& op : extra)
    if (op->dg_degree() == p) return *op;
  extra.push_back(std::make_unique<LiftingOperator>(p));
  return *extra.back();
}

}  // namespace

LiftedField spatial_reconstruct(const SGField& ut, const NumericalFlux& flux,
                                const SGField* ut_rate) {
  const DGSpace& sp = ut.space();
  const Mesh1D& mesh = sp.mesh();
  const int n_el = mesh.n_elements();
  const int p = sp.degree();
  const int nc = ut.n_chaos();
  const LiftingOperator& lift = lifting_for(p);

  LiftedField out;
  out.space = ut.space_ptr();
  out.basis = ut.basis_ptr();
  out.degree = p + 1;
  out.value.assign(static_cast<std::size_t>(n_el) * (p + 2) * nc, 0.0);
  if (ut_rate != nullptr) out.rate.assign(out.value.size(), 0.0);

  // Interface values at vertex k, k = 0..M-1 (vertex M is vertex 0).
  std::vector<double> w(static_cast<std::size_t>(n_el) * nc), dw;
  if (ut_rate != nullptr) dw.resize(w.size());
  std::vector<double> um(nc), up(nc), dum(nc), dup(nc);
  for (int k = 0; k < n_el; ++k) {
    const int kl = (k - 1 + n_el) % n_el;
    const double h = mesh.interface_width(k);
    ut.trace(kl, Side::Right, um);
    ut.trace(k, Side::Left, up);
    flux.trace(um, up, h, std::span<double>(&w[k * nc], nc));
    if (ut_rate != nullptr) {
      ut_rate->trace(kl, Side::Right, dum);
      ut_rate->trace(k, Side::Left, dup);
      flux.trace_derivative(um, up, dum, dup, h, std::span<double>(&dw[k * nc], nc));
    }
  }

  std::vector<double> interior(std::max(p, 1)), coeffs(p + 2);
  for (int k = 0; k < n_el; ++k) {
    const int kr = (k + 1) % n_el;
    for (int n = 0; n < nc; ++n) {
      for (int m = 0; m < p; ++m) interior[m] = ut(k, m, n);
      lift.apply(interior, w[k * nc + n], w[kr * nc + n], coeffs);
      for (int m = 0; m < p + 2; ++m) out.value[out.index(k, m, n)] = coeffs[m];
      if (ut_rate != nullptr) {
        for (int m = 0; m < p; ++m) interior[m] = (*ut_rate)(k, m, n);
        lift.apply(interior, dw[k * nc + n], dw[kr * nc + n], coeffs);
        for (int m = 0; m < p + 2; ++m) out.rate[out.index(k, m, n)] = coeffs[m];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- space-time

SpaceTimeReconstruction::SpaceTimeReconstruction(std::shared_ptr<const Trajectory> trajectory,
                                                 double requested_start)
    : temporal_(std::move(trajectory)), start_node_(0) {
  start_node_ = temporal_.trajectory().nearest_node(requested_start);
}

double SpaceTimeReconstruction::flux_time_step(double t) const {
  const Trajectory& tr = trajectory();
  return tr.step_sizes[tr.interval_of(t)];
}

LiftedField SpaceTimeReconstruction::at(double t) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(end_time()));
  if (t < start_time() - tol || t > end_time() + tol) {
    throw std::out_of_range("SpaceTimeReconstruction: t = " + std::to_string(t) +
                            " outside the reconstructed range [" + std::to_string(start_time()) +
                            ", " + std::to_string(end_time()) + "]");
  }
  SGField value = trajectory().states.front();
  SGField rate = value;
  temporal_.evaluate(t, value, &rate);
  const NumericalFlux flux = trajectory().flux.with_time_step(flux_time_step(t));
  return spatial_reconstruct(value, flux, &rate);
}

double SpaceTimeReconstruction::eval_sts(double t, double x, double xi, Quantity which,
                                         Side side) const {
  const LiftedField f = at(t);
  const DGSpace& sp = *f.space;
  const Mesh1D& mesh = sp.mesh();
  const double y = mesh.wrap(x);
  int k = mesh.locate(y, false);
  double r = sp.to_reference(k, y);
  if (side == Side::Left && y == mesh.vertex(k)) {
    k = (k - 1 + mesh.n_elements()) % mesh.n_elements();
    r = 1.0;
  }
  const int nc = f.n_chaos();
  std::vector<double> modes(nc);
  std::span<double> none;
  switch (which) {
    case Quantity::Value: f.evaluate_modes(k, r, modes, none, none); break;
    case Quantity::SpaceDerivative: f.evaluate_modes(k, r, none, modes, none); break;
    case Quantity::TimeDerivative: f.evaluate_modes(k, r, none, none, modes); break;
  }
  double s = 0.0;
  for (int n = 0; n < nc; ++n) s += modes[n] * f.basis->eval(n, xi);
  return s;
}

SampledExtrema sample_extrema(const LiftedField& field, int n_x_samples, int n_xi_samples) {
  if (n_x_samples < 1 || n_xi_samples < 1)
    throw std::invalid_argument("sample_extrema: sample counts must be >= 1");
  const StochasticBasis& basis = *field.basis;
  const UniformDistribution& dist = basis.distribution();
  const int nc = field.n_chaos();
  std::vector<double> psi((n_xi_samples + 1) * nc);
  for (int i = 0; i <= n_xi_samples; ++i) {
    const double xi = dist.lower + (dist.upper - dist.lower) * i / n_xi_samples;
    for (int n = 0; n < nc; ++n) psi[i * nc + n] = sgdg::psi(dist, n, xi);
  }
  SampledExtrema ext;
  ext.min_value = std::numeric_limits<double>::infinity();
  ext.max_value = -std::numeric_limits<double>::infinity();
  std::vector<double> v(nc), dx(nc);
  std::span<double> none;
  const int n_el = field.space->mesh().n_elements();
  for (int k = 0; k < n_el; ++k)
    for (int ix = 0; ix <= n_x_samples; ++ix) {
      const double r = -1.0 + 2.0 * ix / n_x_samples;
      field.evaluate_modes(k, r, v, dx, none);
      for (int i = 0; i <= n_xi_samples; ++i) {
        const double* ps = &psi[i * nc];
        double val = 0.0, der = 0.0;
        for (int n = 0; n < nc; ++n) {
          val += v[n] * ps[n];
          der += dx[n] * ps[n];
        }
        ext.min_value = std::min(ext.min_value, val);
        ext.max_value = std::max(ext.max_value, val);
        ext.max_abs_dx = std::max(ext.max_abs_dx, std::abs(der));
      }
    }
  return ext;
}

double lipschitz_bound_dx(const SpaceTimeReconstruction& rec, double t, int n_x_samples,
                          int n_xi_samples) {
  return sample_extrema(rec.at(t), n_x_samples, n_xi_samples).max_abs_dx;
}

}  // namespace sgdg
