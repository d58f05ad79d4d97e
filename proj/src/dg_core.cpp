#include "sgdg/dg_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sgdg {

// ---------------------------------------------------------------- Mesh1D

Mesh1D::Mesh1D(std::vector<double> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw std::invalid_argument("Mesh1D: need at least one element");
  double h_min = vertices_[1] - vertices_[0];
  double h_max = h_min;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const double h = vertices_[i] - vertices_[i - 1];
    if (!(h > 0.0)) throw std::invalid_argument("Mesh1D: vertices must be strictly increasing");
    h_min = std::min(h_min, h);
    h_max = std::max(h_max, h);
  }
  quasi_uniformity_ = h_max / h_min;
}

Mesh1D Mesh1D::uniform(double left, double right, int n_elements) {
  if (n_elements < 1) throw std::invalid_argument("Mesh1D::uniform: n_elements must be >= 1");
  std::vector<double> v(n_elements + 1);
  for (int k = 0; k <= n_elements; ++k) v[k] = left + (right - left) * k / n_elements;
  v.back() = right;
  return Mesh1D(std::move(v));
}

double Mesh1D::interface_width(int k) const {
  const int m = n_elements();
  const double h_left = width((k - 1 + m) % m);
  const double h_right = width(k % m);
  return 2.0 * h_left * h_right / (h_left + h_right);
}

double Mesh1D::wrap(double x) const {
  const double l = length();
  double y = std::fmod(x - left(), l);
  if (y < 0.0) y += l;
  if (y >= l) y -= l;
  return left() + y;
}

int Mesh1D::locate(double x, bool from_left) const {
  const double y = wrap(x);
  const int m = n_elements();
  auto it = std::upper_bound(vertices_.begin(), vertices_.end(), y);
  int k = static_cast<int>(it - vertices_.begin()) - 1;
  k = std::clamp(k, 0, m - 1);
  if (from_left && y == vertices_[k]) k = (k - 1 + m) % m;
  return k;
}

// ---------------------------------------------------------------- DGSpace

DGSpace::DGSpace(Mesh1D mesh, int degree, int n_quadrature)
    : mesh_(std::move(mesh)), degree_(degree), quad_(gauss_legendre(n_quadrature)) {
  if (degree < 0) throw std::invalid_argument("DGSpace: degree must be >= 0");
  const int nd = degree_ + 1;
  phi_.resize(static_cast<std::size_t>(quad_.size()) * nd);
  dphi_.resize(phi_.size());
  for (int q = 0; q < quad_.size(); ++q)
    for (int m = 0; m < nd; ++m) {
      phi_[q * nd + m] = orthonormal_legendre(m, quad_.nodes[q]);
      dphi_[q * nd + m] = orthonormal_legendre_derivative(m, quad_.nodes[q]);
    }
  phi_left_.resize(nd);
  phi_right_.resize(nd);
  for (int m = 0; m < nd; ++m) {
    phi_left_[m] = orthonormal_legendre(m, -1.0);
    phi_right_[m] = orthonormal_legendre(m, 1.0);
  }
}

double DGSpace::to_reference(int k, double x) const {
  return 2.0 * (x - mesh_.vertex(k)) / mesh_.width(k) - 1.0;
}

double DGSpace::to_physical(int k, double r) const {
  return mesh_.vertex(k) + 0.5 * (r + 1.0) * mesh_.width(k);
}

std::vector<double> DGSpace::quadrature_points() const {
  std::vector<double> x(static_cast<std::size_t>(mesh_.n_elements()) * quad_.size());
  for (int k = 0; k < mesh_.n_elements(); ++k)
    for (int q = 0; q < quad_.size(); ++q) x[k * quad_.size() + q] = to_physical(k, quad_.nodes[q]);
  return x;
}

// ---------------------------------------------------------------- SGField

SGField::SGField(std::shared_ptr<const DGSpace> space, std::shared_ptr<const StochasticBasis> basis)
    : space_(std::move(space)),
      basis_(std::move(basis)),
      n_elements_(space_->mesh().n_elements()),
      n_dg_(space_->n_dofs_per_element()),
      n_chaos_(basis_->size()),
      data_(static_cast<std::size_t>(n_elements_) * n_dg_ * n_chaos_, 0.0) {}

void SGField::evaluate_modes(int k, double r, std::span<double> out) const {
  std::fill(out.begin(), out.begin() + n_chaos_, 0.0);
  for (int m = 0; m < n_dg_; ++m) {
    const double phi = orthonormal_legendre(m, r);
    for (int n = 0; n < n_chaos_; ++n) out[n] += (*this)(k, m, n) * phi;
  }
}

void SGField::trace(int k, Side side, std::span<double> out) const {
  std::fill(out.begin(), out.begin() + n_chaos_, 0.0);
  for (int m = 0; m < n_dg_; ++m) {
    const double phi = side == Side::Left ? space_->phi_left(m) : space_->phi_right(m);
    for (int n = 0; n < n_chaos_; ++n) out[n] += (*this)(k, m, n) * phi;
  }
}

bool SGField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void SGField::axpy(double a, const SGField& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * other.data_[i];
}

void SGField::scale(double a) {
  for (double& v : data_) v *= a;
}

void SGField::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

// ---------------------------------------------------------------- NumericalFlux

NumericalFlux::NumericalFlux(Kind kind, FluxLaw flux, std::shared_ptr<const StochasticBasis> basis,
                             double dt)
    : kind_(kind), flux_(flux), basis_(std::move(basis)), dt_(dt) {}

NumericalFlux NumericalFlux::with_time_step(double dt) const {
  NumericalFlux copy = *this;
  copy.dt_ = dt;
  return copy;
}

void NumericalFlux::trace(std::span<const double> u_minus, std::span<const double> u_plus,
                          double h, std::span<double> out) const {
  const int n = basis_->size();
  if (kind_ == Kind::Upwind) {
    std::copy(u_minus.begin(), u_minus.begin() + n, out.begin());
    return;
  }
  std::vector<double> fm(n), fp(n);
  sg_flux(flux_, *basis_, u_minus, fm);
  sg_flux(flux_, *basis_, u_plus, fp);
  const double lambda = dt_ / (2.0 * h);
  for (int i = 0; i < n; ++i) out[i] = 0.5 * (u_minus[i] + u_plus[i]) - lambda * (fp[i] - fm[i]);
}

void NumericalFlux::trace_derivative(std::span<const double> u_minus,
                                     std::span<const double> u_plus,
                                     std::span<const double> du_minus,
                                     std::span<const double> du_plus, double h,
                                     std::span<double> out) const {
  const int n = basis_->size();
  if (kind_ == Kind::Upwind) {
    std::copy(du_minus.begin(), du_minus.begin() + n, out.begin());
    return;
  }
  std::vector<double> jm(n), jp(n);
  sg_flux_jacobian_apply(flux_, *basis_, u_minus, du_minus, jm);
  sg_flux_jacobian_apply(flux_, *basis_, u_plus, du_plus, jp);
  const double lambda = dt_ / (2.0 * h);
  for (int i = 0; i < n; ++i) out[i] = 0.5 * (du_minus[i] + du_plus[i]) - lambda * (jp[i] - jm[i]);
}

void NumericalFlux::flux(std::span<const double> u_minus, std::span<const double> u_plus,
                         double h, std::span<double> out) const {
  std::vector<double> w(basis_->size());
  trace(u_minus, u_plus, h, w);
  sg_flux(flux_, *basis_, w, out);
}

NumericalFlux::Kind parse_numerical_flux(const std::string& name) {
  if (name == "upwind") return NumericalFlux::Kind::Upwind;
  if (name == "lax_wendroff" || name == "lax-wendroff" || name == "laxwendroff")
    return NumericalFlux::Kind::LaxWendroff;
  throw std::invalid_argument("unknown numerical flux '" + name + "' (expected upwind|lax_wendroff)");
}

std::string to_string(NumericalFlux::Kind kind) {
  return kind == NumericalFlux::Kind::Upwind ? "upwind" : "lax_wendroff";
}

ProjectionMethod parse_projection_method(const std::string& name) {
  if (name == "radau" || name == "radau_plus") return ProjectionMethod::RadauPlus;
  if (name == "gauss_legendre" || name == "gl_interp" || name == "gauss_legendre_interp")
    return ProjectionMethod::GaussLegendreInterp;
  throw std::invalid_argument("unknown projection method '" + name +
                              "' (expected radau|gauss_legendre)");
}

std::string to_string(ProjectionMethod method) {
  return method == ProjectionMethod::RadauPlus ? "radau" : "gauss_legendre";
}

// ---------------------------------------------------------------- projections

namespace {

SGField project_radau(const RandomField& u0, std::shared_ptr<const DGSpace> space,
                      std::shared_ptr<const StochasticBasis> basis, double t) {
  SGField out(space, basis);
  const DGSpace& sp = *space;
  const int n_el = sp.mesh().n_elements();
  const int nq = sp.quadrature().size();
  const int p = sp.degree();
  const int nc = basis->size();
  // Quadrature nodes plus the right endpoint of every element.
  const int stride = nq + 1;
  std::vector<double> xs(static_cast<std::size_t>(n_el) * stride);
  for (int k = 0; k < n_el; ++k) {
    for (int q = 0; q < nq; ++q) xs[k * stride + q] = sp.to_physical(k, sp.quadrature().nodes[q]);
    xs[k * stride + nq] = sp.mesh().vertex(k + 1);
  }
  std::vector<double> modes(xs.size() * nc);
  project_source_grid(u0, *basis, t, xs, nc, modes);
  for (int k = 0; k < n_el; ++k) {
    for (int n = 0; n < nc; ++n) {
      // L2 moments against P_{p-1}.
      for (int m = 0; m < p; ++m) {
        double s = 0.0;
        for (int q = 0; q < nq; ++q)
          s += sp.quadrature().weights[q] * modes[(k * stride + q) * nc + n] * sp.phi(q, m);
        out(k, m, n) = s;
      }
      // Right-trace match fixes the top mode.
      double right = modes[(k * stride + nq) * nc + n];
      for (int m = 0; m < p; ++m) right -= out(k, m, n) * sp.phi_right(m);
      out(k, p, n) = right / sp.phi_right(p);
    }
  }
  return out;
}

SGField project_gauss_legendre(const RandomField& u0, std::shared_ptr<const DGSpace> space,
                               std::shared_ptr<const StochasticBasis> basis, double t) {
  SGField out(space, basis);
  const DGSpace& sp = *space;
  const int n_el = sp.mesh().n_elements();
  const int p = sp.degree();
  const int nc = basis->size();
  const QuadratureRule gl = gauss_legendre(p + 1);
  std::vector<double> xs(static_cast<std::size_t>(n_el) * (p + 1));
  for (int k = 0; k < n_el; ++k)
    for (int i = 0; i <= p; ++i) xs[k * (p + 1) + i] = sp.to_physical(k, gl.nodes[i]);
  std::vector<double> modes(xs.size() * nc);
  project_source_grid(u0, *basis, t, xs, nc, modes);
  // The (p+1)-point Gauss rule is exact for the degree-2p products, so the
  // discrete moments are the coefficients of the nodal interpolant.
  for (int k = 0; k < n_el; ++k)
    for (int m = 0; m <= p; ++m)
      for (int n = 0; n < nc; ++n) {
        double s = 0.0;
        for (int i = 0; i <= p; ++i)
          s += gl.weights[i] * modes[(k * (p + 1) + i) * nc + n] * orthonormal_legendre(m, gl.nodes[i]);
        out(k, m, n) = s;
      }
  return out;
}

}  // namespace

SGField project_initial(const RandomField& u0, std::shared_ptr<const DGSpace> space,
                        std::shared_ptr<const StochasticBasis> basis, ProjectionMethod method,
                        double t) {
  switch (method) {
    case ProjectionMethod::RadauPlus:
      return project_radau(u0, std::move(space), std::move(basis), t);
    case ProjectionMethod::GaussLegendreInterp:
      return project_gauss_legendre(u0, std::move(space), std::move(basis), t);
  }
  throw std::invalid_argument("project_initial: unknown projection method");
}

// ---------------------------------------------------------------- L_h

SGField apply_Lh(const SGField& u, const NumericalFlux& flux, const RandomField& source, double t) {
  const DGSpace& sp = u.space();
  const StochasticBasis& basis = u.basis();
  const Mesh1D& mesh = sp.mesh();
  const int n_el = mesh.n_elements();
  const int nd = sp.n_dofs_per_element();
  const int nc = basis.size();
  const int nq = sp.quadrature().size();
  const FluxLaw& law = flux.flux_law();

  // G at vertex k (vertex M is vertex 0).
  std::vector<double> g(static_cast<std::size_t>(n_el) * nc);
  std::vector<double> um(nc), up(nc);
  for (int k = 0; k < n_el; ++k) {
    u.trace((k - 1 + n_el) % n_el, Side::Right, um);
    u.trace(k, Side::Left, up);
    flux.flux(um, up, mesh.interface_width(k), std::span<double>(&g[k * nc], nc));
  }

  std::vector<double> src;
  if (!source.is_zero()) {
    src.resize(static_cast<std::size_t>(n_el) * nq * nc);
    project_source_grid(source, basis, t, sp.quadrature_points(), nc, src);
  }

  SGField out(u.space_ptr(), u.basis_ptr());
  std::vector<double> uq(nc), fq(nc), acc(static_cast<std::size_t>(nd) * nc);
  const auto& w = sp.quadrature().weights;
  for (int k = 0; k < n_el; ++k) {
    const double h = mesh.width(k);
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int q = 0; q < nq; ++q) {
      std::fill(uq.begin(), uq.end(), 0.0);
      for (int m = 0; m < nd; ++m) {
        const double phi = sp.phi(q, m);
        for (int n = 0; n < nc; ++n) uq[n] += u(k, m, n) * phi;
      }
      sg_flux(law, basis, uq, fq);
      const double* s = src.empty() ? nullptr : &src[(static_cast<std::size_t>(k) * nq + q) * nc];
      for (int m = 0; m < nd; ++m) {
        const double wd = w[q] * sp.dphi(q, m);
        const double ws = 0.5 * h * w[q] * sp.phi(q, m);
        double* a = &acc[m * nc];
        for (int n = 0; n < nc; ++n) a[n] += wd * fq[n];
        if (s != nullptr)
          for (int n = 0; n < nc; ++n) a[n] += ws * s[n];
      }
    }
    const double* g_left = &g[k * nc];
    const double* g_right = &g[((k + 1) % n_el) * nc];
    const double inv_mass = 2.0 / h;
    for (int m = 0; m < nd; ++m)
      for (int n = 0; n < nc; ++n)
        out(k, m, n) = inv_mass * (acc[m * nc + n] - g_right[n] * sp.phi_right(m) +
                                   g_left[n] * sp.phi_left(m));
  }
  return out;
}

// ---------------------------------------------------------------- limiter

double modified_minmod(double a1, double a2, double a3, double threshold) {
  if (std::abs(a1) <= threshold) return a1;
  if (a1 > 0.0 && a2 > 0.0 && a3 > 0.0) return std::min({a1, a2, a3});
  if (a1 < 0.0 && a2 < 0.0 && a3 < 0.0) return std::max({a1, a2, a3});
  return 0.0;
}

SGField apply_limiter(const SGField& u, double tvb_constant) {
  SGField out = u;
  const DGSpace& sp = u.space();
  if (sp.degree() < 1) return out;
  const Mesh1D& mesh = sp.mesh();
  const int n_el = mesh.n_elements();
  const int nd = sp.n_dofs_per_element();
  const double phi0 = sp.phi_right(0);   // 1/sqrt(2)
  const double phi1 = sp.phi_right(1);   // sqrt(3/2)
  for (int n = 0; n < u.n_chaos(); ++n) {
    for (int k = 0; k < n_el; ++k) {
      const int kl = (k - 1 + n_el) % n_el;
      const int kr = (k + 1) % n_el;
      const double mean = u(k, 0, n) * phi0;
      const double forward = u(kr, 0, n) * phi0 - mean;
      const double backward = mean - u(kl, 0, n) * phi0;
      // Deviation of the linear part at the right end from the mean.
      const double slope = u(k, 1, n) * phi1;
      const double h = mesh.width(k);
      const double limited = modified_minmod(slope, forward, backward, tvb_constant * h * h);
      if (limited != slope) {
        out(k, 1, n) = limited / phi1;
        for (int m = 2; m < nd; ++m) out(k, m, n) = 0.0;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- point evaluation

double eval_field(const SGField& u, double x, double xi, int derivative_order, Side side) {
  if (derivative_order != 0 && derivative_order != 1)
    throw std::invalid_argument("eval_field: derivative_order must be 0 or 1");
  const DGSpace& sp = u.space();
  const Mesh1D& mesh = sp.mesh();
  const double y = mesh.wrap(x);
  int k = mesh.locate(y, false);
  double r = sp.to_reference(k, y);
  if (side == Side::Left && y == mesh.vertex(k)) {
    k = (k - 1 + mesh.n_elements()) % mesh.n_elements();
    r = 1.0;
  }
  const double scale = derivative_order == 1 ? 2.0 / mesh.width(k) : 1.0;
  double value = 0.0;
  for (int n = 0; n < u.n_chaos(); ++n) {
    double mode = 0.0;
    for (int m = 0; m < u.n_dg(); ++m) {
      const double phi = derivative_order == 0 ? orthonormal_legendre(m, r)
                                               : orthonormal_legendre_derivative(m, r);
      mode += u(k, m, n) * phi;
    }
    value += mode * scale * u.basis().eval(n, xi);
  }
  return value;
}

}  // namespace sgdg
