#include "sgdg/sg_assembly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sgdg {

std::string FluxLaw::name() const {
  return kind_ == Kind::Burgers ? "burgers" : "advection";
}

RandomField::RandomField(PointFn fn, std::optional<int> polynomial_degree_in_xi)
    : fn_(std::move(fn)), degree_(polynomial_degree_in_xi) {}

RandomField& RandomField::with_grid(GridFn grid) {
  grid_ = std::move(grid);
  return *this;
}

void RandomField::evaluate_grid(double t, std::span<const double> x, std::span<const double> xi,
                                std::span<double> out) const {
  if (out.size() < x.size() * xi.size()) {
    throw std::invalid_argument("RandomField::evaluate_grid: output buffer too small");
  }
  if (!fn_) {
    std::fill(out.begin(), out.begin() + x.size() * xi.size(), 0.0);
    return;
  }
  if (grid_) {
    grid_(t, x, xi, out);
    return;
  }
  for (std::size_t ix = 0; ix < x.size(); ++ix)
    for (std::size_t iq = 0; iq < xi.size(); ++iq) out[ix * xi.size() + iq] = fn_(t, x[ix], xi[iq]);
}

void sg_flux(const FluxLaw& flux, const StochasticBasis& basis, std::span<const double> u,
             std::span<double> out) {
  const int n_modes = basis.size();
  if (flux.kind() == FluxLaw::Kind::LinearAdvection) {
    for (int i = 0; i < n_modes; ++i) out[i] = flux.speed() * u[i];
    return;
  }
  // Burgers: out_k = 1/2 u^T C_k u.
  for (int k = 0; k < n_modes; ++k) {
    double s = 0.0;
    for (const TripleEntry& e : basis.triple_entries(k)) {
      s += e.i == e.j ? 0.5 * e.value * u[e.i] * u[e.i] : e.value * u[e.i] * u[e.j];
    }
    out[k] = s;
  }
}

std::vector<double> sg_flux(const FluxLaw& flux, const StochasticBasis& basis,
                            std::span<const double> u) {
  if (static_cast<int>(u.size()) != basis.size()) {
    throw std::invalid_argument("sg_flux: expected " + std::to_string(basis.size()) +
                                " modes, got " + std::to_string(u.size()));
  }
  std::vector<double> out(basis.size());
  sg_flux(flux, basis, u, out);
  return out;
}

void sg_flux_jacobian_apply(const FluxLaw& flux, const StochasticBasis& basis,
                            std::span<const double> u, std::span<const double> v,
                            std::span<double> out) {
  const int n_modes = basis.size();
  if (flux.kind() == FluxLaw::Kind::LinearAdvection) {
    for (int i = 0; i < n_modes; ++i) out[i] = flux.speed() * v[i];
    return;
  }
  for (int k = 0; k < n_modes; ++k) {
    double s = 0.0;
    for (const TripleEntry& e : basis.triple_entries(k)) {
      s += e.i == e.j ? e.value * u[e.i] * v[e.i]
                      : e.value * (u[e.i] * v[e.j] + u[e.j] * v[e.i]);
    }
    out[k] = s;
  }
}

std::vector<double> sg_flux_jacobian(const FluxLaw& flux, const StochasticBasis& basis,
                                     std::span<const double> u) {
  const int n = basis.size();
  std::vector<double> jac(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      if (flux.kind() == FluxLaw::Kind::LinearAdvection) {
        jac[k * n + j] = k == j ? flux.speed() : 0.0;
        continue;
      }
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += basis.triple(k, i, j) * u[i];
      jac[k * n + j] = s;
    }
  return jac;
}

double sg_flux_exact_mode(const FluxLaw& flux, const StochasticBasis& basis,
                          std::span<const double> u, int l) {
  const int n_deg = basis.max_degree();
  if (l < 0) throw std::out_of_range("sg_flux_exact_mode: negative mode");
  if (flux.kind() == FluxLaw::Kind::LinearAdvection) {
    return l <= n_deg ? flux.speed() * u[l] : 0.0;
  }
  if (l > 2 * n_deg) return 0.0;
  double s = 0.0;
  for (const TripleEntry& e : basis.triple_entries(l)) {
    s += e.i == e.j ? 0.5 * e.value * u[e.i] * u[e.i] : e.value * u[e.i] * u[e.j];
  }
  return s;
}

double sg_flux_divergence_tail_mode(const FluxLaw& flux, const StochasticBasis& basis,
                                    std::span<const double> u, std::span<const double> du,
                                    int l) {
  if (flux.kind() == FluxLaw::Kind::LinearAdvection) {
    return l <= basis.max_degree() ? flux.speed() * du[l] : 0.0;
  }
  if (l > 2 * basis.max_degree()) return 0.0;
  double s = 0.0;
  for (const TripleEntry& e : basis.triple_entries(l)) {
    s += e.i == e.j ? e.value * u[e.i] * du[e.i] : e.value * (u[e.i] * du[e.j] + u[e.j] * du[e.i]);
  }
  return s;
}

double project_source(const RandomField& source, const StochasticBasis& basis, double t,
                      double x, int l) {
  if (l < 0 || l > 2 * basis.max_degree()) {
    throw std::out_of_range("project_source: mode " + std::to_string(l) + " outside [0, 2N] = [0, " +
                            std::to_string(2 * basis.max_degree()) + "]");
  }
  if (source.is_zero()) return 0.0;
  const StochasticQuadrature& q = basis.quadrature();
  double s = 0.0;
  for (int i = 0; i < q.size(); ++i)
    s += q.weights[i] * source(t, x, q.nodes[i]) * basis.psi_at_node(l, i);
  return s;
}

void project_source_grid(const RandomField& source, const StochasticBasis& basis, double t,
                         std::span<const double> x, int n_modes, std::span<double> out) {
  if (n_modes > 2 * basis.max_degree() + 1) {
    throw std::out_of_range("project_source_grid: at most 2N+1 modes available");
  }
  const std::size_t nx = x.size();
  std::fill(out.begin(), out.begin() + nx * n_modes, 0.0);
  if (source.is_zero()) return;
  const StochasticQuadrature& q = basis.quadrature();
  const std::size_t nq = q.size();
  std::vector<double> values(nx * nq);
  source.evaluate_grid(t, x, q.nodes, values);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    double* o = &out[ix * n_modes];
    const double* v = &values[ix * nq];
    for (std::size_t iq = 0; iq < nq; ++iq) {
      const double wv = q.weights[iq] * v[iq];
      for (int l = 0; l < n_modes; ++l) o[l] += wv * basis.psi_at_node(l, static_cast<int>(iq));
    }
  }
}

}  // namespace sgdg
