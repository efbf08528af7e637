#include "nilquant/coherent.hpp"

#include "nilquant/parallel.hpp"

#include <cmath>

namespace nilquant {

Window Window::gaussian(int n, double sigma, const Vec& center, const Grid& norm_grid) {
  if (!(sigma > 0.0)) throw std::invalid_argument("Window: sigma must be positive");
  require_dim(center, n, "Window::gaussian");
  const double pre = std::pow(kPi, -0.25 * n) * std::pow(sigma, -0.5 * n);
  const double a = 0.5 / (sigma * sigma);
  Field raw = Field::analytic(Domain::Group, n, [pre, a, center](const Vec& x) {
    return Complex(pre * std::exp(-a * (x - center).squaredNorm()), 0.0);
  });
  Window w = from_field(raw, norm_grid);
  w.sigma_ = sigma;
  w.center_ = center;
  return w;
}

Window Window::gaussian(const Grid& norm_grid, double sigma) {
  return gaussian(norm_grid.dim(), sigma, Vec::Zero(norm_grid.dim()), norm_grid);
}

Window Window::from_field(const Field& f, const Grid& norm_grid) {
  if (f.domain() != Domain::Group) throw std::invalid_argument("Window: field must live on G");
  const double norm = l2_norm(f.sample(norm_grid), norm_grid.cell_volume());
  if (!(norm > 0.0)) throw std::invalid_argument("Window: zero window on the normalization grid");
  Window w;
  w.field_ = f.scaled(1.0 / norm);
  w.center_ = Vec::Zero(f.dim());
  return w;
}

Window Window::with_phase(const Field& phase) const {
  Window w = *this;
  const Field base = field_;
  w.field_ = Field::analytic(Domain::Group, dim(), [base, phase](const Vec& x) { return phase(x) * base(x); });
  w.sigma_ = 0.0;
  return w;
}

Field weyl(const Lie& L, const PhasePoint& p, const Field& u) {
  require_dim(p.z, L.dim(), "weyl");
  Field out = Field::analytic(Domain::Group, u.dim(), [L, p, u](const Vec& x) {
    return expi(x.dot(p.zeta)) * u(bch<double>(L, -p.z, x));
  });
  return out.mark_approximate(u.approximate() || !u.is_analytic());
}

Field weyl_adjoint(const Lie& L, const PhasePoint& p, const Field& u) {
  require_dim(p.z, L.dim(), "weyl_adjoint");
  Field out = Field::analytic(Domain::Group, u.dim(), [L, p, u](const Vec& y) {
    const Vec zy = bch<double>(L, p.z, y);
    return expi(-zy.dot(p.zeta)) * u(zy);
  });
  return out.mark_approximate(u.approximate() || !u.is_analytic());
}

Complex weyl_compose_factor(const Lie& L, const PhasePoint& p, const PhasePoint& q, const Vec& x) {
  return expi(-(x - bch<double>(L, -p.z, x)).dot(q.zeta));
}

CVector factored_wigner(const WignerIntegrand& g, const XiGrid& xi, const Grid& quad) {
  if (quad.dim() != xi.dim()) throw std::invalid_argument("fourier_wigner: quadrature grid dimension mismatch");
  const ExpTransform T(quad, xi.dual_grid, +1);
  const std::size_t nz = xi.g_grid.size(), nd = xi.dual_grid.size(), ny = quad.size();
  const std::vector<Vec> ys = quad.nodes();
  CVector out(static_cast<Eigen::Index>(nz * nd));
  parallel_for(nz, [&](std::size_t iz) {
    const Vec z = xi.g_grid.node(iz);
    CVector row(static_cast<Eigen::Index>(ny));
    for (std::size_t j = 0; j < ny; ++j) row(static_cast<Eigen::Index>(j)) = g(z, j, ys[j]);
    out.segment(static_cast<Eigen::Index>(iz * nd), static_cast<Eigen::Index>(nd)) = T(row);
  });
  return out;
}

Field fourier_wigner(const Lie& L, const Field& u, const Field& v, const XiGrid& xi, const Grid& quad) {
  const CVector vbar = v.sample(quad).conjugate();
  const CVector out = factored_wigner(
      [&](const Vec& z, std::size_t iy, const Vec& y) {
        const Complex vb = vbar(static_cast<Eigen::Index>(iy));
        if (vb == 0.0) return Complex(0.0, 0.0);
        return u(bch<double>(L, -z, y)) * vb;
      },
      xi, quad);
  Field f = Field::gridded(xi, out);
  return f.mark_approximate(u.approximate() || v.approximate());
}

Field fourier_wigner(const Lie& L, const Field& u, const Field& v, const XiGrid& xi) {
  return fourier_wigner(L, u, v, xi, xi.g_grid);
}

Field fourier_wigner_direct(const Lie& L, const Field& u, const Field& v, const XiGrid& xi, const Grid& quad) {
  const std::size_t nz = xi.g_grid.size(), nd = xi.dual_grid.size(), ny = quad.size();
  const std::vector<Vec> ys = quad.nodes();
  const CVector vbar = v.sample(quad).conjugate();
  CVector out(static_cast<Eigen::Index>(nz * nd));
  parallel_for(nz, [&](std::size_t iz) {
    const Vec z = xi.g_grid.node(iz);
    CVector g(static_cast<Eigen::Index>(ny));
    for (std::size_t j = 0; j < ny; ++j)
      g(static_cast<Eigen::Index>(j)) = u(bch<double>(L, -z, ys[j])) * vbar(static_cast<Eigen::Index>(j));
    CVector terms(static_cast<Eigen::Index>(ny));
    for (std::size_t id = 0; id < nd; ++id) {
      const DualVec zeta = xi.dual_grid.node(id);
      for (std::size_t j = 0; j < ny; ++j)
        terms(static_cast<Eigen::Index>(j)) = expi(ys[j].dot(zeta)) * g(static_cast<Eigen::Index>(j));
      out(static_cast<Eigen::Index>(iz * nd + id)) = integrate_samples(terms, quad.cell_volume());
    }
  });
  return Field::gridded(xi, out);
}

Complex fourier_wigner_at(const Lie& L, const Field& u, const Field& v, const PhasePoint& p, const Grid& quad) {
  return inner(weyl(L, p, u).sample(quad), v.sample(quad), quad.cell_volume());
}

Field coherent_state(const Lie& L, const Window& w, const PhasePoint& p) {
  return weyl_adjoint(L, p, w.field());
}

OperatorMatrix projector(const Lie& L, const Window& w, const PhasePoint& p, const Grid& grid) {
  const CVector s = coherent_state(L, w, p).sample(grid);
  return rank_one(grid, s, s);
}

Field bargmann(const Lie& L, const Window& w, const Field& u, const XiGrid& xi, const Grid& quad) {
  return fourier_wigner(L, u, w.field(), xi, quad);
}

Field bargmann_adjoint(const Lie& L, const Window& w, const Field& h, const XiGrid& xi, const Grid& target) {
  const CVector hs = h.sample(xi);
  const std::size_t nz = xi.g_grid.size(), nd = xi.dual_grid.size();
  const double zfac = xi.g_grid.cell_volume() * dual_factor(xi.dim());
  CVector out(static_cast<Eigen::Index>(target.size()));
  std::vector<CVector> rows(nz);
  for (std::size_t iz = 0; iz < nz; ++iz) rows[iz] = hs.segment(static_cast<Eigen::Index>(iz * nd), static_cast<Eigen::Index>(nd));
  parallel_for(target.size(), [&](std::size_t ix) {
    const Vec x = target.node(ix);
    CVector terms(static_cast<Eigen::Index>(nz));
    for (std::size_t iz = 0; iz < nz; ++iz) {
      const Vec a = bch<double>(L, xi.g_grid.node(iz), x);
      const Complex om = w(a);
      terms(static_cast<Eigen::Index>(iz)) =
          std::abs(om) < 1e-300 ? Complex(0.0, 0.0) : om * exp_contract(rows[iz], xi.dual_grid, a, -1);
    }
    out(static_cast<Eigen::Index>(ix)) = integrate_samples(terms, zfac);
  });
  return Field::gridded(Domain::Group, target, out);
}

Complex reproducing_kernel(const Lie& L, const Window& w, const PhasePoint& p, const PhasePoint& q,
                           const Grid& quad) {
  return inner(coherent_state(L, w, p).sample(quad), coherent_state(L, w, q).sample(quad), quad.cell_volume());
}

CMatrix coherent_matrix(const Lie& L, const Window& w, const XiGrid& xi, const Grid& grid) {
  return coherent_matrix(L, w, xi, grid.nodes());
}

CMatrix coherent_matrix(const Lie& L, const Window& w, const XiGrid& xi, const std::vector<Vec>& xs) {
  const double entries = static_cast<double>(xs.size()) * static_cast<double>(xi.size());
  if (entries > kCoherentMatrixLimit)
    throw std::length_error("coherent_matrix: " + std::to_string(entries) + " entries exceed the guard of " +
                            std::to_string(kCoherentMatrixLimit));
  const std::size_t nz = xi.g_grid.size(), nd = xi.dual_grid.size(), nx = xs.size();
  const std::vector<Vec> zetas = xi.dual_grid.nodes();
  CMatrix phi(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(xi.size()));
  parallel_for(nz, [&](std::size_t iz) {
    const Vec z = xi.g_grid.node(iz);
    std::vector<Vec> a(nx);
    CVector om(static_cast<Eigen::Index>(nx));
    for (std::size_t i = 0; i < nx; ++i) {
      a[i] = bch<double>(L, z, xs[i]);
      om(static_cast<Eigen::Index>(i)) = w(a[i]);
    }
    for (std::size_t id = 0; id < nd; ++id)
      for (std::size_t i = 0; i < nx; ++i)
        phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(iz * nd + id)) =
            expi(-a[i].dot(zetas[id])) * om(static_cast<Eigen::Index>(i));
  });
  return phi;
}

}  // namespace nilquant
