#include "nilquant/tau.hpp"

#include "nilquant/parallel.hpp"

#include <charconv>

namespace nilquant {

TauMap tau_unit() {
  return {"e", [](const Vec& x) -> Vec { return Vec::Zero(x.size()); }};
}

TauMap tau_identity() {
  return {"id", [](const Vec& x) { return x; }};
}

TauMap tau_scale(double t) {
  return {"scale:" + std::to_string(t), [t](const Vec& x) -> Vec { return t * x; }};
}

TauMap symmetric_tau(const Lie&) {
  return {"symmetric", [](const Vec& x) -> Vec { return 0.5 * x; }};
}

TauMap tau_preset(const std::string& name, const Lie& L) {
  if (name == "e") return tau_unit();
  if (name == "id") return tau_identity();
  if (name == "symmetric") return symmetric_tau(L);
  if (name.rfind("scale:", 0) == 0) {
    double t = 0.0;
    const char* b = name.data() + 6;
    const char* e = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(b, e, t);
    if (ec == std::errc() && ptr == e) return tau_scale(t);
  }
  throw std::invalid_argument("unknown tau '" + name + "' (expected e, id, symmetric or scale:<t>)");
}

TauMap tau_tilde(const Lie& L, const TauMap& tau) {
  return {"tilde(" + tau.name + ")", [L, tau](const Vec& x) { return bch<double>(L, tau(Vec(-x)), x); }};
}

OperatorMatrix op_quantize_tau(const Lie& L, const Symbol& a, const TauMap& tau, const Grid& grid) {
  if (!a.has_closed_form()) throw std::invalid_argument("op_quantize_tau: symbol has no closed-form xi-transform");
  const std::vector<Vec> xs = grid.nodes();
  const std::size_t nx = xs.size();
  const int n = grid.dim();
  CMatrix K = CMatrix::Zero(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nx));
  for (const auto& t : a.terms()) {
    if (t.dual.is_flat()) {
      if (!t.dual.shift.isZero(0.0))
        throw std::invalid_argument("op_quantize_tau: shifted zeta-flat terms are not supported");
      const Vec te = tau(Vec::Zero(n));
      for (std::size_t i = 0; i < nx; ++i)
        K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) +=
            t.coeff * t.x_factor(bch<double>(L, -te, xs[i])) / grid.cell_volume();
      continue;
    }
    parallel_for(nx, [&](std::size_t i) {
      const Vec& x = xs[i];
      for (std::size_t j = 0; j < nx; ++j) {
        const Vec& y = xs[j];
        const Vec arg = bch<double>(L, -tau(bch<double>(L, x, -y)), x);  // tau(x y^{-1})^{-1} x
        const Vec lag = bch<double>(L, -y, x);                           // log(y^{-1} x)
        K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            t.coeff * t.x_factor(arg) * t.dual.transform(-lag);
      }
    });
  }
  return {grid, std::move(K)};
}

Field weyl_tau(const Lie& L, const TauMap& tau, const PhasePoint& p, const Field& u) {
  if (tau.is_unit()) return weyl(L, p, u);
  Field out = Field::analytic(Domain::Group, u.dim(), [L, tau, p, u](const Vec& x) {
    return expi(bch<double>(L, -tau(p.z), x).dot(p.zeta)) * u(bch<double>(L, -p.z, x));
  });
  return out.mark_approximate(u.approximate() || !u.is_analytic());
}

Field weyl_tau_adjoint(const Lie& L, const TauMap& tau, const PhasePoint& p, const Field& u) {
  if (tau.is_unit()) return weyl_adjoint(L, p, u);
  Field out = Field::analytic(Domain::Group, u.dim(), [L, tau, p, u](const Vec& y) {
    const Vec zy = bch<double>(L, p.z, y);
    return expi(-bch<double>(L, -tau(p.z), zy).dot(p.zeta)) * u(zy);
  });
  return out.mark_approximate(u.approximate() || !u.is_analytic());
}

Field coherent_tau(const Lie& L, const TauMap& tau, const Window& w, const PhasePoint& p) {
  return weyl_tau_adjoint(L, tau, p, w.field());
}

Field wigner_tau(const Lie& L, const TauMap& tau, const Field& u, const Field& v, const XiGrid& xi, const Grid& quad) {
  if (tau.is_unit()) return fourier_wigner(L, u, v, xi, quad);
  const CVector out = factored_wigner(
      [&](const Vec& z, std::size_t, const Vec& t) {
        const Vec y = bch<double>(L, tau(z), t);
        const Complex vb = std::conj(v(y));
        if (vb == 0.0) return Complex(0.0, 0.0);
        return u(bch<double>(L, -z, y)) * vb;
      },
      xi, quad);
  Field f = Field::gridded(xi, out);
  return f.mark_approximate(u.approximate() || v.approximate());
}

CoherentFamily tau_family(const Lie& L, const TauMap& tau, const Window& w) {
  if (tau.is_unit()) return berezin_family(L, w);
  return {[L, tau, w](const Vec& z, const Vec& x, Vec& a) {
    const Vec zx = bch<double>(L, z, x);
    a = bch<double>(L, -tau(z), zx);
    return w(zx);
  }};
}

OperatorMatrix berezin_tau(const BerezinConfig& cfg, const TauMap& tau) {
  if (tau.is_unit()) return berezin_matrix(cfg);
  if (cfg.symbol.is_delta()) {
    cfg.validate();
    const CVector s = coherent_tau(cfg.algebra, tau, cfg.window, cfg.symbol.delta_point()).sample(cfg.g_grid);
    return rank_one(cfg.g_grid, s, s);
  }
  return family_operator(cfg, tau_family(cfg.algebra, tau, cfg.window));
}

CMatrix berezin_tau_kernel(const BerezinConfig& cfg, const TauMap& tau, const std::vector<Vec>& rows,
                           const std::vector<Vec>& cols) {
  return family_kernel(cfg.symbol, tau_family(cfg.algebra, tau, cfg.window), cfg.xi_grid.g_grid, rows, cols);
}

double covariance_check_M(const BerezinConfig& cfg, const DualVec& zeta) {
  cfg.validate();
  const TauMap id = tau_identity();
  const OperatorMatrix B = berezin_tau(cfg, id);
  const std::vector<Vec> xs = cfg.g_grid.nodes();
  CMatrix lhs = B.kernel();
  // M_zeta^* K M_zeta: e^{-i<x|zeta>} K(x, y) e^{i<y|zeta>}
  for (Eigen::Index i = 0; i < lhs.rows(); ++i)
    for (Eigen::Index j = 0; j < lhs.cols(); ++j)
      lhs(i, j) *= expi(xs[static_cast<std::size_t>(j)].dot(zeta) - xs[static_cast<std::size_t>(i)].dot(zeta));
  BerezinConfig moved = cfg;
  moved.symbol = cfg.symbol.shift_dual(zeta);
  const OperatorMatrix rhs = berezin_tau(moved, id);
  return frobenius_relative(OperatorMatrix(cfg.g_grid, std::move(lhs)), rhs);
}

}  // namespace nilquant
