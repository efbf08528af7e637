#include "nilquant/covariant.hpp"

#include "nilquant/parallel.hpp"

#include <cmath>

namespace nilquant {

Complex CovSymbol::operator()(std::size_t i, std::size_t j) const {
  if (is_full) return full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  if (i != j) throw std::logic_error("CovSymbol: off-diagonal value of a diagonal symbol");
  return diag(static_cast<Eigen::Index>(i));
}

namespace {

void full_guard(std::size_t n, const char* what) {
  const double entries = static_cast<double>(n) * static_cast<double>(n);
  if (entries > kCovFullLimit)
    throw std::length_error(std::string(what) + ": " + std::to_string(entries) +
                            " Xi x Xi entries exceed the guard of " + std::to_string(kCovFullLimit));
}

}  // namespace

Complex cov(const OperatorMatrix& T, const Lie& L, const Window& w, const PhasePoint& p, const PhasePoint& q) {
  const Grid& g = T.grid();
  const CVector a = coherent_state(L, w, p).sample(g);
  const CVector b = coherent_state(L, w, q).sample(g);
  return inner(op_apply(T, a), b, g.cell_volume());
}

CovSymbol cov_full(const OperatorMatrix& T, const Lie& L, const Window& w, const XiGrid& xi) {
  full_guard(xi.size(), "cov_full");
  const double vol = T.weight();
  const CMatrix phi = coherent_matrix(L, w, xi, T.grid());
  CovSymbol c;
  c.xi = xi;
  c.is_full = true;
  // (Phi^H K Phi)(j, i) = <T omega_i, omega_j> / vol^2
  c.full = (vol * vol * (phi.adjoint() * T.kernel() * phi)).transpose();
  return c;
}

CovSymbol cov_diag(const OperatorMatrix& T, const Lie& L, const Window& w, const XiGrid& xi) {
  const double vol = T.weight();
  const CMatrix phi = coherent_matrix(L, w, xi, T.grid());
  const CMatrix kphi = T.kernel() * phi;
  CovSymbol c;
  c.xi = xi;
  c.diag.resize(phi.cols());
  for (Eigen::Index i = 0; i < phi.cols(); ++i) c.diag(i) = vol * vol * phi.col(i).dot(kphi.col(i));
  return c;
}

CovSymbol square_compose(const CovSymbol& F, const CovSymbol& G) {
  if (!F.is_full || !G.is_full) throw std::invalid_argument("square_compose: needs full covariant symbols");
  if (!(F.xi == G.xi)) throw std::invalid_argument("square_compose: Xi grids differ");
  CovSymbol c;
  c.xi = F.xi;
  c.is_full = true;
  c.full = F.xi.measure() * (F.full * G.full);
  return c;
}

CovSymbol square_adjoint(const CovSymbol& F) {
  CovSymbol c = F;
  if (F.is_full)
    c.full = F.full.adjoint();
  else
    c.diag = F.diag.conjugate();
  return c;
}

double berezin_transform(const BerezinConfig& cfg, const PhasePoint& p) {
  cfg.validate();
  const Lie& L = cfg.algebra;
  // <omega_p, omega_Z> = W_{omega_p, omega}(Z)
  const CVector wp = fourier_wigner(L, coherent_state(L, cfg.window, p), cfg.window.field(), cfg.xi_grid, cfg.g_grid)
                         .samples();
  const CVector fs = cfg.symbol.as_field().sample(cfg.xi_grid);
  const CVector terms = fs.cwiseProduct(wp.cwiseAbs2().cast<Complex>());
  return integrate_samples(terms, cfg.xi_grid.measure()).real();
}

CVector berezin_transform_grid(const BerezinConfig& cfg) {
  cfg.validate();
  full_guard(cfg.xi_grid.size(), "berezin_transform_grid");
  const CMatrix phi = coherent_matrix(cfg.algebra, cfg.window, cfg.xi_grid, cfg.g_grid);
  // P(X, Z) = <omega_Z, omega_X>, up to conjugation; only |P|^2 enters.
  const Eigen::MatrixXd p2 = (cfg.g_grid.cell_volume() * (phi.adjoint() * phi)).cwiseAbs2();
  const CVector fs = cfg.symbol.as_field().sample(cfg.xi_grid);
  return cfg.xi_grid.measure() * (p2.cast<Complex>() * fs);
}

NormBound norm_bound_check(const OperatorMatrix& T, const CovSymbol& diag, double p, double slack) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm_bound_check: p must be >= 1");
  NormBound r;
  r.p = p;
  const std::size_t n = diag.size();
  Eigen::VectorXd a(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) a(static_cast<Eigen::Index>(i)) = std::abs(diag.at(i));
  if (std::isinf(p)) {
    r.cov_norm = n ? a.maxCoeff() : 0.0;
  } else {
    const Eigen::VectorXd ap = a.array().pow(p).matrix();
    r.cov_norm = std::pow(diag.xi.measure() * pairwise_sum(ap.data(), n), 1.0 / p);
  }
  r.schatten_norm = schatten_norm(T, p);
  r.ratio = r.schatten_norm > 0.0 ? r.cov_norm / r.schatten_norm : (r.cov_norm > 0.0 ? INFINITY : 0.0);
  r.violated = r.cov_norm > r.schatten_norm * (1.0 + slack) + 1e-14;
  return r;
}

NormBound norm_bound_check(const OperatorMatrix& T, const Lie& L, const Window& w, const XiGrid& xi, double p,
                           double slack) {
  return norm_bound_check(T, cov_diag(T, L, w, xi), p, slack);
}

DecayReport c0_decay_check(const CovSymbol& diag, const std::vector<double>& radii, double slack) {
  if (radii.empty()) throw std::invalid_argument("c0_decay_check: empty radius list");
  DecayReport r;
  r.radii = radii;
  r.shell_max.assign(radii.size(), 0.0);
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const PhasePoint p = diag.xi.node(i);
    const double norm = std::max(p.z.cwiseAbs().maxCoeff(), p.zeta.cwiseAbs().maxCoeff());
    const double v = std::abs(diag.at(i));
    if (norm < radii.front()) r.central = std::max(r.central, v);
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double hi = k + 1 < radii.size() ? radii[k + 1] : INFINITY;
      if (norm >= radii[k] && norm < hi) r.shell_max[k] = std::max(r.shell_max[k], v);
    }
  }
  if (r.central == 0.0) r.central = r.shell_max.front();
  r.monotone = true;
  double prev = r.central;
  for (double m : r.shell_max) {
    if (m > prev * (1.0 + slack) + 1e-14) r.monotone = false;
    prev = m;
  }
  r.decays = r.monotone && r.shell_max.back() <= 0.1 * r.central;
  return r;
}

OperatorMatrix kernel_from_cov(const CovSymbol& C, const Lie& L, const Window& w, const Grid& grid) {
  if (!C.is_full) throw std::invalid_argument("kernel_from_cov: needs the full covariant symbol");
  full_guard(C.size(), "kernel_from_cov");
  const CMatrix phi = coherent_matrix(L, w, C.xi, grid);
  const double m = C.xi.measure();
  CMatrix K = m * m * (phi * C.full.transpose() * phi.adjoint());
  return {grid, std::move(K)};
}

}  // namespace nilquant
