#include "nilquant/berezin.hpp"

#include "nilquant/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace nilquant {

void BerezinConfig::validate() const {
  const int n = algebra.dim();
  if (window.dim() != n || g_grid.dim() != n || xi_grid.dim() != n || symbol.dim() != n)
    throw std::invalid_argument("BerezinConfig: algebra, window, grids and symbol must share one dimension");
}

CoherentFamily berezin_family(const Lie& L, const Window& w) {
  return {[L, w](const Vec& z, const Vec& x, Vec& a) {
    a = bch<double>(L, z, x);
    return w(a);
  }};
}

Field family_state(const CoherentFamily& fam, const PhasePoint& p, int n) {
  return Field::analytic(Domain::Group, n, [fam, p](const Vec& x) {
    Vec a;
    const Complex amp = fam.eval(p.z, x, a);
    return amp * expi(-a.dot(p.zeta));
  });
}

namespace {

void guard(double cost, const char* what) {
  if (cost > kAssemblyLimit)
    throw std::length_error(std::string(what) + ": cost " + std::to_string(cost) + " exceeds the assembly guard " +
                            std::to_string(kAssemblyLimit));
}

bool same_points(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (&a == &b) return true;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].size() != b[i].size() || a[i] != b[i]) return false;
  return true;
}

// Anchors (n per point, contiguous) and amplitudes of one z slice.
struct Slice {
  std::vector<double> anchor;
  CVector amp;
};

Slice make_slice(const CoherentFamily& fam, const Vec& z, const std::vector<Vec>& pts, int n) {
  Slice s;
  s.anchor.resize(pts.size() * static_cast<std::size_t>(n));
  s.amp.resize(static_cast<Eigen::Index>(pts.size()));
  Vec a;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s.amp(static_cast<Eigen::Index>(i)) = fam.eval(z, pts[i], a);
    for (int k = 0; k < n; ++k) s.anchor[i * n + k] = a(k);
  }
  return s;
}

}  // namespace

CMatrix family_kernel(const Symbol& f, const CoherentFamily& fam, const Grid& zgrid, const std::vector<Vec>& rows,
                      const std::vector<Vec>& cols) {
  if (!f.has_closed_form()) throw std::invalid_argument("family_kernel: symbol has no closed-form zeta transform");
  for (const auto& t : f.terms())
    if (t.dual.is_flat())
      throw std::invalid_argument("family_kernel: zeta-constant terms are point masses and need the grid path");
  const int n = f.dim();
  const std::size_t nz = zgrid.size(), nr = rows.size(), nc = cols.size();
  guard(static_cast<double>(nz) * static_cast<double>(nr) * static_cast<double>(nc), "family_kernel");
  const bool same = same_points(rows, cols);

  std::vector<Slice> rs(nz), cs(same ? 0 : nz);
  parallel_for(nz, [&](std::size_t iz) {
    const Vec z = zgrid.node(iz);
    rs[iz] = make_slice(fam, z, rows, n);
    if (!same) cs[iz] = make_slice(fam, z, cols, n);
  });
  double amp_max = 0.0;
  for (std::size_t iz = 0; iz < nz; ++iz) {
    if (nr) amp_max = std::max(amp_max, rs[iz].amp.cwiseAbs().maxCoeff());
    if (!same && nc) amp_max = std::max(amp_max, cs[iz].amp.cwiseAbs().maxCoeff());
  }
  const double thr = 1e-13 * amp_max;

  CMatrix K = CMatrix::Zero(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(nc));
  CMatrix M;  // transposed half for the symmetric sweep
  bool used_m = false;
  const double vol = zgrid.cell_volume();

  for (const auto& term : f.terms()) {
    const DualFactor& d = term.dual;
    const double s2 = d.width * d.width;
    const double hs2 = 0.5 * s2;
    const Complex A = term.coeff * dual_factor(n) * std::pow(2.0 * kPi * s2, 0.5 * n) * expi(-d.shift.dot(d.center));
    const bool zero_shift = d.shift.isZero(0.0);
    const bool sym = same && zero_shift;
    if (sym && !used_m) {
      M = CMatrix::Zero(K.rows(), K.cols());
      used_m = true;
    }
    std::vector<double> b(d.shift.data(), d.shift.data() + n);

    CVector g(static_cast<Eigen::Index>(nz));
    for (std::size_t iz = 0; iz < nz; ++iz) g(static_cast<Eigen::Index>(iz)) = term.x_factor(zgrid.node(iz));
    const double gmax = nz ? g.cwiseAbs().maxCoeff() : 0.0;
    if (gmax == 0.0) continue;
    std::vector<std::size_t> active_z;
    for (std::size_t iz = 0; iz < nz; ++iz)
      if (std::abs(g(static_cast<Eigen::Index>(iz))) > 1e-15 * gmax) active_z.push_back(iz);

    // beta = amp * exp(-i <a|c>), per z slice; active row lists.
    std::vector<CVector> br(nz), bc(same ? 0 : nz);
    std::vector<std::vector<int>> act(nz);
    auto beta = [&](const Slice& s, std::size_t m) {
      CVector out(static_cast<Eigen::Index>(m));
      for (std::size_t i = 0; i < m; ++i) {
        double ph = 0.0;
        for (int k = 0; k < n; ++k) ph += s.anchor[i * n + k] * d.center(k);
        out(static_cast<Eigen::Index>(i)) = s.amp(static_cast<Eigen::Index>(i)) * expi(-ph);
      }
      return out;
    };
    for (std::size_t iz : active_z) {
      br[iz] = beta(rs[iz], nr);
      if (!same) bc[iz] = beta(cs[iz], nc);
      for (std::size_t r = 0; r < nr; ++r)
        if (std::abs(br[iz](static_cast<Eigen::Index>(r))) > thr) act[iz].push_back(static_cast<int>(r));
    }

    constexpr std::size_t kBlock = 64;
    const std::size_t nblocks = (nc + kBlock - 1) / kBlock;
    parallel_for(nblocks, [&](std::size_t blk) {
      const std::size_t c0 = blk * kBlock, c1 = std::min(nc, c0 + kBlock);
      for (std::size_t iz : active_z) {
        const Complex w = vol * A * g(static_cast<Eigen::Index>(iz));
        const Slice& R = rs[iz];
        const Slice& C = same ? rs[iz] : cs[iz];
        const CVector& BR = br[iz];
        const CVector& BC = same ? br[iz] : bc[iz];
        for (std::size_t c = c0; c < c1; ++c) {
          const Complex betac = BC(static_cast<Eigen::Index>(c));
          if (std::abs(betac) <= thr) continue;
          const Complex wc = w * std::conj(betac);
          const Complex wb = w * betac;
          const double* ac = &C.anchor[c * n];
          Complex* kcol = &K(0, static_cast<Eigen::Index>(c));
          Complex* mcol = sym ? &M(0, static_cast<Eigen::Index>(c)) : nullptr;
          for (int r : act[iz]) {
            if (sym && static_cast<std::size_t>(r) > c) break;
            const double* ar = &R.anchor[static_cast<std::size_t>(r) * n];
            double q = 0.0;
            for (int k = 0; k < n; ++k) {
              const double t = ar[k] - ac[k] + b[k];
              q += t * t;
            }
            const double ex = hs2 * q;
            if (ex > 40.0) continue;
            const Complex t = std::exp(-ex) * BR(r);
            kcol[r] += wc * t;
            if (sym && static_cast<std::size_t>(r) != c) mcol[r] += wb * std::conj(t);
          }
        }
      }
    });
  }
  if (used_m)
    for (Eigen::Index c = 0; c < K.cols(); ++c)
      for (Eigen::Index r = 0; r < c; ++r) K(c, r) += M(r, c);
  return K;
}

OperatorMatrix xi_quadrature_operator(const CoherentFamily& fam,
                                      const std::function<Complex(const Vec& z, const DualVec& zeta)>& f,
                                      const XiGrid& xi, const Grid& grid) {
  const std::size_t nz = xi.g_grid.size(), nd = xi.dual_grid.size(), nx = grid.size();
  guard(static_cast<double>(nx) * static_cast<double>(nx) * static_cast<double>(xi.size()), "xi_quadrature_operator");
  const int n = grid.dim();
  const std::vector<Vec> xs = grid.nodes();
  const std::vector<Vec> zetas = xi.dual_grid.nodes();
  const double m = xi.measure();
  CMatrix K = CMatrix::Zero(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nx));
  for (std::size_t iz = 0; iz < nz; ++iz) {
    const Vec z = xi.g_grid.node(iz);
    const Slice s = make_slice(fam, z, xs, n);
    CVector fz(static_cast<Eigen::Index>(nd));
    for (std::size_t id = 0; id < nd; ++id) fz(static_cast<Eigen::Index>(id)) = m * f(z, zetas[id]);
    if (fz.cwiseAbs().maxCoeff() == 0.0) continue;
    CMatrix phi(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nd));
    parallel_for(nd, [&](std::size_t id) {
      for (std::size_t i = 0; i < nx; ++i) {
        double ph = 0.0;
        for (int k = 0; k < n; ++k) ph += s.anchor[i * n + k] * zetas[id](k);
        phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(id)) = s.amp(static_cast<Eigen::Index>(i)) * expi(-ph);
      }
    });
    K.noalias() += phi * fz.asDiagonal() * phi.adjoint();
  }
  return {grid, std::move(K)};
}

OperatorMatrix family_operator(const BerezinConfig& cfg, const CoherentFamily& fam) {
  cfg.validate();
  const Symbol& f = cfg.symbol;
  const Grid& g = cfg.g_grid;
  const int n = g.dim();
  if (f.is_delta()) {
    const CVector v = family_state(fam, f.delta_point(), n).sample(g);
    return rank_one(g, v, v);
  }
  if (f.is_general()) {
    const Field sf = f.general_field();
    return xi_quadrature_operator(
        fam,
        [&sf, n](const Vec& z, const DualVec& zeta) {
          Vec p(2 * n);
          p << z, zeta;
          return sf(p);
        },
        cfg.xi_grid, g);
  }

  std::vector<SymbolTerm> smooth, point;
  for (const auto& t : f.terms()) (t.dual.is_flat() ? point : smooth).push_back(t);
  const std::vector<Vec> xs = g.nodes();
  CMatrix K = smooth.empty() ? CMatrix::Zero(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.size()))
                             : family_kernel(Symbol::from_terms(n, smooth), fam, cfg.xi_grid.g_grid, xs, xs);
  if (!point.empty()) {
    // delta(a_z(x) - a_z(y)) with x -> a_z(x) measure preserving: diagonal.
    const Grid& zg = cfg.xi_grid.g_grid;
    CVector diag = CVector::Zero(static_cast<Eigen::Index>(g.size()));
    for (const auto& t : point) {
      if (!t.dual.shift.isZero(0.0))
        throw std::invalid_argument("family_operator: phase-shifted zeta-constant terms are not supported here");
      CVector gz(static_cast<Eigen::Index>(zg.size()));
      for (std::size_t iz = 0; iz < zg.size(); ++iz) gz(static_cast<Eigen::Index>(iz)) = t.coeff * t.x_factor(zg.node(iz));
      parallel_for(g.size(), [&](std::size_t ix) {
        CVector terms(static_cast<Eigen::Index>(zg.size()));
        Vec a;
        for (std::size_t iz = 0; iz < zg.size(); ++iz) {
          const Complex amp = fam.eval(zg.node(iz), xs[ix], a);
          terms(static_cast<Eigen::Index>(iz)) = gz(static_cast<Eigen::Index>(iz)) * std::norm(amp);
        }
        diag(static_cast<Eigen::Index>(ix)) += integrate_samples(terms, zg.cell_volume());
      });
    }
    K.diagonal() += diag / g.cell_volume();
  }
  return {g, std::move(K)};
}

OperatorMatrix berezin_matrix(const BerezinConfig& cfg) {
  cfg.validate();
  if (cfg.symbol.is_delta()) return projector(cfg.algebra, cfg.window, cfg.symbol.delta_point(), cfg.g_grid);
  return family_operator(cfg, berezin_family(cfg.algebra, cfg.window));
}

CMatrix berezin_kernel(const BerezinConfig& cfg, const std::vector<Vec>& rows, const std::vector<Vec>& cols) {
  return family_kernel(cfg.symbol, berezin_family(cfg.algebra, cfg.window), cfg.xi_grid.g_grid, rows, cols);
}

Complex berezin_weak(const BerezinConfig& cfg, const Field& u, const Field& v) {
  cfg.validate();
  const Lie& L = cfg.algebra;
  if (cfg.symbol.is_delta()) {
    const CVector w = coherent_state(L, cfg.window, cfg.symbol.delta_point()).sample(cfg.g_grid);
    const double vol = cfg.g_grid.cell_volume();
    return inner(u.sample(cfg.g_grid), w, vol) * inner(w, v.sample(cfg.g_grid), vol);
  }
  const CVector wu = fourier_wigner(L, u, cfg.window.field(), cfg.xi_grid, cfg.g_grid).samples();
  const CVector wv = fourier_wigner(L, v, cfg.window.field(), cfg.xi_grid, cfg.g_grid).samples();
  const CVector fs = cfg.symbol.as_field().sample(cfg.xi_grid);
  const CVector prod = fs.cwiseProduct(wu).cwiseProduct(wv.conjugate());
  return integrate_samples(prod, cfg.xi_grid.measure());
}

Field berezin_mult_example(const Lie& L, const Window& w, const Field& phi, const Grid& zgrid) {
  const CVector ph = phi.sample(zgrid);
  const std::vector<Vec> zs = zgrid.nodes();
  const double vol = zgrid.cell_volume();
  return Field::analytic(Domain::Group, w.dim(), [L, w, ph, zs, vol](const Vec& x) {
    CVector terms(ph.size());
    for (std::size_t iz = 0; iz < zs.size(); ++iz)
      terms(static_cast<Eigen::Index>(iz)) = ph(static_cast<Eigen::Index>(iz)) * std::norm(w(bch<double>(L, zs[iz], x)));
    return integrate_samples(terms, vol);
  });
}

OperatorMatrix berezin_conv_example(const Lie& L, const Window& w, const Field& psi, const XiGrid& xi,
                                    const Grid& g_grid) {
  if (psi.domain() != Domain::Dual) throw std::invalid_argument("berezin_conv_example: psi must live on the dual");
  return xi_quadrature_operator(
      berezin_family(L, w), [&psi](const Vec&, const DualVec& zeta) { return psi(zeta); }, xi, g_grid);
}

double covariance_check_L(const BerezinConfig& cfg, const Vec& z) {
  cfg.validate();
  const Lie& L = cfg.algebra;
  const std::vector<Vec> xs = cfg.g_grid.nodes();
  std::vector<Vec> shifted;
  shifted.reserve(xs.size());
  for (const auto& x : xs) shifted.push_back(bch<double>(L, z, x));
  // Kernel of L_z^* T L_z is K(zx, zy).
  const OperatorMatrix lhs(cfg.g_grid, berezin_kernel(cfg, shifted, shifted));
  BerezinConfig moved = cfg;
  moved.symbol = cfg.symbol.translate_x(L, z);
  const OperatorMatrix rhs = berezin_matrix(moved);
  return frobenius_relative(lhs, rhs);
}

Complex toeplitz_kernel(const BerezinConfig& cfg, const PhasePoint& p, const PhasePoint& q) {
  cfg.validate();
  const Lie& L = cfg.algebra;
  const Field& om = cfg.window.field();
  // <omega_p, omega_Z> = W_{omega_p, omega}(Z)
  const CVector wp = fourier_wigner(L, coherent_state(L, cfg.window, p), om, cfg.xi_grid, cfg.g_grid).samples();
  const CVector wq = fourier_wigner(L, coherent_state(L, cfg.window, q), om, cfg.xi_grid, cfg.g_grid).samples();
  const CVector fs = cfg.symbol.as_field().sample(cfg.xi_grid);
  return integrate_samples(fs.cwiseProduct(wp).cwiseProduct(wq.conjugate()), cfg.xi_grid.measure());
}

double symbol_norm(const Symbol& f, const XiGrid& xi, double s) {
  if (!(s >= 1.0)) throw std::invalid_argument("symbol_norm: s must be >= 1");
  const CVector fs = f.as_field().sample(xi);
  if (std::isinf(s)) return fs.cwiseAbs().maxCoeff();
  const Eigen::VectorXd p = fs.cwiseAbs().array().pow(s).matrix();
  return std::pow(xi.measure() * pairwise_sum(p.data(), static_cast<std::size_t>(p.size())), 1.0 / s);
}

SchattenCheck schatten_bound_check(const OperatorMatrix& ber, const BerezinConfig& cfg, double s, double slack) {
  SchattenCheck r;
  r.s = s;
  r.operator_norm = schatten_norm(ber, s);
  r.symbol_norm = symbol_norm(cfg.symbol, cfg.xi_grid, s);
  r.ratio = r.symbol_norm > 0.0 ? r.operator_norm / r.symbol_norm : 0.0;
  r.bound = std::isinf(s) ? 1.0 : std::pow(4.0, 1.0 / s);
  r.violated = r.ratio > r.bound * (1.0 + slack);
  return r;
}

SchattenCheck schatten_bound_check(const BerezinConfig& cfg, double s, double slack) {
  return schatten_bound_check(berezin_matrix(cfg), cfg, s, slack);
}

}  // namespace nilquant
