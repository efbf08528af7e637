#include "nilquant/pseudodiff.hpp"

#include "nilquant/parallel.hpp"

#include <cmath>

namespace nilquant {

namespace {

void require_closed_form(const Symbol& a, const char* what) {
  if (!a.has_closed_form()) throw std::invalid_argument(std::string(what) + ": symbol has no closed-form xi-transform");
}

// Flat index of the grid node at p, or -1 if p is outside; throws if p is off the lattice.
long lattice_index(const Grid& g, const Vec& p, const char* what) {
  std::vector<int> idx(static_cast<std::size_t>(g.dim()));
  bool inside = true;
  for (int k = 0; k < g.dim(); ++k) {
    const double t = (p(k) + g.half_width()(k)) / g.spacing(k) - 0.5;
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-9)
      throw std::invalid_argument(std::string(what) + ": shifted point is off the grid lattice; use op_action");
    if (r < 0 || r >= g.counts()[k]) inside = false;
    idx[k] = static_cast<int>(r);
  }
  return inside ? static_cast<long>(g.flat_index(idx)) : -1;
}

}  // namespace

Complex symbol_partial_inverse(const Symbol& a, const Vec& x, const Vec& w) {
  require_closed_form(a, "symbol_partial_inverse");
  Complex s{0.0, 0.0};
  for (const auto& t : a.terms()) {
    if (t.dual.is_flat()) throw std::invalid_argument("symbol_partial_inverse: point-mass term");
    s += t.coeff * t.x_factor(x) * t.dual.transform(-w);
  }
  return s;
}

OperatorMatrix op_quantize(const Lie& L, const Symbol& a, const Grid& grid) {
  require_closed_form(a, "op_quantize");
  const std::vector<Vec> xs = grid.nodes();
  const std::size_t nx = xs.size();
  const double vol = grid.cell_volume();
  CMatrix K = CMatrix::Zero(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nx));
  for (const auto& t : a.terms()) {
    CVector g(static_cast<Eigen::Index>(nx));
    for (std::size_t i = 0; i < nx; ++i) g(static_cast<Eigen::Index>(i)) = t.coeff * t.x_factor(xs[i]);
    if (t.dual.is_flat()) {
      const bool shifted = !t.dual.shift.isZero(0.0);
      for (std::size_t i = 0; i < nx; ++i) {
        // delta(log(x y^{-1}) - b): y = b^{-1} x
        const long j = shifted ? lattice_index(grid, bch<double>(L, -t.dual.shift, xs[i]), "op_quantize")
                               : static_cast<long>(i);
        if (j >= 0) K(static_cast<Eigen::Index>(i), j) += g(static_cast<Eigen::Index>(i)) / vol;
      }
      continue;
    }
    parallel_for(nx, [&](std::size_t i) {
      const Complex gi = g(static_cast<Eigen::Index>(i));
      if (gi == 0.0) return;
      for (std::size_t j = 0; j < nx; ++j)
        K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            gi * t.dual.transform(-bch<double>(L, xs[i], -xs[j]));
    });
  }
  return {grid, std::move(K)};
}

OperatorMatrix op_quantize(const Lie& L, const Symbol& a, const Grid& grid, const Grid& dual) {
  if (a.has_closed_form()) return op_quantize(L, a, grid);
  if (a.is_delta()) throw std::invalid_argument("op_quantize: point-mass symbols have no kernel");
  const double cost = static_cast<double>(grid.size()) * grid.size() * dual.size();
  if (cost > kAssemblyLimit) throw std::length_error("op_quantize: cost " + std::to_string(cost) + " exceeds the guard");
  const int n = grid.dim();
  const std::vector<Vec> xs = grid.nodes();
  const std::vector<Vec> xis = dual.nodes();
  const std::size_t nx = xs.size();
  const double df = dual_factor(n);
  CMatrix K(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nx));
  parallel_for(nx, [&](std::size_t i) {
    CVector row(static_cast<Eigen::Index>(xis.size()));
    for (std::size_t k = 0; k < xis.size(); ++k) row(static_cast<Eigen::Index>(k)) = a(xs[i], xis[k]);
    for (std::size_t j = 0; j < nx; ++j)
      K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          df * exp_contract(row, dual, bch<double>(L, xs[i], -xs[j]), +1);
  });
  return {grid, std::move(K)};
}

KernelEvaluator op_kernel(const Lie& L, const Symbol& a) {
  require_closed_form(a, "op_kernel");
  if (a.has_point_mass()) throw std::invalid_argument("op_kernel: point-mass terms have no pointwise kernel");
  return {[L, a](const std::vector<Vec>& rows, const std::vector<Vec>& cols) {
            CMatrix K(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
            parallel_for(rows.size(), [&](std::size_t i) {
              for (std::size_t j = 0; j < cols.size(); ++j)
                K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    symbol_partial_inverse(a, rows[i], bch<double>(L, rows[i], -cols[j]));
            });
            return K;
          },
          false};
}

Field op_action(const Lie& L, const Symbol& a, const Field& u, const Grid& quad) {
  require_closed_form(a, "op_action");
  const CVector us = u.sample(quad);
  const std::vector<Vec> ys = quad.nodes();
  const double vol = quad.cell_volume();
  Field out = Field::analytic(Domain::Group, u.dim(), [L, a, u, us, ys, vol](const Vec& x) {
    Complex s{0.0, 0.0};
    CVector terms(us.size());
    for (const auto& t : a.terms()) {
      const Complex g = t.coeff * t.x_factor(x);
      if (g == 0.0) continue;
      if (t.dual.is_flat()) {
        s += g * u(bch<double>(L, -t.dual.shift, x));
        continue;
      }
      for (std::size_t j = 0; j < ys.size(); ++j)
        terms(static_cast<Eigen::Index>(j)) = t.dual.transform(-bch<double>(L, x, -ys[j])) * us(static_cast<Eigen::Index>(j));
      s += g * integrate_samples(terms, vol);
    }
    return s;
  });
  return out.mark_approximate(u.approximate());
}

Field symbol_from_kernel(const Lie& L, const KernelEvaluator& K, const XiGrid& xi, const Grid& quad) {
  if (quad.dim() != xi.dim()) throw std::invalid_argument("symbol_from_kernel: dimension mismatch");
  const ExpTransform T(quad, xi.dual_grid, -1);
  const std::vector<Vec> ys = quad.nodes();
  const std::size_t nz = xi.g_grid.size(), nd = xi.dual_grid.size();
  CVector out(static_cast<Eigen::Index>(nz * nd));
  parallel_for(nz, [&](std::size_t iz) {
    const Vec x = xi.g_grid.node(iz);
    std::vector<Vec> cols(ys.size());
    for (std::size_t j = 0; j < ys.size(); ++j) cols[j] = bch<double>(L, -ys[j], x);
    const CVector row = K.eval({x}, cols).row(0).transpose();
    out.segment(static_cast<Eigen::Index>(iz * nd), static_cast<Eigen::Index>(nd)) = T(row);
  });
  Field f = Field::gridded(xi, out);
  return f.mark_approximate(K.approximate);
}

KernelEvaluator kernel_evaluator(const OperatorMatrix& op) {
  const Grid g = op.grid();
  const CMatrix k = op.kernel();
  return {[g, k](const std::vector<Vec>& rows, const std::vector<Vec>& cols) {
            std::vector<std::vector<std::pair<std::size_t, double>>> rs(rows.size()), cs(cols.size());
            for (std::size_t i = 0; i < rows.size(); ++i) rs[i] = g.stencil(rows[i]);
            for (std::size_t j = 0; j < cols.size(); ++j) cs[j] = g.stencil(cols[j]);
            CMatrix K = CMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
            for (std::size_t i = 0; i < rows.size(); ++i)
              for (std::size_t j = 0; j < cols.size(); ++j) {
                Complex s{0.0, 0.0};
                for (const auto& [a, wa] : rs[i])
                  for (const auto& [b, wb] : cs[j])
                    s += wa * wb * k(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
              }
            return K;
          },
          true};
}

Grid lag_grid(const Grid& g) {
  Vec hw(g.dim());
  std::vector<int> counts(static_cast<std::size_t>(g.dim()));
  for (int k = 0; k < g.dim(); ++k) {
    counts[k] = 2 * g.counts()[k] - 1;
    hw(k) = 0.5 * counts[k] * g.spacing(k);
  }
  return {hw, counts};
}

Field berezin_symbol(const BerezinConfig& cfg, const Grid& quad) {
  cfg.validate();
  const Symbol& f = cfg.symbol;
  require_closed_form(f, "berezin_symbol");
  const int n = f.dim();
  const CoherentFamily fam = berezin_family(cfg.algebra, cfg.window);
  const Grid& zg = cfg.xi_grid.g_grid;
  std::vector<SymbolTerm> smooth, flat;
  for (const auto& t : f.terms()) (t.dual.is_flat() ? flat : smooth).push_back(t);

  const std::size_t nz = cfg.xi_grid.g_grid.size(), nd = cfg.xi_grid.dual_grid.size();
  CVector out = CVector::Zero(static_cast<Eigen::Index>(nz * nd));
  if (!smooth.empty()) {
    const Symbol s = Symbol::from_terms(n, smooth);
    const KernelEvaluator K{[&](const std::vector<Vec>& rows, const std::vector<Vec>& cols) {
                              return family_kernel(s, fam, zg, rows, cols);
                            },
                            false};
    out = symbol_from_kernel(cfg.algebra, K, cfg.xi_grid, quad).samples();
  }
  for (const auto& t : flat) {
    if (!t.dual.shift.isZero(0.0)) throw std::invalid_argument("berezin_symbol: phase-shifted flat terms unsupported");
    // int g(z) |omega(zx)|^2 dz, independent of xi
    CVector g(static_cast<Eigen::Index>(zg.size()));
    for (std::size_t iz = 0; iz < zg.size(); ++iz) g(static_cast<Eigen::Index>(iz)) = t.coeff * t.x_factor(zg.node(iz));
    parallel_for(nz, [&](std::size_t ix) {
      const Vec x = cfg.xi_grid.g_grid.node(ix);
      CVector terms(g.size());
      Vec a;
      for (std::size_t iz = 0; iz < zg.size(); ++iz)
        terms(static_cast<Eigen::Index>(iz)) = g(static_cast<Eigen::Index>(iz)) * std::norm(fam.eval(zg.node(iz), x, a));
      const Complex m = integrate_samples(terms, zg.cell_volume());
      out.segment(static_cast<Eigen::Index>(ix * nd), static_cast<Eigen::Index>(nd)).array() += m;
    });
  }
  return Field::gridded(cfg.xi_grid, out);
}

Complex berezin_symbol_direct(const BerezinConfig& cfg, const Vec& x, const DualVec& xi, const Grid& yquad) {
  cfg.validate();
  const Symbol& f = cfg.symbol;
  require_closed_form(f, "berezin_symbol_direct");
  if (f.has_point_mass()) throw std::invalid_argument("berezin_symbol_direct: needs zeta-decaying terms");
  const Lie& L = cfg.algebra;
  const int n = f.dim();
  const Grid& zg = cfg.xi_grid.g_grid;
  const Grid& dual = cfg.xi_grid.dual_grid;
  const std::vector<Vec> zs = zg.nodes();
  const std::vector<Vec> zetas = dual.nodes();
  struct Term {
    CVector h;
    std::vector<Complex> g;
  };
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    Term tt;
    tt.h.resize(static_cast<Eigen::Index>(zetas.size()));
    for (std::size_t k = 0; k < zetas.size(); ++k) tt.h(static_cast<Eigen::Index>(k)) = t.dual(zetas[k]);
    for (const auto& z : zs) tt.g.push_back(t.coeff * t.x_factor(z));
    terms.push_back(std::move(tt));
  }
  const double df = dual_factor(n);
  const std::vector<Vec> ys = yquad.nodes();
  CVector outer(static_cast<Eigen::Index>(ys.size()));
  parallel_for(ys.size(), [&](std::size_t iy) {
    const Vec yx = bch<double>(L, -ys[iy], x);
    CVector inner_terms(static_cast<Eigen::Index>(zs.size()));
    for (std::size_t iz = 0; iz < zs.size(); ++iz) {
      const Vec zx = bch<double>(L, zs[iz], x);
      const Vec zyx = bch<double>(L, zs[iz], yx);
      const Complex amp = cfg.window(zx) * std::conj(cfg.window(zyx));
      Complex s{0.0, 0.0};
      if (amp != 0.0) {
        const Vec d = zyx - zx;
        for (const auto& t : terms)
          if (t.g[iz] != 0.0) s += t.g[iz] * df * exp_contract(t.h, dual, d, +1);
      }
      inner_terms(static_cast<Eigen::Index>(iz)) = amp * s;
    }
    outer(static_cast<Eigen::Index>(iy)) = expi(-ys[iy].dot(xi)) * integrate_samples(inner_terms, zg.cell_volume());
  });
  return integrate_samples(outer, yquad.cell_volume());
}

std::vector<Complex> berezin_symbol_convolution(const BerezinConfig& cfg, const std::vector<PhasePoint>& points,
                                                const XiGrid& table, const Grid& yquad) {
  cfg.validate();
  if (!cfg.algebra.is_abelian()) throw std::invalid_argument("berezin_symbol_convolution: abelian groups only");
  const Window& w = cfg.window;
  const std::vector<Vec> ys = yquad.nodes();
  const ExpTransform T(yquad, table.dual_grid, -1);
  const std::size_t ns = table.g_grid.size(), ne = table.dual_grid.size();
  CVector V(static_cast<Eigen::Index>(ns * ne));
  parallel_for(ns, [&](std::size_t is) {
    const Vec s = table.g_grid.node(is);
    CVector row(static_cast<Eigen::Index>(ys.size()));
    for (std::size_t j = 0; j < ys.size(); ++j) row(static_cast<Eigen::Index>(j)) = std::conj(w(Vec(s - ys[j])));
    V.segment(static_cast<Eigen::Index>(is * ne), static_cast<Eigen::Index>(ne)) = w(s) * T(row);
  });
  const std::vector<Vec> ss = table.g_grid.nodes();
  const std::vector<Vec> etas = table.dual_grid.nodes();
  std::vector<Complex> out(points.size());
  parallel_for(points.size(), [&](std::size_t ip) {
    const PhasePoint& p = points[ip];
    CVector terms(V.size());
    for (std::size_t is = 0; is < ns; ++is)
      for (std::size_t ie = 0; ie < ne; ++ie) {
        const auto k = static_cast<Eigen::Index>(is * ne + ie);
        terms(k) = V(k) * cfg.symbol(Vec(ss[is] - p.z), DualVec(etas[ie] - p.zeta));
      }
    out[ip] = integrate_samples(terms, table.measure());
  });
  return out;
}

KernelEvaluator cov_kernel(const CovSymbol& C, const Lie& L, const Window& w) {
  if (!C.is_full) throw std::invalid_argument("cov_kernel: needs the full covariant symbol");
  const CMatrix ct = C.full.transpose();
  const double m2 = C.xi.measure() * C.xi.measure();
  const XiGrid xi = C.xi;
  return {[ct, m2, xi, L, w](const std::vector<Vec>& rows, const std::vector<Vec>& cols) {
            const CMatrix pr = coherent_matrix(L, w, xi, rows);
            const CMatrix pc = coherent_matrix(L, w, xi, cols);
            return CMatrix(m2 * (pr * ct) * pc.adjoint());
          },
          false};
}

Field symbol_of_regularizing(const CovSymbol& C, const Lie& L, const Window& w, const XiGrid& out,
                             const Grid& quad) {
  return symbol_from_kernel(L, cov_kernel(C, L, w), out, quad);
}

double symbol_l2(const Symbol& a, const XiGrid& xi) {
  const CVector s = a.as_field().sample(xi);
  const Eigen::VectorXd p = s.cwiseAbs2();
  return std::sqrt(xi.measure() * pairwise_sum(p.data(), static_cast<std::size_t>(p.size())));
}

}  // namespace nilquant
