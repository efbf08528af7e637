#include <algorithm>
#include <cstdio>

#include "nilquant/ccr.hpp"
#include "nilquant/covariant.hpp"
#include "nilquant/magnetic.hpp"
#include "nilquant/pseudodiff.hpp"
#include "nilquant/tau.hpp"
#include "verify_util.hpp"

namespace nilquant {

using namespace vu;

namespace {

bool is_abelian_name(const std::string& g) { return g.rfind("abelian", 0) == 0; }

BerezinConfig desk_config(const Lie& L, Symbol f) {
  const int n = L.dim();
  const Grid g = default_operator_grid(n);
  return {L, Window::gaussian(g, 1.0), g, default_xi_grid(n), std::move(f)};
}

// Real Gaussian symbol near the origin; x-width 1.2 on R, 0.8 on larger groups
// so that its z-support stays inside the smaller boxes.
Symbol desk_symbol(Rng& rng, int n) {
  const double sx = n == 1 ? 1.2 : 0.8;
  return Symbol::gaussian(rng.uniform_vec(n, -0.3, 0.3), sx, rng.uniform_vec(n, -0.3, 0.3), 0.9);
}

// int f over Xi for Symbol::gaussian(x0, sx, xi0, sxi): (sx sxi)^n.
double gaussian_mass(double sx, double sxi, int n) { return std::pow(sx * sxi, n); }

double max_entry_diff(const CMatrix& a, const CMatrix& b) {
  const double s = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  const double d = (a - b).cwiseAbs().maxCoeff();
  return s == 0.0 ? d : d / s;
}

double count_unequal(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return static_cast<double>(std::max(a.size(), b.size()));
  double c = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a.data()[i] != b.data()[i]) c += 1.0;
  return c;
}

}  // namespace

BerezinResiduals berezin_residuals(const Lie& L, const Grid& g, const XiGrid& xi, Rng& rng) {
  const int n = L.dim();
  const Window w = Window::gaussian(g, 1.0);
  BerezinResiduals r;
  BerezinConfig cfg{L, w, g, xi, Symbol::one(n)};
  const OperatorMatrix one = berezin_matrix(cfg);
  for (int k = 0; k < 5; ++k) {
    const TestGaussian u = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
    const CVector us = u.field.sample(g);
    r.identity = std::max(r.identity, (op_apply(one, us) - us).norm() / us.norm());
  }
  const double sx = n == 1 ? 1.2 : 0.8, sxi = 0.9;
  cfg.symbol = Symbol::gaussian(rng.uniform_vec(n, -0.3, 0.3), sx, rng.uniform_vec(n, -0.3, 0.3), sxi);
  const double mass = gaussian_mass(sx, sxi, n);
  r.trace = std::abs(op_trace(berezin_matrix(cfg)) - mass) / mass;
  return r;
}

Report suite_berezin(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& name : groups_or(o, {"abelian:1", "heisenberg:1"})) {
    Stopwatch sw;
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    BerezinConfig cfg = desk_config(L, Symbol::one(n));
    const OperatorMatrix one = berezin_matrix(cfg);
    double id = 0.0;
    for (int k = 0; k < 5; ++k) {
      const TestGaussian u = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
      const CVector us = u.field.sample(cfg.g_grid);
      id = std::max(id, (op_apply(one, us) - us).norm() / us.norm());
    }
    check(rep, sw, "berezin.identity" + tag(name), id, 5e-2 * o.tol_scale, "5 Gaussian test vectors");

    const double sx = n == 1 ? 1.2 : 0.8, sxi = 0.9;
    cfg.symbol = Symbol::gaussian(rng.uniform_vec(n, -0.3, 0.3), sx, rng.uniform_vec(n, -0.3, 0.3), sxi);
    const OperatorMatrix B = berezin_matrix(cfg);
    const double mass = gaussian_mass(sx, sxi, n);
    check(rep, sw, "berezin.trace" + tag(name), std::abs(op_trace(B) - mass) / mass, 2e-2 * o.tol_scale);
    check(rep, sw, "berezin.hermitian" + tag(name), hermiticity_residual(B), 1e-10 * o.tol_scale);
    check(rep, sw, "berezin.positive" + tag(name), std::max(0.0, -min_eigenvalue(B)), 1e-8 * o.tol_scale, "sup f = 1");
    const Eigen::VectorXd sv = singular_values(B);
    for (double s : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      const double fnorm = symbol_norm(cfg.symbol, cfg.xi_grid, s);
      const double ratio = schatten_norm_from_singular(sv, s) / fnorm;
      const double bound = std::isinf(s) ? 1.0 : std::pow(4.0, 1.0 / s);
      const std::string sn = std::isinf(s) ? "inf" : std::to_string(static_cast<int>(s));
      check(rep, sw, "berezin.schatten_s" + sn + tag(name), ratio, bound * (1.0 + 5e-2 * o.tol_scale),
            "bound " + std::to_string(bound));
    }
  }
  return rep;
}

Report suite_examples(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& name : groups_or(o, {"abelian:1", "heisenberg:1"})) {
    Stopwatch sw;
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    BerezinConfig cfg = desk_config(L, Symbol::one(n));

    const Field phi = gaussian_field(Domain::Group, rng.uniform_vec(n, -0.5, 0.5), 1.0, Vec::Zero(n));
    cfg.symbol = Symbol::mult(phi);
    std::vector<int> fine_counts = cfg.xi_grid.g_grid.counts();
    for (auto& c : fine_counts) c *= 2;
    const Grid zfine(cfg.xi_grid.g_grid.half_width(), fine_counts);
    const OperatorMatrix mult = multiplication_operator(cfg.g_grid, berezin_mult_example(L, cfg.window, phi, zfine));
    check(rep, sw, "examples.multiplier" + tag(name), frobenius_relative(berezin_matrix(cfg), mult),
          5e-2 * o.tol_scale);

    if (is_abelian_name(name)) {
      const DualVec c = rng.uniform_vec(n, -0.5, 0.5);
      const double width = 1.5;
      cfg.symbol = Symbol::conv(c, width);
      const Field psi = Field::analytic(Domain::Dual, n, [c, width](const Vec& xi) {
        return Complex(std::exp(-(xi - c).squaredNorm() / (2.0 * width * width)), 0.0);
      });
      const OperatorMatrix conv = berezin_conv_example(L, cfg.window, psi, cfg.xi_grid, cfg.g_grid);
      check(rep, sw, "examples.convolution" + tag(name), frobenius_relative(berezin_matrix(cfg), conv),
            5e-2 * o.tol_scale);
    }

    const PhasePoint p(rng.uniform_vec(n, -0.5, 0.5), rng.uniform_vec(n, -0.5, 0.5));
    cfg.symbol = Symbol::delta(p);
    const OperatorMatrix proj = projector(L, cfg.window, p, cfg.g_grid);
    check(rep, sw, "examples.delta_projector" + tag(name), count_unequal(berezin_matrix(cfg).kernel(), proj.kernel()),
          0.0, "unequal kernel entries");
  }
  return rep;
}

Report suite_covariance(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& name : groups_or(o, {"abelian:1", "heisenberg:1"})) {
    Stopwatch sw;
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    const BerezinConfig cfg = desk_config(L, desk_symbol(rng, n));
    Vec z = Vec::Zero(n);
    z(0) = n == 1 ? 1.0 : 0.5;
    check(rep, sw, "covariance.left" + tag(name), covariance_check_L(cfg, z), 5e-2 * o.tol_scale);
    DualVec zeta = DualVec::Zero(n);
    zeta(n - 1) = n == 1 ? 1.0 : 0.5;
    check(rep, sw, "covariance.modulation_tau_id" + tag(name), covariance_check_M(cfg, zeta), 5e-2 * o.tol_scale);
  }
  return rep;
}

Report suite_covariant(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& name : groups_or(o, {"abelian:1"})) {
    Stopwatch sw;
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    const Grid g = default_operator_grid(n);
    const XiGrid xi = n == 1 ? XiGrid::uniform(1, 9.0, 24) : XiGrid::uniform(n, 4.0, 5);
    const Window w = Window::gaussian(g, 1.0);
    const BerezinConfig cs{L, w, g, default_xi_grid(n), desk_symbol(rng, n)};
    const BerezinConfig ct{L, w, g, default_xi_grid(n), desk_symbol(rng, n)};
    const OperatorMatrix S = berezin_matrix(cs), T = berezin_matrix(ct);

    const CovSymbol cS = cov_full(S, L, w, xi), cT = cov_full(T, L, w, xi);
    const CovSymbol cST = cov_full(op_compose(S, T), L, w, xi);
    const CovSymbol boxed = square_compose(cT, cS);
    check(rep, sw, "covariant.box_composition" + tag(name), (boxed.full - cST.full).norm() / cST.full.norm(),
          5e-2 * o.tol_scale);

    const NormBound nb = norm_bound_check(T, L, w, xi, 1.0);
    check(rep, sw, "covariant.trace_norm_bound" + tag(name), nb.ratio, 1.0 + 5e-2 * o.tol_scale,
          "||Cov T||_1 / ||T||_B1");

    BerezinConfig bt{L, w, g, xi, ct.symbol};
    const CVector btg = berezin_transform_grid(bt);
    const Complex bt_mass = integrate_samples(btg, xi.measure());
    const Complex f_mass = integrate(ct.symbol.as_field(), xi);
    check(rep, sw, "covariant.bt_mass" + tag(name), std::abs(bt_mass - f_mass) / std::abs(f_mass), 2e-2 * o.tol_scale);

    bt.symbol = Symbol::one(n);
    double one = 0.0;
    for (int k = 0; k < 5; ++k) {
      const PhasePoint p(rng.uniform_vec(n, -1, 1), rng.uniform_vec(n, -1, 1));
      one = std::max(one, std::abs(berezin_transform(bt, p) - 1.0));
    }
    check(rep, sw, "covariant.bt_one" + tag(name), one, 5e-2 * o.tol_scale, "5 central points");

    check(rep, sw, "covariant.kernel_reconstruction" + tag(name), frobenius_relative(kernel_from_cov(cT, L, w, g), T),
          1e-1 * o.tol_scale);
  }
  return rep;
}

Report suite_pseudodiff(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& name : groups_or(o, {"abelian:1", "heisenberg:1"})) {
    Stopwatch sw;
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    const Grid g = default_operator_grid(n);

    const double sx = n == 1 ? 1.2 : 0.8, sxi = 0.9;
    const Symbol a = Symbol::gaussian(rng.uniform_vec(n, -0.3, 0.3), sx, rng.uniform_vec(n, -0.3, 0.3), sxi);
    // ||a||_{L^2(Xi)} in closed form: (pi sx^2)^{n/2} (pi sxi^2)^{n/2} (2 pi)^{-n}, square-rooted.
    const double l2 = std::sqrt(std::pow(sx * sxi / 2.0, n));
    const double hs = schatten_norm(op_quantize(L, a, g), 2.0);
    check(rep, sw, "pseudodiff.hs_unitarity" + tag(name), std::abs(hs / l2 - 1.0), 2e-2 * o.tol_scale);

    double wres = 0.0;
    const TestGaussian u = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
    const std::vector<Vec> pts = random_points(rng, n, 20, 1.5);
    for (int k = 0; k < 5; ++k) {
      const PhasePoint p(rng.uniform_vec(n, -1, 1), rng.uniform_vec(n, -1, 1));
      wres = std::max(wres, max_diff(op_action(L, Symbol::weyl_exponential(p), u.field, g), weyl(L, p, u.field), pts));
    }
    check(rep, sw, "pseudodiff.weyl_symbol" + tag(name), wres, 1e-8 * o.tol_scale);

    if (is_abelian_name(name)) {
      BerezinConfig cfg = desk_config(L, desk_symbol(rng, n));
      const Field sym = berezin_symbol(cfg, cfg.g_grid);
      const OperatorMatrix op = op_quantize(L, Symbol::general(sym), cfg.g_grid, cfg.xi_grid.dual_grid);
      check(rep, sw, "pseudodiff.berezin_symbol" + tag(name), frobenius_relative(op, berezin_matrix(cfg)),
            5e-2 * o.tol_scale);

      // Convolution form at Xi nodes near the origin.
      std::vector<PhasePoint> pts_xi;
      std::vector<Complex> kr;
      for (std::size_t i = 0; i < cfg.xi_grid.size(); i += 97) {
        const PhasePoint p = cfg.xi_grid.node(i);
        if (p.z.cwiseAbs().maxCoeff() > 2.0 || p.zeta.cwiseAbs().maxCoeff() > 2.0) continue;
        pts_xi.push_back(p);
        kr.push_back(sym.samples()(static_cast<Eigen::Index>(i)));
      }
      const std::vector<Complex> conv = berezin_symbol_convolution(cfg, pts_xi, cfg.xi_grid, cfg.g_grid);
      CVector c1(static_cast<Eigen::Index>(conv.size())), c2(static_cast<Eigen::Index>(conv.size()));
      for (std::size_t i = 0; i < conv.size(); ++i) {
        c1(static_cast<Eigen::Index>(i)) = conv[i];
        c2(static_cast<Eigen::Index>(i)) = kr[i];
      }
      check(rep, sw, "pseudodiff.convolution_form" + tag(name), relative_l2(c1, c2), 5e-2 * o.tol_scale,
            std::to_string(conv.size()) + " Xi nodes");
    }
  }
  return rep;
}

Report suite_tau(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& name : groups_or(o, {"abelian:1", "heisenberg:1"})) {
    Stopwatch sw;
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    const Grid g = default_operator_grid(n);
    const double sx = n == 1 ? 1.2 : 0.8;
    const Symbol a =
        Symbol::gaussian(rng.uniform_vec(n, -0.3, 0.3), sx, rng.uniform_vec(n, -0.3, 0.3), 0.9, Complex(1.0, 0.5));
    double adj = 0.0;
    for (const auto& tn : {"symmetric", "id", "scale:0.3"}) {
      const TauMap tau = tau_preset(tn, L);
      const OperatorMatrix K = op_quantize_tau(L, a, tau, g);
      const OperatorMatrix Kt = op_quantize_tau(L, a.conj(), tau_tilde(L, tau), g);
      adj = std::max(adj, max_entry_diff(op_adjoint(K).kernel(), Kt.kernel()));
    }
    check(rep, sw, "tau.adjoint_identity" + tag(name), adj, 1e-10 * o.tol_scale, "tau in {symmetric, id, scale:0.3}");

    const TauMap sym = symmetric_tau(L), symt = tau_tilde(L, sym);
    double fix = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Vec x = rng.uniform_vec(n, -2, 2);
      fix = std::max(fix, (symt(x) - sym(x)).cwiseAbs().maxCoeff());
    }
    check(rep, sw, "tau.symmetric_fixed_point" + tag(name), fix, 1e-12 * o.tol_scale);

    const Symbol real_a = Symbol::gaussian(rng.uniform_vec(n, -0.3, 0.3), sx, rng.uniform_vec(n, -0.3, 0.3), 0.9);
    check(rep, sw, "tau.symmetric_hermitian" + tag(name), hermiticity_residual(op_quantize_tau(L, real_a, sym, g)),
          1e-10 * o.tol_scale);

    // tau = e reductions: identical values, not merely close ones.
    const TauMap e = tau_unit();
    const Window w = Window::gaussian(g, 1.0);
    const TestGaussian u = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
    const std::vector<Vec> pts = random_points(rng, n, 20, 1.5);
    const PhasePoint p(rng.uniform_vec(n, -1, 1), rng.uniform_vec(n, -1, 1));
    double unequal = static_cast<double>(count_unequal(weyl_tau(L, e, p, u.field), weyl(L, p, u.field), pts) +
                                         count_unequal(coherent_tau(L, e, w, p), coherent_state(L, w, p), pts));
    if (n == 1) {
      const BerezinConfig cfg = desk_config(L, desk_symbol(rng, n));
      unequal += count_unequal(berezin_tau(cfg, e).kernel(), berezin_matrix(cfg).kernel());
      const TestGaussian v = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
      unequal += count_unequal(wigner_tau(L, e, u.field, v.field, cfg.xi_grid, cfg.xi_grid.g_grid).samples(),
                               fourier_wigner(L, u.field, v.field, cfg.xi_grid).samples());
    }
    check(rep, sw, "tau.unit_reduction" + tag(name), unequal, 0.0, "unequal values");
  }
  return rep;
}

Report suite_magnetic(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& name : groups_or(o, {"abelian:2", "heisenberg:1"})) {
    Stopwatch sw;
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    if (n < 2) continue;
    const VectorPotential A = n == 2 ? VectorPotential::landau(0.7) : VectorPotential::linear3(0.7);
    const MagneticField B = MagneticField::from_potential(A);
    const std::vector<Vec> pts = random_points(rng, n, 12, 1.5);
    const TestGaussian u = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);

    double cocycle = 0.0, stokes = 0.0;
    for (int k = 0; k < 6; ++k) {
      const Vec y = rng.uniform_vec(n, -1, 1), z = rng.uniform_vec(n, -1, 1);
      cocycle = std::max(cocycle, cocycle_residual(L, A, B, y, z, u.field, pts));
      const Vec p0 = rng.uniform_vec(n, -1.5, 1.5), p1 = rng.uniform_vec(n, -1.5, 1.5),
                p2 = rng.uniform_vec(n, -1.5, 1.5);
      stokes = std::max(stokes, std::abs(flux_simplex(B, p0, p1, p2) - boundary_circulation(A, p0, p1, p2)));
    }
    check(rep, sw, "magnetic.cocycle" + tag(name), cocycle, 1e-8 * o.tol_scale, A.name);
    check(rep, sw, "magnetic.stokes" + tag(name), stokes, 1e-8 * o.tol_scale);

    const VectorPotential zero = VectorPotential::zero_potential(n);
    const Grid g = default_operator_grid(n);
    const XiGrid xi = default_xi_grid(n);
    const Window w = Window::gaussian(g, 1.0);
    const PhasePoint p(rng.uniform_vec(n, -1, 1), rng.uniform_vec(n, -1, 1));
    double unequal =
        static_cast<double>(count_unequal(mag_translation(L, zero, p.z, u.field), trans_L(L, p.z, u.field), pts) +
                            count_unequal(mag_weyl(L, zero, p, u.field), weyl(L, p, u.field), pts) +
                            count_unequal(mag_coherent(L, zero, w, p), coherent_state(L, w, p), pts));
    BerezinConfig cfg{L, w, g, xi, desk_symbol(rng, n)};
    if (n == 2) {
      unequal += count_unequal(mag_berezin(cfg, zero).kernel(), berezin_matrix(cfg).kernel());
      const TestGaussian v = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
      unequal += count_unequal(mag_wigner(L, zero, u.field, v.field, xi, xi.g_grid).samples(),
                               fourier_wigner(L, u.field, v.field, xi).samples());
    }
    check(rep, sw, "magnetic.zero_reduction" + tag(name), unequal, 0.0, "unequal values");

    Polynomial poly;
    {
      std::vector<int> pw(static_cast<std::size_t>(n), 0);
      pw[0] = 1;
      pw[1] = 1;
      poly.push_back({1.0, pw});
      if (n == 3) {
        std::vector<int> p3(3, 0);
        p3[2] = 2;
        poly.push_back({0.3, p3});
      }
    }
    const GaugeFunction gauge = GaugeFunction::polynomial(n, poly);
    double gt = 0.0;
    for (int k = 0; k < 4; ++k)
      gt = std::max(gt, gauge_translation_residual(L, A, gauge, rng.uniform_vec(n, -1, 1), u.field, pts));
    check(rep, sw, "magnetic.gauge_translation" + tag(name), gt, 1e-8 * o.tol_scale);
    check(rep, sw, "magnetic.gauge_berezin" + tag(name), gauge_berezin_residual(cfg, A, gauge), 5e-2 * o.tol_scale);
  }
  return rep;
}

Report suite_convergence(const SuiteOptions& o) {
  Report rep;
  const Lie L = Lie::preset("abelian:1");
  const double half = 10.0;
  // At N = 32 the y-sums repeat in zeta with period 2 pi / h ~ 10, inside the
  // dual box of half-width 10; at N = 64 the period covers the box. Gaussian
  // midpoint sums are otherwise spectrally accurate, so this pair spans the
  // resolution threshold rather than a power-law regime.
  const int coarse = 32;
  struct Level {
    double orth, inv, ident, trace;
  };
  auto level = [&](int N) {
    // Same seed at both levels: identical test data, only the grids change.
    Rng rng(o.seed);
    const XiGrid xi = XiGrid::uniform(1, half, N);
    Level l{};
    l.orth = orthogonality_residual(L, xi, rng);
    l.inv = inversion_residual(L, xi, rng);
    const BerezinResiduals b = berezin_residuals(L, Grid::uniform(1, half, N), xi, rng);
    l.ident = b.identity;
    l.trace = b.trace;
    return l;
  };
  Stopwatch sw;
  const Level a = level(coarse), b = level(2 * coarse);
  const double t = sw.lap();
  auto add = [&](const std::string& what, double r0, double r1) {
    char note[96];
    std::snprintf(note, sizeof note, "N %d -> %d: %.3e -> %.3e", coarse, 2 * coarse, r0, r1);
    rep.add("convergence." + what, r1 / r0, 0.5, t / 4.0, note);
  };
  add("orthogonality", a.orth, b.orth);
  add("inversion", a.inv, b.inv);
  add("berezin_identity", a.ident, b.ident);
  add("berezin_trace", a.trace, b.trace);
  return rep;
}

}  // namespace nilquant
