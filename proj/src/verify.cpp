#include "nilquant/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "nilquant/ccr.hpp"
#include "nilquant/coherent.hpp"
#include "nilquant/oracle.hpp"
#include "nilquant/random.hpp"
#include "verify_util.hpp"

namespace nilquant {

namespace vu {

std::vector<std::string> groups_or(const SuiteOptions& o, std::vector<std::string> defaults) {
  return o.groups.empty() ? defaults : o.groups;
}

std::string tag(const std::string& group) { return "[" + group + "]"; }

TestGaussian random_gaussian(Rng& r, int n, double center, double wmin, double wmax, double wave) {
  TestGaussian g;
  g.center = r.uniform_vec(n, -center, center);
  g.width = r.uniform(wmin, wmax);
  g.wave = r.uniform_vec(n, -wave, wave);
  g.field = gaussian_field(Domain::Group, g.center, g.width, g.wave);
  return g;
}

// Product over axes of int exp(-a (x - c1)^2 - b (x - c2)^2 + i k x) dx.
Complex gaussian_inner(const TestGaussian& u, const TestGaussian& v) {
  const double a = 0.5 / (u.width * u.width), b = 0.5 / (v.width * v.width), s = a + b;
  Complex out = 1.0;
  for (Eigen::Index k = 0; k < u.center.size(); ++k) {
    const double c1 = u.center(k), c2 = v.center(k), q = u.wave(k) - v.wave(k);
    const double m = (a * c1 + b * c2) / s;
    out *= std::sqrt(kPi / s) * std::exp(-a * b / s * (c1 - c2) * (c1 - c2) - q * q / (4.0 * s)) * expi(q * m);
  }
  return out;
}

double max_diff(const Field& a, const Field& b, const std::vector<Vec>& pts) {
  double m = 0.0;
  for (const auto& x : pts) m = std::max(m, std::abs(a(x) - b(x)));
  return m;
}

std::size_t count_unequal(const Field& a, const Field& b, const std::vector<Vec>& pts) {
  std::size_t c = 0;
  for (const auto& x : pts)
    if (a(x) != b(x)) ++c;
  return c;
}

std::vector<Vec> random_points(Rng& r, int n, std::size_t count, double range) {
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(r.uniform_vec(n, -range, range));
  return out;
}

}  // namespace vu

using namespace vu;

Report suite_lie(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& name : groups_or(o, {"heisenberg:1", "engel"})) {
    Stopwatch sw;
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    if (name == "heisenberg:1" || name == "engel" || name.rfind("upper:", 0) == 0) {
      const MatrixOracle orc = oracle_for(name);
      double err = 0.0;
      for (int k = 0; k < 100; ++k) {
        const Vec x = rng.uniform_vec(n, -1, 1), y = rng.uniform_vec(n, -1, 1);
        err = std::max(err, (bch<double>(L, x, y) - oracle_product(orc, x, y)).cwiseAbs().maxCoeff());
      }
      check(rep, sw, "lie.bch_oracle" + tag(name), err, 1e-10 * o.tol_scale);
    }
    double assoc = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Vec x = rng.uniform_vec(n, -1, 1), y = rng.uniform_vec(n, -1, 1), z = rng.uniform_vec(n, -1, 1);
      assoc = std::max(
          assoc,
          (bch<double>(L, bch<double>(L, x, y), z) - bch<double>(L, x, bch<double>(L, y, z))).cwiseAbs().maxCoeff());
    }
    check(rep, sw, "lie.associativity" + tag(name), assoc, 1e-10 * o.tol_scale);
    const AlgebraReport ar = validate_algebra(L);
    check(rep, sw, "lie.validate" + tag(name), static_cast<double>(ar.failures.size()), 0.0,
          "certified step " + std::to_string(ar.certified_step));
  }
  return rep;
}

Report suite_ccr(const SuiteOptions& o) {
  Report rep;
  for (const auto& name : groups_or(o, {"abelian:1", "heisenberg:1"})) {
    const Lie L = Lie::preset(name);
    rep.append(verify_ccr(CcrContext(L, default_operator_grid(L.dim())), 20, o.seed, 1e-4, o.tol_scale));
  }
  return rep;
}

Report suite_weyl(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& name : groups_or(o, {"heisenberg:1"})) {
    Stopwatch sw;
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    double comp = 0.0, round = 0.0;
    for (int k = 0; k < 20; ++k) {
      const TestGaussian u = random_gaussian(rng, n, 0.5, 0.8, 1.2, 1.0);
      const PhasePoint p(rng.uniform_vec(n, -1, 1), rng.uniform_vec(n, -1, 1));
      const PhasePoint q(rng.uniform_vec(n, -1, 1), rng.uniform_vec(n, -1, 1));
      const Vec x = rng.uniform_vec(n, -1.5, 1.5);
      const Complex lhs = weyl(L, p, weyl(L, q, u.field))(x);
      const PhasePoint pq(bch<double>(L, p.z, q.z), p.zeta + q.zeta);
      const Complex rhs = weyl_compose_factor(L, p, q, x) * weyl(L, pq, u.field)(x);
      comp = std::max(comp, std::abs(lhs - rhs));
      round = std::max(round, std::abs(weyl_adjoint(L, p, weyl(L, p, u.field))(x) - u.field(x)));
    }
    check(rep, sw, "weyl.composition" + tag(name), comp, 1e-12 * o.tol_scale);
    check(rep, sw, "weyl.adjoint_round_trip" + tag(name), round, 1e-12 * o.tol_scale);
  }
  return rep;
}

double orthogonality_residual(const Lie& L, const XiGrid& xi, Rng& rng) {
  const int n = L.dim();
  const TestGaussian u = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
  const TestGaussian u2 = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
  const TestGaussian v = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
  const TestGaussian v2 = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
  const CVector w1 = fourier_wigner(L, u.field, v.field, xi).samples();
  const CVector w2 = fourier_wigner(L, u2.field, v2.field, xi).samples();
  const Complex lhs = xi.measure() * w2.dot(w1);
  const Complex rhs = gaussian_inner(u, u2) * gaussian_inner(v2, v);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double inversion_residual(const Lie& L, const XiGrid& xi, Rng& rng) {
  const Window w = Window::gaussian(xi.g_grid, 1.0);
  const TestGaussian u = random_gaussian(rng, L.dim(), 0.5, 0.8, 1.2, 0.5);
  const Field h = bargmann(L, w, u.field, xi, xi.g_grid);
  const Field back = bargmann_adjoint(L, w, h, xi, xi.g_grid);
  return relative_l2(back.samples(), u.field.sample(xi.g_grid));
}

// <u, omega_X> against int (B u)(Z) <omega_Z, omega_X> dZ with the overlap
// taken as conj W_{omega_X, omega}(Z).
double reproducing_residual(const Lie& L, const XiGrid& xi, Rng& rng, int points) {
  const int n = L.dim();
  const Window w = Window::gaussian(xi.g_grid, 1.0);
  const TestGaussian u = random_gaussian(rng, n, 0.5, 0.8, 1.2, 0.5);
  const CVector h = bargmann(L, w, u.field, xi, xi.g_grid).samples();
  const Grid fine(xi.g_grid.half_width(), [&] {
    std::vector<int> c = xi.g_grid.counts();
    for (auto& k : c) k *= 2;
    return c;
  }());
  const CVector us = u.field.sample(fine);
  CVector lhs(points), rhs(points);
  for (int k = 0; k < points; ++k) {
    const PhasePoint X(rng.uniform_vec(n, -0.5, 0.5), rng.uniform_vec(n, -0.5, 0.5));
    const Field wx = coherent_state(L, w, X);
    const CVector ov = fourier_wigner(L, wx, w.field(), xi).samples();
    lhs(k) = xi.measure() * ov.dot(h);
    rhs(k) = inner(us, wx.sample(fine), fine.cell_volume());
  }
  return relative_l2(lhs, rhs);
}

namespace {

struct DeskCase {
  std::string name;
  double tol;
};

std::vector<DeskCase> desk_cases(const SuiteOptions& o, double abelian_tol, double other_tol) {
  std::vector<DeskCase> out;
  for (const auto& g : groups_or(o, {"abelian:1", "heisenberg:1"}))
    out.push_back({g, g.rfind("abelian", 0) == 0 ? abelian_tol : other_tol});
  return out;
}

}  // namespace

Report suite_orthogonality(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& c : desk_cases(o, 2e-2, 5e-2)) {
    Stopwatch sw;
    const Lie L = Lie::preset(c.name);
    const XiGrid xi = default_xi_grid(L.dim());
    const int quads = L.dim() == 1 ? 3 : 2;
    double r = 0.0;
    for (int k = 0; k < quads; ++k) r = std::max(r, orthogonality_residual(L, xi, rng));
    check(rep, sw, "orthogonality.relations" + tag(c.name), r, c.tol * o.tol_scale,
          std::to_string(quads) + " Gaussian quadruples");
  }
  return rep;
}

Report suite_inversion(const SuiteOptions& o) {
  Report rep;
  Rng rng(o.seed);
  for (const auto& c : desk_cases(o, 5e-2, 5e-2)) {
    Stopwatch sw;
    const Lie L = Lie::preset(c.name);
    const XiGrid xi = default_xi_grid(L.dim());
    check(rep, sw, "inversion.bargmann_round_trip" + tag(c.name), inversion_residual(L, xi, rng), c.tol * o.tol_scale);
    check(rep, sw, "inversion.reproducing" + tag(c.name), reproducing_residual(L, xi, rng, 4), c.tol * o.tol_scale);
  }
  return rep;
}

const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> reg = {
      {"lie", "BCH against matrix oracles, associativity, algebra validation", suite_lie},
      {"ccr", "multiplication and commutation relations of the basic representations", suite_ccr},
      {"weyl", "Weyl composition law and adjoint round trip", suite_weyl},
      {"orthogonality", "orthogonality relations of the Fourier-Wigner transform", suite_orthogonality},
      {"inversion", "Bargmann inversion and reproducing formulas", suite_inversion},
      {"berezin", "identity, trace, Hermiticity, positivity and Schatten bounds", suite_berezin},
      {"examples", "multiplication, convolution and point-mass examples", suite_examples},
      {"covariance", "left-translation and modulation covariance", suite_covariance},
      {"covariant", "box composition, norm bound, Berezin transform, kernel reconstruction", suite_covariant},
      {"pseudodiff", "Hilbert-Schmidt unitarity, Weyl symbols, Berezin symbols", suite_pseudodiff},
      {"tau", "tau-ordered quantization identities", suite_tau},
      {"magnetic", "cocycle, Stokes, zero-potential reductions, gauge covariance", suite_magnetic},
      {"convergence", "residual decrease under grid refinement", suite_convergence},
  };
  return reg;
}

const SuiteInfo& find_suite(const std::string& name) {
  for (const auto& s : suite_registry())
    if (s.name == name) return s;
  std::string known;
  for (const auto& s : suite_registry()) known += (known.empty() ? "" : ", ") + s.name;
  throw std::invalid_argument("unknown suite '" + name + "' (known: " + known + ", all)");
}

Report run_suites(const std::vector<std::string>& names, const SuiteOptions& opts) {
  if (names.empty()) throw std::invalid_argument("no suite names given");
  std::vector<const SuiteInfo*> todo;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& s : suite_registry()) todo.push_back(&s);
    } else {
      todo.push_back(&find_suite(n));
    }
  }
  Report rep;
  for (const auto* s : todo) rep.append(s->run(opts));
  return rep;
}

}  // namespace nilquant
