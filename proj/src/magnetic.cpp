#include "nilquant/magnetic.hpp"

#include "nilquant/ccr.hpp"
#include "nilquant/quadrature.hpp"

#include <charconv>
#include <cmath>

namespace nilquant {

double poly_eval(const Polynomial& p, const Vec& x) {
  double s = 0.0;
  for (const auto& m : p) {
    double t = m.coef;
    for (std::size_t k = 0; k < m.powers.size(); ++k)
      if (m.powers[k]) t *= std::pow(x(static_cast<Eigen::Index>(k)), m.powers[k]);
    s += t;
  }
  return s;
}

Polynomial poly_derivative(const Polynomial& p, int k) {
  Polynomial out;
  for (const auto& m : p) {
    if (static_cast<std::size_t>(k) >= m.powers.size() || m.powers[k] == 0) continue;
    Monomial d = m;
    d.coef *= m.powers[k];
    d.powers[k] -= 1;
    out.push_back(d);
  }
  return out;
}

VectorPotential VectorPotential::zero_potential(int n) {
  VectorPotential a;
  a.name = "zero";
  a.dim = n;
  a.zero = true;
  a.A = [n](const Vec&) -> DualVec { return DualVec::Zero(n); };
  a.curl = [n](const Vec&) -> RMatrix { return RMatrix::Zero(n, n); };
  return a;
}

VectorPotential VectorPotential::polynomial(int n, const std::vector<Polynomial>& comps, std::string name) {
  if (static_cast<int>(comps.size()) != n) throw std::invalid_argument("VectorPotential: need one polynomial per axis");
  for (const auto& c : comps)
    for (const auto& m : c)
      if (static_cast<int>(m.powers.size()) != n) throw std::invalid_argument("VectorPotential: monomial arity mismatch");
  // d_i A_j
  std::vector<Polynomial> d(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(i * n + j)] = poly_derivative(comps[j], i);
  VectorPotential a;
  a.name = std::move(name);
  a.dim = n;
  a.A = [comps, n](const Vec& x) -> DualVec {
    DualVec v(n);
    for (int k = 0; k < n; ++k) v(k) = poly_eval(comps[static_cast<std::size_t>(k)], x);
    return v;
  };
  a.curl = [d, n](const Vec& x) -> RMatrix {
    RMatrix B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        B(i, j) = poly_eval(d[static_cast<std::size_t>(i * n + j)], x) - poly_eval(d[static_cast<std::size_t>(j * n + i)], x);
    return B;
  };
  bool all_zero = true;
  for (const auto& c : comps)
    for (const auto& m : c)
      if (m.coef != 0.0) all_zero = false;
  a.zero = all_zero;
  return a;
}

namespace {

std::vector<Polynomial> symmetric_gauge(int n, double b) {
  std::vector<Polynomial> c(static_cast<std::size_t>(n));
  std::vector<int> p2(static_cast<std::size_t>(n), 0), p1(static_cast<std::size_t>(n), 0);
  p2[1] = 1;
  p1[0] = 1;
  c[0] = {{-0.5 * b, p2}};
  c[1] = {{0.5 * b, p1}};
  return c;
}

double preset_arg(const std::string& name, std::size_t skip) {
  double v = 0.0;
  const char* b = name.data() + skip;
  const char* e = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) throw std::invalid_argument("bad potential preset '" + name + "'");
  return v;
}

}  // namespace

VectorPotential VectorPotential::landau(double b) {
  return polynomial(2, symmetric_gauge(2, b), "landau:" + std::to_string(b));
}

VectorPotential VectorPotential::linear3(double b) {
  return polynomial(3, symmetric_gauge(3, b), "linear3:" + std::to_string(b));
}

VectorPotential VectorPotential::preset(const std::string& name) {
  if (name.rfind("landau:", 0) == 0) return landau(preset_arg(name, 7));
  if (name.rfind("linear3:", 0) == 0) return linear3(preset_arg(name, 8));
  if (name.rfind("zero:", 0) == 0) return zero_potential(static_cast<int>(preset_arg(name, 5)));
  throw std::invalid_argument("unknown potential preset '" + name + "' (landau:b, linear3:b, zero:n)");
}

GaugeFunction GaugeFunction::polynomial(int n, const Polynomial& p) {
  std::vector<Polynomial> grad;
  for (int k = 0; k < n; ++k) grad.push_back(poly_derivative(p, k));
  return {[p](const Vec& x) { return poly_eval(p, x); },
          [grad, n](const Vec& x) -> Vec {
            Vec g(n);
            for (int k = 0; k < n; ++k) g(k) = poly_eval(grad[static_cast<std::size_t>(k)], x);
            return g;
          }};
}

VectorPotential plus_gradient(const VectorPotential& A, const GaugeFunction& g) {
  VectorPotential out = A;
  out.name = A.name + "+dpsi";
  out.zero = false;
  const auto base = A.A;
  const auto grad = g.grad;
  out.A = [base, grad](const Vec& x) -> DualVec { return base(x) + grad(x); };
  // curl(grad psi) = 0
  return out;
}

MagneticField MagneticField::from_potential(const VectorPotential& A, double h) {
  MagneticField m;
  m.dim = A.dim;
  if (A.curl) {
    m.B = A.curl;
    return m;
  }
  const auto a = A.A;
  const int n = A.dim;
  m.B = [a, n, h](const Vec& x) -> RMatrix {
    RMatrix D(n, n);  // D(i, j) = d_i A_j
    for (int i = 0; i < n; ++i) {
      Vec xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      D.row(i) = ((a(xp) - a(xm)) / (2.0 * h)).transpose();
    }
    return D - D.transpose();
  };
  return m;
}

Vec segment(const Vec& x, const Vec& y, double s) {
  if (x.size() != y.size()) throw std::invalid_argument("segment: dimension mismatch");
  return (1.0 - s) * x + s * y;
}

double circulation(const VectorPotential& A, const Vec& x, const Vec& y, int m) {
  if (A.zero) return 0.0;
  const Vec d = y - x;
  if (d.isZero(0.0)) return 0.0;
  const GaussRule r = gauss_legendre(m);
  double s = 0.0;
  for (std::size_t k = 0; k < r.nodes.size(); ++k) s += r.weights[k] * d.dot(A(segment(x, y, r.nodes[k])));
  return s;
}

double flux_simplex(const MagneticField& B, const Vec& p0, const Vec& p1, const Vec& p2, int m) {
  const Vec u = p1 - p0, v = p2 - p0;
  const GaussRule r = gauss_legendre(m);
  double s = 0.0;
  // Duffy: alpha = s, beta = (1 - s) t, Jacobian (1 - s).
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double a = r.nodes[i];
    double inner = 0.0;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
      const double b = (1.0 - a) * r.nodes[j];
      const Vec p = p0 + a * u + b * v;
      inner += r.weights[j] * u.dot(B.B(p) * v);
    }
    s += r.weights[i] * (1.0 - a) * inner;
  }
  return s;
}

double flux_triangle(const Lie& L, const MagneticField& B, const Vec& x, const Vec& y, const Vec& z, int m) {
  const Vec p1 = bch<double>(L, -y, x);
  const Vec p2 = bch<double>(L, -z, p1);
  return flux_simplex(B, x, p1, p2, m);
}

double boundary_circulation(const VectorPotential& A, const Vec& p0, const Vec& p1, const Vec& p2, int m) {
  return circulation(A, p0, p1, m) + circulation(A, p1, p2, m) + circulation(A, p2, p0, m);
}

Field mag_translation(const Lie& L, const VectorPotential& A, const Vec& z, const Field& u, int m) {
  if (A.zero) return trans_L(L, z, u);
  Field out = Field::analytic(Domain::Group, u.dim(), [L, A, z, u, m](const Vec& x) {
    const Vec zx = bch<double>(L, -z, x);
    return expi(circulation(A, x, zx, m)) * u(zx);
  });
  return out.mark_approximate(u.approximate() || !u.is_analytic());
}

Field mag_weyl(const Lie& L, const VectorPotential& A, const PhasePoint& p, const Field& u, int m) {
  if (A.zero) return weyl(L, p, u);
  Field out = Field::analytic(Domain::Group, u.dim(), [L, A, p, u, m](const Vec& x) {
    const Vec zx = bch<double>(L, -p.z, x);
    return expi(x.dot(p.zeta) + circulation(A, x, zx, m)) * u(zx);
  });
  return out.mark_approximate(u.approximate() || !u.is_analytic());
}

Field mag_weyl_adjoint(const Lie& L, const VectorPotential& A, const PhasePoint& p, const Field& u, int m) {
  if (A.zero) return weyl_adjoint(L, p, u);
  Field out = Field::analytic(Domain::Group, u.dim(), [L, A, p, u, m](const Vec& y) {
    const Vec zy = bch<double>(L, p.z, y);
    return expi(-zy.dot(p.zeta) - circulation(A, zy, y, m)) * u(zy);
  });
  return out.mark_approximate(u.approximate() || !u.is_analytic());
}

Field mag_coherent(const Lie& L, const VectorPotential& A, const Window& w, const PhasePoint& p, int m) {
  return mag_weyl_adjoint(L, A, p, w.field(), m);
}

Field mag_wigner(const Lie& L, const VectorPotential& A, const Field& u, const Field& v, const XiGrid& xi,
                 const Grid& quad, int m) {
  if (A.zero) return fourier_wigner(L, u, v, xi, quad);
  const CVector vbar = v.sample(quad).conjugate();
  const CVector out = factored_wigner(
      [&](const Vec& z, std::size_t iy, const Vec& y) {
        const Complex vb = vbar(static_cast<Eigen::Index>(iy));
        if (vb == 0.0) return Complex(0.0, 0.0);
        const Vec zy = bch<double>(L, -z, y);
        return expi(circulation(A, y, zy, m)) * u(zy) * vb;
      },
      xi, quad);
  Field f = Field::gridded(xi, out);
  return f.mark_approximate(u.approximate() || v.approximate());
}

CoherentFamily magnetic_family(const Lie& L, const VectorPotential& A, const Window& w, int m) {
  if (A.zero) return berezin_family(L, w);
  return {[L, A, w, m](const Vec& z, const Vec& x, Vec& a) {
    a = bch<double>(L, z, x);
    const Complex om = w(a);
    if (om == 0.0) return om;
    return om * expi(-circulation(A, a, x, m));
  }};
}

OperatorMatrix mag_berezin(const BerezinConfig& cfg, const VectorPotential& A, int m) {
  if (A.zero) return berezin_matrix(cfg);
  if (A.dim != cfg.algebra.dim()) throw std::invalid_argument("mag_berezin: potential dimension mismatch");
  if (cfg.symbol.is_delta()) {
    cfg.validate();
    const CVector s = mag_coherent(cfg.algebra, A, cfg.window, cfg.symbol.delta_point(), m).sample(cfg.g_grid);
    return rank_one(cfg.g_grid, s, s);
  }
  return family_operator(cfg, magnetic_family(cfg.algebra, A, cfg.window, m));
}

double cocycle_residual(const Lie& L, const VectorPotential& A, const MagneticField& B, const Vec& y, const Vec& z,
                        const Field& u, const std::vector<Vec>& points, int m) {
  const Field lhs = mag_translation(L, A, y, mag_translation(L, A, z, u, m), m);
  const Field rhs = mag_translation(L, A, bch<double>(L, y, z), u, m);
  double r = 0.0;
  for (const auto& x : points) r = std::max(r, std::abs(lhs(x) - expi(flux_triangle(L, B, x, y, z, m)) * rhs(x)));
  return r;
}

double gauge_translation_residual(const Lie& L, const VectorPotential& A, const GaugeFunction& g, const Vec& z,
                                  const Field& u, const std::vector<Vec>& points, int m) {
  const VectorPotential Ag = plus_gradient(A, g);
  const Field lhs = mag_translation(L, Ag, z, u, m);
  const auto psi = g.psi;
  const Field eu = Field::analytic(Domain::Group, u.dim(), [psi, u](const Vec& x) { return expi(psi(x)) * u(x); });
  const Field mid = mag_translation(L, A, z, eu, m);
  double r = 0.0;
  for (const auto& x : points) r = std::max(r, std::abs(lhs(x) - expi(-psi(x)) * mid(x)));
  return r;
}

double gauge_berezin_residual(const BerezinConfig& cfg, const VectorPotential& A, const GaugeFunction& g, int m) {
  const OperatorMatrix lhs = mag_berezin(cfg, plus_gradient(A, g), m);
  const auto psi = g.psi;
  BerezinConfig twisted = cfg;
  twisted.window = cfg.window.with_phase(
      Field::analytic(Domain::Group, cfg.algebra.dim(), [psi](const Vec& x) { return expi(psi(x)); }));
  CMatrix k = mag_berezin(twisted, A, m).kernel();
  const std::vector<Vec> xs = cfg.g_grid.nodes();
  for (Eigen::Index i = 0; i < k.rows(); ++i)
    for (Eigen::Index j = 0; j < k.cols(); ++j)
      k(i, j) *= expi(psi(xs[static_cast<std::size_t>(j)]) - psi(xs[static_cast<std::size_t>(i)]));
  return frobenius_relative(lhs, OperatorMatrix(cfg.g_grid, std::move(k)));
}

}  // namespace nilquant
