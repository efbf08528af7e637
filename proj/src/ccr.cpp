#include "nilquant/ccr.hpp"

#include "nilquant/random.hpp"

#include <algorithm>
#include <cmath>

namespace nilquant {

Field lambda_field(const DualVec& zeta) {
  return Field::analytic(Domain::Group, static_cast<int>(zeta.size()),
                         [zeta](const Vec& x) { return Complex(x.dot(zeta), 0.0); });
}

Field eps_field(const DualVec& zeta) {
  return Field::analytic(Domain::Group, static_cast<int>(zeta.size()), [zeta](const Vec& x) { return expi(x.dot(zeta)); });
}

Field mult_M(const DualVec& zeta, const Field& u) {
  Field out = Field::analytic(Domain::Group, u.dim(), [zeta, u](const Vec& x) { return expi(x.dot(zeta)) * u(x); });
  return out.mark_approximate(u.approximate());
}

Field mult_Lambda(const DualVec& zeta, const Field& u) {
  Field out = Field::analytic(Domain::Group, u.dim(), [zeta, u](const Vec& x) { return x.dot(zeta) * u(x); });
  return out.mark_approximate(u.approximate());
}

Field trans_L(const Lie& L, const Vec& z, const Field& u) {
  require_dim(z, L.dim(), "trans_L");
  Field out = Field::analytic(Domain::Group, u.dim(), [L, z, u](const Vec& x) { return u(bch<double>(L, -z, x)); });
  return out.mark_approximate(u.approximate() || !u.is_analytic());
}

Field trans_R(const Lie& L, const Vec& z, const Field& u) {
  require_dim(z, L.dim(), "trans_R");
  Field out = Field::analytic(Domain::Group, u.dim(), [L, z, u](const Vec& x) { return u(bch<double>(L, x, z)); });
  return out.mark_approximate(u.approximate() || !u.is_analytic());
}

Field deriv_L(const Lie& L, const Vec& Z, const Field& u, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("deriv_L: step must be positive");
  require_dim(Z, L.dim(), "deriv_L");
  const Vec hz = h * Z;
  Field out = Field::analytic(Domain::Group, u.dim(), [L, hz, u, h](const Vec& x) {
    return (u(bch<double>(L, hz, x)) - u(bch<double>(L, -hz, x))) / (2.0 * h);
  });
  return out.mark_approximate(u.approximate());
}

Field deriv_R(const Lie& L, const Vec& Z, const Field& u, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("deriv_R: step must be positive");
  require_dim(Z, L.dim(), "deriv_R");
  const Vec hz = h * Z;
  Field out = Field::analytic(Domain::Group, u.dim(), [L, hz, u, h](const Vec& x) {
    return (u(bch<double>(L, x, hz)) - u(bch<double>(L, x, -hz))) / (2.0 * h);
  });
  return out.mark_approximate(u.approximate());
}

namespace {

double max_diff(const Field& a, const Field& b, const std::vector<Vec>& pts) {
  double m = 0.0;
  for (const auto& x : pts) m = std::max(m, std::abs(a(x) - b(x)));
  return m;
}

}  // namespace

Report verify_ccr(const CcrContext& ctx, int samples, std::uint64_t seed, double h, double tol_scale) {
  const Lie& L = ctx.algebra;
  const int n = L.dim();
  Rng rng(seed);
  Report rep;
  const std::string tag = "." + L.name();

  std::vector<Vec> pts;
  for (int i = 0; i < samples; ++i) {
    Vec x(n);
    for (int k = 0; k < n; ++k) x(k) = rng.uniform(-0.5, 0.5) * ctx.grid.half_width()(k);
    pts.push_back(x);
  }
  const Field u = gaussian_field(Domain::Group, rng.uniform_vec(n, -1, 1), 1.0, rng.uniform_vec(n, -1, 1));
  const Vec y = rng.uniform_vec(n, -1, 1), z = rng.uniform_vec(n, -1, 1);
  const Vec Y = rng.uniform_vec(n, -1, 1), Z = rng.uniform_vec(n, -1, 1);
  const DualVec eta = rng.uniform_vec(n, -1, 1), zeta = rng.uniform_vec(n, -1, 1);

  Stopwatch sw;
  rep.add("ccr.mult_MM" + tag, max_diff(mult_M(eta, mult_M(zeta, u)), mult_M(eta + zeta, u), pts), 1e-10 * tol_scale,
          sw.lap());
  rep.add("ccr.mult_LL" + tag, max_diff(trans_L(L, y, trans_L(L, z, u)), trans_L(L, bch<double>(L, y, z), u), pts),
          1e-10 * tol_scale, sw.lap());
  rep.add("ccr.mult_RR" + tag, max_diff(trans_R(L, y, trans_R(L, z, u)), trans_R(L, bch<double>(L, y, z), u), pts),
          1e-10 * tol_scale, sw.lap());
  {
    // L_z M_zeta = e^{i<log(z^{-1}x) - log x | zeta>} M_zeta L_z
    const Field lhs = trans_L(L, z, mult_M(zeta, u));
    const Field rml = mult_M(zeta, trans_L(L, z, u));
    const Field rhs = Field::analytic(Domain::Group, n, [L, z, zeta, rml](const Vec& x) {
      return expi((bch<double>(L, -z, x) - x).dot(zeta)) * rml(x);
    });
    rep.add("ccr.mixed_LM" + tag, max_diff(lhs, rhs, pts), 1e-10 * tol_scale, sw.lap());
  }
  rep.add("ccr.commute_LR" + tag, max_diff(trans_L(L, y, trans_R(L, z, u)), trans_R(L, z, trans_L(L, y, u)), pts),
          1e-10 * tol_scale, sw.lap());

  const Vec YZ = bracket<double>(L, Y, Z);
  {
    const Field lhs1 = deriv_L(L, Y, deriv_L(L, Z, u, h), h);
    const Field lhs2 = deriv_L(L, Z, deriv_L(L, Y, u, h), h);
    const Field rhs = deriv_L(L, YZ, u, h);
    double m = 0.0;
    for (const auto& x : pts) m = std::max(m, std::abs(lhs1(x) - lhs2(x) + rhs(x)));
    rep.add("ccr.bracket_left" + tag, m, 1e-5 * tol_scale, sw.lap());
  }
  {
    const Field lhs1 = deriv_R(L, Y, deriv_R(L, Z, u, h), h);
    const Field lhs2 = deriv_R(L, Z, deriv_R(L, Y, u, h), h);
    const Field rhs = deriv_R(L, YZ, u, h);
    double m = 0.0;
    for (const auto& x : pts) m = std::max(m, std::abs(lhs1(x) - lhs2(x) - rhs(x)));
    rep.add("ccr.bracket_right" + tag, m, 1e-5 * tol_scale, sw.lap());
  }
  {
    // [D^L_Z, Lambda_zeta] u = (D^L_Z lambda_zeta) u
    const Field a = deriv_L(L, Z, mult_Lambda(zeta, u), h);
    const Field b = mult_Lambda(zeta, deriv_L(L, Z, u, h));
    double m = 0.0;
    for (const auto& x : pts) {
      const double dl = L.step() <= 2 ? dlambda_left<double>(L, Z, zeta, x) : dlambda_left_fd<double>(L, Z, zeta, x, h);
      m = std::max(m, std::abs(a(x) - b(x) - dl * u(x)));
    }
    rep.add("ccr.generator_lambda" + tag, m, 1e-6 * tol_scale, sw.lap());
  }
  return rep;
}

}  // namespace nilquant
