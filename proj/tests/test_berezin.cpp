#include <doctest.h>

#include <limits>

#include "nilquant/berezin.hpp"
#include "nilquant/random.hpp"

using namespace nilquant;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

BerezinConfig abelian_config(Symbol f) {
  const Lie A = Lie::abelian(1);
  const Grid g = default_operator_grid(1);
  return {A, Window::gaussian(g, 1.0), g, default_xi_grid(1), std::move(f)};
}

Field test_vector(double c, double k) {
  return Field::analytic(Domain::Group, 1, [c, k](const Vec& x) {
    return Complex(std::exp(-0.5 * (x(0) - c) * (x(0) - c) / 0.81)) * expi(k * x(0));
  });
}

}  // namespace

TEST_CASE("Ber(1) is the identity on contained vectors") {
  const BerezinConfig cfg = abelian_config(Symbol::one(1));
  const OperatorMatrix B = berezin_matrix(cfg);
  for (double c : {-0.5, 0.0, 0.8}) {
    const CVector u = test_vector(c, 0.4).sample(cfg.g_grid);
    CHECK((op_apply(B, u) - u).norm() / u.norm() < 1e-6);
  }
}

TEST_CASE("trace formula and Hermiticity for a Gaussian symbol") {
  // int f over Xi with the (2 pi)^{-1} dual factor: (2 pi sx^2)^{1/2} (2 pi sxi^2)^{1/2} / (2 pi) = sx sxi.
  const double sx = 1.2, sxi = 0.9;
  const BerezinConfig cfg = abelian_config(Symbol::gaussian(v1(0.3), sx, v1(-0.2), sxi));
  const OperatorMatrix B = berezin_matrix(cfg);
  CHECK(std::abs(op_trace(B) - sx * sxi) / (sx * sxi) < 1e-6);
  CHECK(hermiticity_residual(B) <= 1e-10);
  CHECK(min_eigenvalue(B) >= -1e-8);
}

TEST_CASE("weak form agrees with the assembled matrix") {
  const BerezinConfig cfg = abelian_config(Symbol::gaussian(v1(0.3), 1.1, v1(-0.4), 0.8, Complex(1.0, 0.5)));
  const OperatorMatrix B = berezin_matrix(cfg);
  const Field u = test_vector(0.2, 0.3), v = test_vector(-0.4, -0.6);
  const Complex matrix = inner(op_apply(B, u.sample(cfg.g_grid)), v.sample(cfg.g_grid), cfg.g_grid.cell_volume());
  const Complex weak = berezin_weak(cfg, u, v);
  CHECK(std::abs(matrix - weak) <= 1e-8);
}

TEST_CASE("delta symbol gives the coherent projector exactly") {
  const PhasePoint p(v1(0.4), v1(-0.7));
  const BerezinConfig cfg = abelian_config(Symbol::delta(p));
  const OperatorMatrix B = berezin_matrix(cfg);
  const OperatorMatrix P = projector(cfg.algebra, cfg.window, p, cfg.g_grid);
  CHECK((B.kernel() - P.kernel()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Schatten bound is not violated") {
  const BerezinConfig cfg = abelian_config(Symbol::gaussian(v1(0.0), 1.0, v1(0.0), 1.0));
  for (double s : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
    const SchattenCheck c = schatten_bound_check(cfg, s);
    INFO("s = ", s, " ratio ", c.ratio);
    CHECK(!c.violated);
    CHECK(c.ratio <= c.bound * 1.05);
  }
}

TEST_CASE("multiplier example on H1 matches the direct formula") {
  const Lie H = Lie::heisenberg(1);
  const Grid g = default_operator_grid(3);
  const Window w = Window::gaussian(g, 1.0);
  const Field phi = gaussian_field(Domain::Group, Vec::Zero(3), 1.0, Vec::Zero(3));
  const BerezinConfig cfg{H, w, g, default_xi_grid(3), Symbol::mult(phi)};
  const OperatorMatrix B = berezin_matrix(cfg);
  // Ber(phi (x) 1) is a multiplication operator.
  const CMatrix off = B.kernel() - CMatrix(B.kernel().diagonal().asDiagonal());
  CHECK(off.cwiseAbs().maxCoeff() == 0.0);
  const Field m = berezin_mult_example(H, w, phi, Grid::uniform(3, 4.0, 22));
  const CVector ms = m.sample(g);
  double err = 0.0, top = 0.0;
  for (Eigen::Index i = 0; i < ms.size(); ++i) {
    err = std::max(err, std::abs(B.kernel()(i, i) * g.cell_volume() - ms(i)));
    top = std::max(top, std::abs(ms(i)));
  }
  CHECK(err / top <= 5e-2);
}

TEST_CASE("config validation") {
  BerezinConfig cfg = abelian_config(Symbol::one(2));
  CHECK_THROWS(cfg.validate());
}
