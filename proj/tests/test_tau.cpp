#include <doctest.h>

#include "nilquant/random.hpp"
#include "nilquant/tau.hpp"

using namespace nilquant;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

}  // namespace

TEST_CASE("tau maps and the tilde involution") {
  const Lie H = Lie::heisenberg(1);
  Rng rng(31);
  const TauMap sym = symmetric_tau(H);
  const TauMap sym_t = tau_tilde(H, sym);
  const TauMap id_tt = tau_tilde(H, tau_tilde(H, tau_identity()));
  const TauMap unit_t = tau_tilde(H, tau_unit());
  double fixed = 0.0, invol = 0.0, unit = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Vec x = rng.uniform_vec(3, -2, 2);
    fixed = std::max(fixed, (sym_t(x) - sym(x)).cwiseAbs().maxCoeff());
    invol = std::max(invol, (id_tt(x) - x).cwiseAbs().maxCoeff());
    unit = std::max(unit, (unit_t(x) - x).cwiseAbs().maxCoeff());
    CHECK((sym(x) - 0.5 * x).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(fixed <= 1e-12);
  CHECK(invol <= 1e-12);
  CHECK(unit <= 1e-12);

  // Abelian x/2 is its own tilde.
  const Lie A = Lie::abelian(1);
  CHECK(std::abs(tau_tilde(A, tau_scale(0.5))(v1(1.4))(0) - 0.7) < 1e-15);
  CHECK_THROWS(tau_preset("sideways", H));
}

TEST_CASE("adjoint identity for tau-quantization") {
  const Lie A = Lie::abelian(1);
  const Grid g = Grid::uniform(1, 5.0, 32);
  const Symbol a = Symbol::gaussian(v1(0.2), 1.1, v1(-0.3), 0.8, Complex(1.0, 0.5));
  for (const TauMap& tau : {tau_scale(0.3), tau_identity(), symmetric_tau(A)}) {
    const OperatorMatrix lhs = op_adjoint(op_quantize_tau(A, a, tau, g));
    const OperatorMatrix rhs = op_quantize_tau(A, a.conj(), tau_tilde(A, tau), g);
    INFO(tau.name);
    CHECK((lhs.kernel() - rhs.kernel()).cwiseAbs().maxCoeff() <= 1e-10);
  }
  // Real symbol, symmetric tau: Hermitian.
  const Symbol r = Symbol::gaussian(v1(0.0), 1.0, v1(0.4), 1.0);
  CHECK(hermiticity_residual(op_quantize_tau(A, r, symmetric_tau(A), g)) <= 1e-10);
}

TEST_CASE("unit tau reduces to the plain constructions") {
  const Lie H = Lie::heisenberg(1);
  const Grid g = Grid::uniform(3, 3.0, 5);
  const Window w = Window::gaussian(g, 1.0);
  const BerezinConfig cfg{H, w, g, XiGrid::uniform(3, 3.0, 5),
                          Symbol::gaussian(Vec::Zero(3), 0.8, DualVec::Zero(3), 0.9)};
  const OperatorMatrix a = berezin_tau(cfg, tau_unit()), b = berezin_matrix(cfg);
  CHECK((a.kernel() - b.kernel()).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(32);
  const PhasePoint p(rng.uniform_vec(3, -1, 1), rng.uniform_vec(3, -1, 1));
  const Field u = w.field();
  for (int t = 0; t < 5; ++t) {
    const Vec x = rng.uniform_vec(3, -1, 1);
    CHECK(weyl_tau(H, tau_unit(), p, u)(x) == weyl(H, p, u)(x));
    CHECK(coherent_tau(H, tau_unit(), w, p)(x) == coherent_state(H, w, p)(x));
  }
}

TEST_CASE("abelian symmetric tau gives the Weyl-ordered shift") {
  const Lie A = Lie::abelian(1);
  const Field u = gaussian_field(Domain::Group, v1(0.1), 0.9, v1(0.2));
  const PhasePoint p(v1(0.6), v1(-1.2));
  for (double x : {-1.0, 0.3, 1.1}) {
    const Complex expect = expi(-1.2 * (x - 0.3)) * u(v1(x - 0.6));
    CHECK(std::abs(weyl_tau(A, symmetric_tau(A), p, u)(v1(x)) - expect) < 1e-14);
  }
}

TEST_CASE("Ber^tau(1) is the identity for several tau") {
  const Lie A = Lie::abelian(1);
  const Grid g = default_operator_grid(1);
  const Window w = Window::gaussian(g, 1.0);
  const BerezinConfig cfg{A, w, g, default_xi_grid(1), Symbol::one(1)};
  const Field u = gaussian_field(Domain::Group, v1(0.3), 0.9, v1(0.4));
  const CVector us = u.sample(g);
  for (const TauMap& tau : {tau_identity(), symmetric_tau(A), tau_scale(0.25)}) {
    INFO(tau.name);
    CHECK((op_apply(berezin_tau(cfg, tau), us) - us).norm() / us.norm() <= 5e-2);
  }
}

TEST_CASE("unit tau against the plain pseudo-differential quantization") {
  // The two kernels use log(y^{-1} x) and log(x y^{-1}); they coincide on
  // abelian groups and differ on H1 wherever [x, y] != 0.
  const Symbol a1 = Symbol::gaussian(v1(0.1), 1.0, v1(0.2), 0.9);
  const Lie A = Lie::abelian(1);
  const Grid g1 = Grid::uniform(1, 4.0, 24);
  CHECK(frobenius_relative(op_quantize_tau(A, a1, tau_unit(), g1), op_quantize(A, a1, g1)) < 1e-14);

  const Lie H = Lie::heisenberg(1);
  const Grid g3 = Grid::uniform(3, 3.0, 7);
  const Symbol a3 = Symbol::gaussian(Vec::Zero(3), 0.8, DualVec::Constant(3, 0.2), 0.9);
  const OperatorMatrix te = op_quantize_tau(H, a3, tau_unit(), g3), op = op_quantize(H, a3, g3);
  const double rel = frobenius_relative(te, op);
  MESSAGE("H1: ||Op^e - Op||_F / ||Op||_F = " << rel);
  CHECK(rel > 1e-3);
  // Diagonal entries agree: log(x^{-1} x) = log(x x^{-1}) = 0.
  CHECK((te.kernel().diagonal() - op.kernel().diagonal()).cwiseAbs().maxCoeff() < 1e-14);
}
