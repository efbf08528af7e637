#include <doctest.h>

#include "nilquant/covariant.hpp"
#include "nilquant/random.hpp"

using namespace nilquant;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

struct Setup {
  Lie L = Lie::abelian(1);
  Grid g = default_operator_grid(1);
  Window w = Window::gaussian(g, 1.0);
};

}  // namespace

TEST_CASE("covariant symbol of the identity is the reproducing kernel") {
  Setup s;
  const OperatorMatrix I = OperatorMatrix::identity(s.g);
  const PhasePoint p(v1(0.3), v1(-0.5)), q(v1(-0.2), v1(0.9));
  CHECK(std::abs(cov(I, s.L, s.w, p, q) - reproducing_kernel(s.L, s.w, p, q, s.g)) < 1e-12);
}

TEST_CASE("covariant symbol of a coherent projector factorizes") {
  Setup s;
  const PhasePoint z(v1(0.4), v1(0.1)), p(v1(0.0), v1(-0.3)), q(v1(0.5), v1(0.6));
  const OperatorMatrix P = projector(s.L, s.w, z, s.g);
  const Complex expect = reproducing_kernel(s.L, s.w, p, z, s.g) * reproducing_kernel(s.L, s.w, z, q, s.g);
  CHECK(std::abs(cov(P, s.L, s.w, p, q) - expect) <= 5e-2);
}

TEST_CASE("covariant symbols are contractions and respect adjoints") {
  Setup s;
  Rng rng(9);
  const BerezinConfig cfg{s.L, s.w, s.g, default_xi_grid(1),
                          Symbol::gaussian(v1(0.2), 1.0, v1(0.1), 0.8, Complex(0.3, 1.0))};
  const OperatorMatrix T = berezin_matrix(cfg);
  const double opnorm = schatten_norm(T, INFINITY);
  const XiGrid xi = XiGrid::uniform(1, 4.0, 8);
  const CovSymbol C = cov_full(T, s.L, s.w, xi);
  CHECK(C.full.cwiseAbs().maxCoeff() <= opnorm * (1 + 1e-6));
  const CovSymbol Cs = cov_full(op_adjoint(T), s.L, s.w, xi);
  CHECK((square_adjoint(C).full - Cs.full).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Berezin transform of 1 and decay of covariant symbols") {
  Setup s;
  const XiGrid xi = XiGrid::uniform(1, 9.0, 24);
  BerezinConfig cfg{s.L, s.w, s.g, xi, Symbol::one(1)};
  for (double z : {-0.5, 0.0, 0.7}) CHECK(std::abs(berezin_transform(cfg, PhasePoint(v1(z), v1(0.3))) - 1.0) <= 5e-2);

  cfg.symbol = Symbol::gaussian(v1(0.0), 1.0, v1(0.0), 1.0);
  cfg.xi_grid = default_xi_grid(1);
  const OperatorMatrix T = berezin_matrix(cfg);
  const XiGrid table = XiGrid::uniform(1, 8.0, 32);
  const DecayReport d = c0_decay_check(cov_diag(T, s.L, s.w, table), {1.0, 3.0, 5.0, 7.0});
  CHECK(d.monotone);
  CHECK(d.decays);

  // Negative control: Cov(Id) = 1 everywhere.
  const DecayReport flat =
      c0_decay_check(cov_diag(OperatorMatrix::identity(s.g), s.L, s.w, table), {1.0, 3.0, 5.0, 7.0});
  CHECK_FALSE(flat.decays);
}

TEST_CASE("box composition of the zero operator") {
  Setup s;
  const XiGrid xi = XiGrid::uniform(1, 4.0, 6);
  const CovSymbol Z = cov_full(OperatorMatrix::zero(s.g), s.L, s.w, xi);
  CHECK(Z.full.cwiseAbs().maxCoeff() == 0.0);
  CHECK(square_compose(Z, Z).full.cwiseAbs().maxCoeff() == 0.0);
}
