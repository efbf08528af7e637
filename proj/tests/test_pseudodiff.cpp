#include <doctest.h>

#include "nilquant/pseudodiff.hpp"
#include "nilquant/random.hpp"

using namespace nilquant;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Field bump(int n, double c) {
  return Field::analytic(Domain::Group, n, [c](const Vec& x) {
    return Complex(std::exp(-0.5 * (x.array() - c).square().sum())) * expi(0.3 * x(0));
  });
}

}  // namespace

TEST_CASE("x-only symbols quantize to multiplication operators") {
  const Lie H = Lie::heisenberg(1);
  const Grid g = Grid::uniform(3, 3.0, 6);
  const Field phi = gaussian_field(Domain::Group, Vec::Zero(3), 1.3, Vec::Zero(3));
  const OperatorMatrix K = op_quantize(H, Symbol::mult(phi), g);
  const OperatorMatrix M = multiplication_operator(g, phi);
  CHECK((K.kernel() - M.kernel()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Op(eps) reproduces the Weyl operator") {
  Rng rng(21);
  for (const char* name : {"abelian:1", "heisenberg:1"}) {
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    const Grid quad = default_operator_grid(n);
    const Field u = bump(n, 0.2);
    for (int t = 0; t < 3; ++t) {
      const PhasePoint p(rng.uniform_vec(n, -1, 1), rng.uniform_vec(n, -1, 1));
      const Field a = op_action(L, Symbol::weyl_exponential(p), u, quad), b = weyl(L, p, u);
      for (int k = 0; k < 5; ++k) {
        const Vec x = rng.uniform_vec(n, -1.5, 1.5);
        CHECK(std::abs(a(x) - b(x)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("xi-only symbols on abelian groups give convolution kernels") {
  const Lie A = Lie::abelian(1);
  const Grid g = Grid::uniform(1, 5.0, 40);
  const OperatorMatrix K = op_quantize(A, Symbol::conv(v1(0.3), 0.8), g);
  double off = 0.0;
  for (Eigen::Index i = 1; i < K.rows(); ++i)
    for (Eigen::Index j = 1; j < K.rows(); ++j)
      off = std::max(off, std::abs(K.kernel()(i, j) - K.kernel()(i - 1, j - 1)));
  CHECK(off <= 1e-8);
}

TEST_CASE("Hilbert-Schmidt norm equals the L2 norm of the symbol") {
  const Lie A = Lie::abelian(1);
  const Grid g = default_operator_grid(1);
  const double sx = 1.2, sxi = 0.9;
  const Symbol a = Symbol::gaussian(v1(0.1), sx, v1(-0.2), sxi);
  const double exact = std::sqrt(sx * sxi / 2.0);
  CHECK(std::abs(schatten_norm(op_quantize(A, a, g), 2.0) / exact - 1.0) <= 2e-2);
  CHECK(std::abs(symbol_l2(a, default_xi_grid(1)) / exact - 1.0) <= 1e-6);
}

TEST_CASE("symbol recovery from kernels") {
  const Lie A = Lie::abelian(1);
  const Grid g = Grid::uniform(1, 6.0, 48);
  // x-nodes on operator-grid nodes, so the lags hit the diagonal exactly.
  const XiGrid out(Grid::uniform(1, 2.0, 16), Grid::uniform(1, 2.0, 8));
  // Identity kernel gives the unit symbol.
  const Field one = symbol_from_kernel(A, kernel_evaluator(OperatorMatrix::identity(g)), out, lag_grid(g));
  CHECK((one.samples().array() - 1.0).abs().maxCoeff() < 1e-10);

  // Round trip on a Gaussian symbol.
  const Symbol a = Symbol::gaussian(v1(0.0), 1.2, v1(0.3), 0.9);
  const Field back = symbol_from_kernel(A, op_kernel(A, a), out, lag_grid(g));
  CHECK(relative_l2(back.samples(), a.as_field().sample(out)) <= 5e-2);
}

TEST_CASE("Berezin symbol: kernel route agrees with direct quadrature") {
  const Lie A = Lie::abelian(1);
  const Grid g = default_operator_grid(1);
  const Window w = Window::gaussian(g, 1.0);
  const XiGrid xi = XiGrid::uniform(1, 6.0, 24);
  const BerezinConfig cfg{A, w, g, xi, Symbol::gaussian(v1(0.2), 1.1, v1(-0.1), 0.9)};
  const Field sym = berezin_symbol(cfg, g);
  const Grid yq = Grid::uniform(1, 10.0, 96);
  for (std::size_t i : {std::size_t(300), std::size_t(290), std::size_t(310)}) {
    const PhasePoint p = xi.node(i);
    const Complex direct = berezin_symbol_direct(cfg, p.z, p.zeta, yq);
    CHECK(std::abs(sym.samples()(static_cast<Eigen::Index>(i)) - direct) <= 1e-6);
  }
}
