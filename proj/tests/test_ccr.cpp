#include <doctest.h>

#include "nilquant/ccr.hpp"
#include "nilquant/random.hpp"

using namespace nilquant;

namespace {

Field gauss(int n) {
  return Field::analytic(Domain::Group, n,
                         [](const Vec& x) { return Complex(std::exp(-0.5 * x.squaredNorm()), 0.1 * x.sum()); });
}

}  // namespace

TEST_CASE("translations and modulations on an abelian group") {
  const Lie A = Lie::abelian(2);
  const Field u = gauss(2);
  Vec z(2), x(2), zeta(2);
  z << 0.4, -1.0;
  x << 0.3, 0.2;
  zeta << 1.5, -0.5;
  CHECK(std::abs(trans_L(A, z, u)(x) - u(x - z)) == 0.0);
  CHECK(std::abs(trans_R(A, z, u)(x) - u(x + z)) == 0.0);
  CHECK(std::abs(mult_M(zeta, u)(x) - expi(x.dot(zeta)) * u(x)) < 1e-15);
}

TEST_CASE("left translation follows the group law on H1") {
  const Lie H = Lie::heisenberg(1);
  Rng rng(3);
  const Field u = gauss(3);
  for (int t = 0; t < 10; ++t) {
    const Vec y = rng.uniform_vec(3, -1, 1), z = rng.uniform_vec(3, -1, 1), x = rng.uniform_vec(3, -1, 1);
    // L_y L_z = L_{yz}
    const Complex a = trans_L(H, y, trans_L(H, z, u))(x);
    const Complex b = trans_L(H, group_mul(H, y, z), u)(x);
    CHECK(std::abs(a - b) < 1e-14);
  }
}

TEST_CASE("verify_ccr passes on abelian and H1") {
  for (const char* name : {"abelian:2", "heisenberg:1"}) {
    const Lie L = Lie::preset(name);
    const Report r = verify_ccr(CcrContext(L, Grid::uniform(L.dim(), 3.0, 5)), 10, 11);
    CHECK(!r.checks.empty());
    for (const auto& c : r.checks) {
      INFO(c.name, " residual ", c.residual, " tol ", c.tolerance);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("ccr context rejects mismatched dimensions") {
  CHECK_THROWS_AS(CcrContext(Lie::heisenberg(1), Grid::uniform(2, 1.0, 4)), std::invalid_argument);
}
