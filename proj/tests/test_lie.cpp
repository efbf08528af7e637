#include <doctest.h>

#include "nilquant/lie.hpp"
#include "nilquant/oracle.hpp"
#include "nilquant/random.hpp"

using namespace nilquant;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("heisenberg bracket and ad") {
  const Lie H = Lie::heisenberg(1);
  CHECK(max_abs(bracket(H, v3(1, 0, 0), v3(0, 1, 0)) - v3(0, 0, 1)) == 0.0);
  const Vec x = v3(0.3, -1.2, 2.0);
  CHECK(max_abs(bracket(H, x, x)) == 0.0);
  const auto A = ad(H, v3(1, 0, 0));
  CHECK(max_abs(A * v3(0, 1, 0) - v3(0, 0, 1)) == 0.0);
  CHECK(max_abs(A * v3(1, 0, 0)) == 0.0);
  CHECK(max_abs(A * v3(0, 0, 1)) == 0.0);
  CHECK((ad(H, Vec::Zero(3)).array() == 0.0).all());
  const auto B = ad(H, v3(0.7, -0.4, 1.1));
  CHECK((B * B * B).cwiseAbs().maxCoeff() == 0.0);
  CHECK((B * B * v3(0, 0, 5)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS(bracket(H, v3(1, 0, 0), Vec::Zero(2)));
}

TEST_CASE("abelian group law is vector addition") {
  const Lie A = Lie::abelian(3);
  const Vec x = v3(1, 2, 3), y = v3(-0.5, 0.25, 4);
  CHECK(max_abs(bracket(A, x, y)) == 0.0);
  CHECK(max_abs(group_mul(A, x, y) - (x + y)) == 0.0);
}

TEST_CASE("bch unit, inverse and the H1 example") {
  const Lie H = Lie::heisenberg(1);
  CHECK(max_abs(bch(H, v3(1, 0, 0), v3(0, 1, 0)) - v3(1, 1, 0.5)) < 1e-15);
  const Vec x = v3(0.4, -2.0, 0.9);
  CHECK(max_abs(bch(H, x, Vec::Zero(3)) - x) == 0.0);
  CHECK(max_abs(bch(H, Vec::Zero(3), x) - x) == 0.0);
  CHECK(max_abs(bch(H, x, group_inv(x))) < 1e-15);
  CHECK(max_abs(group_inv(x) + x) == 0.0);
}

TEST_CASE("bch agrees with matrix oracles") {
  Rng rng(1234);
  for (const std::string name : {"heisenberg:1", "engel", "upper:4", "upper:5", "upper:7"}) {
    const Lie L = Lie::preset(name);
    const MatrixOracle o = oracle_for(name);
    double err = 0.0, berr = 0.0;
    for (int t = 0; t < 100; ++t) {
      const Vec x = rng.uniform_vec(L.dim(), -1, 1), y = rng.uniform_vec(L.dim(), -1, 1);
      err = std::max(err, max_abs(bch(L, x, y) - oracle_product(o, x, y)));
      berr = std::max(berr, max_abs(bracket(L, x, y) - oracle_bracket(o, x, y)));
    }
    INFO(name);
    CHECK(err <= 1e-12);
    CHECK(berr <= 1e-14);
  }
}

TEST_CASE("bch associativity") {
  Rng rng(99);
  for (const std::string name : {"heisenberg:1", "engel", "upper:6"}) {
    const Lie L = Lie::preset(name);
    double err = 0.0;
    for (int t = 0; t < 100; ++t) {
      const Vec x = rng.uniform_vec(L.dim(), -1, 1), y = rng.uniform_vec(L.dim(), -1, 1),
                z = rng.uniform_vec(L.dim(), -1, 1);
      err = std::max(err, max_abs(bch(L, bch(L, x, y), z) - bch(L, x, bch(L, y, z))));
    }
    INFO(name);
    CHECK(err <= 1e-10);
  }
}

TEST_CASE("bch rejects steps beyond the table") {
  CHECK_THROWS_AS(bch(Lie::upper_triangular(8), Vec::Zero(28), Vec::Zero(28)), std::domain_error);
}

TEST_CASE("pairing and coadjoint") {
  const Lie H = Lie::heisenberg(1);
  Vec a(3), b(3);
  a << 1, 2, 3;
  b << 4, 5, 6;
  CHECK(pairing(a, b) == 32.0);
  CHECK(pairing<double>(Vec::Zero(3), b) == 0.0);
  const Vec x = v3(0.5, -1.5, 2.0), zeta = v3(0.1, 0.2, 0.7);
  CHECK(max_abs(coadjoint(H, x, zeta) - v3(-1.5 * 0.7, -0.5 * 0.7, 0)) < 1e-15);
  CHECK(max_abs(coadjoint(Lie::abelian(3), x, zeta)) == 0.0);
  const Vec z2 = v3(-1, 0.3, 2);
  CHECK(max_abs(coadjoint(H, x, Vec(zeta + 2.0 * z2)) - coadjoint(H, x, zeta) - 2.0 * coadjoint(H, x, z2)) < 1e-15);
}

TEST_CASE("dlambda_left closed form") {
  const Lie H = Lie::heisenberg(1);
  CHECK(dlambda_left(H, v3(1, 0, 0), v3(0, 0, 1), v3(0, 1, 0)) == doctest::Approx(0.5).epsilon(1e-15));
  const Lie A = Lie::abelian(3);
  const Vec Z = v3(0.3, -0.2, 1.0), zeta = v3(2, 1, -1);
  CHECK(dlambda_left(A, Z, zeta, v3(4, 5, 6)) == doctest::Approx(pairing(Z, zeta)));
  CHECK(dlambda_left(H, Z, zeta, Vec::Zero(3)) == doctest::Approx(pairing(Z, zeta)));
  Rng rng(7);
  double err = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Vec z = rng.uniform_vec(3, -1, 1), q = rng.uniform_vec(3, -2, 2), x = rng.uniform_vec(3, -2, 2);
    err = std::max(err, std::abs(dlambda_left(H, z, q, x) - dlambda_left_fd(H, z, q, x, 1e-4)));
  }
  CHECK(err <= 1e-6);
  CHECK_THROWS_AS(dlambda_left(Lie::engel(), Vec::Zero(4), Vec::Zero(4), Vec::Zero(4)), std::domain_error);
}

TEST_CASE("validate_algebra") {
  const AlgebraReport h = validate_algebra(Lie::heisenberg(1));
  CHECK(h.ok());
  CHECK(h.certified_step == 2);
  const AlgebraReport e = validate_algebra(Lie::engel());
  CHECK(e.ok());
  CHECK(e.certified_step == 3);
  CHECK(validate_algebra(Lie::upper_triangular(7)).certified_step == 6);
  const Lie bad(3, {{0, 1, 2, 1.0}, {1, 0, 2, 1.0}});
  const AlgebraReport r = validate_algebra(bad);
  CHECK_FALSE(r.ok());
  CHECK(r.antisymmetry_residual == doctest::Approx(2.0));
  // [e1,e2] = e1 is solvable but not nilpotent
  const AlgebraReport s = validate_algebra(Lie::from_brackets(2, {{0, 1, 0, 1.0}}));
  CHECK_FALSE(s.ok());
}

TEST_CASE("lie core is scalar-generic") {
  using LD = LieAlgebra<long double>;
  const LD H = LD::heisenberg(1);
  VectorN<long double> x(3), y(3);
  x << 1, 0, 0;
  y << 0, 1, 0;
  CHECK(static_cast<double>(bch(H, x, y)(2)) == 0.5);
  CHECK(Lie::heisenberg(1).cast<float>().dim() == 3);
}
