#include <doctest.h>

#include "nilquant/magnetic.hpp"
#include "nilquant/random.hpp"

using namespace nilquant;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Field bump(int n) {
  return Field::analytic(Domain::Group, n, [n](const Vec& x) {
    return Complex(std::exp(-0.5 * x.squaredNorm())) * expi(0.4 * x(0) - 0.2 * x(n - 1));
  });
}

}  // namespace

TEST_CASE("polynomials") {
  // 3 x1^2 x2 - x2
  const Polynomial p = {{3.0, {2, 1}}, {-1.0, {0, 1}}};
  CHECK(poly_eval(p, v2(2.0, 0.5)) == doctest::Approx(5.5));
  CHECK(poly_eval(poly_derivative(p, 0), v2(2.0, 0.5)) == doctest::Approx(6.0));
  CHECK(poly_eval(poly_derivative(p, 1), v2(2.0, 0.5)) == doctest::Approx(11.0));
}

TEST_CASE("Landau potential: curl, circulation and flux") {
  const double b = 0.7;
  const VectorPotential A = VectorPotential::landau(b);
  const MagneticField B = MagneticField::from_potential(A);
  const RMatrix F = B.B(v2(0.3, -1.0));
  CHECK(F(0, 1) == doctest::Approx(b));
  CHECK(F(1, 0) == doctest::Approx(-b));

  // Symmetric gauge along a chord: b/2 (x1 y2 - x2 y1).
  const Vec x = v2(0.2, -0.4), y = v2(1.1, 0.5);
  CHECK(std::abs(circulation(A, x, y) - 0.5 * b * (x(0) * y(1) - x(1) * y(0))) < 1e-14);
  CHECK(std::abs(flux_simplex(B, v2(0, 0), v2(1, 0), v2(0, 1)) - 0.5 * b) < 1e-14);

  // Numerical curl for an opaque potential.
  VectorPotential opaque = A;
  opaque.curl = nullptr;
  CHECK(std::abs(MagneticField::from_potential(opaque).B(x)(0, 1) - b) < 1e-8);
}

TEST_CASE("cocycle and Stokes identities") {
  Rng rng(41);
  for (const char* name : {"abelian:2", "heisenberg:1"}) {
    const Lie L = Lie::preset(name);
    const int n = L.dim();
    const VectorPotential A = n == 2 ? VectorPotential::landau(0.7) : VectorPotential::linear3(0.7);
    const MagneticField B = MagneticField::from_potential(A);
    std::vector<Vec> pts;
    for (int k = 0; k < 10; ++k) pts.push_back(rng.uniform_vec(n, -1.5, 1.5));
    for (int t = 0; t < 3; ++t) {
      const Vec y = rng.uniform_vec(n, -1, 1), z = rng.uniform_vec(n, -1, 1);
      CHECK(cocycle_residual(L, A, B, y, z, bump(n), pts) <= 1e-8);
      const Vec p0 = rng.uniform_vec(n, -1, 1), p1 = rng.uniform_vec(n, -1, 1), p2 = rng.uniform_vec(n, -1, 1);
      CHECK(std::abs(flux_simplex(B, p0, p1, p2) - boundary_circulation(A, p0, p1, p2)) <= 1e-8);
    }
  }
}

TEST_CASE("zero potential reduces to the plain constructions exactly") {
  const Lie H = Lie::heisenberg(1);
  const VectorPotential Z = VectorPotential::zero_potential(3);
  Rng rng(42);
  const Field u = bump(3);
  const PhasePoint p(rng.uniform_vec(3, -1, 1), rng.uniform_vec(3, -1, 1));
  for (int t = 0; t < 5; ++t) {
    const Vec x = rng.uniform_vec(3, -1, 1);
    CHECK(mag_weyl(H, Z, p, u)(x) == weyl(H, p, u)(x));
    CHECK(mag_weyl_adjoint(H, Z, p, u)(x) == weyl_adjoint(H, p, u)(x));
  }
  const Grid g = Grid::uniform(3, 3.0, 5);
  const BerezinConfig cfg{H, Window::gaussian(g, 1.0), g, XiGrid::uniform(3, 3.0, 5),
                          Symbol::gaussian(Vec::Zero(3), 0.8, DualVec::Zero(3), 0.9)};
  CHECK((mag_berezin(cfg, Z).kernel() - berezin_matrix(cfg).kernel()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(VectorPotential::preset("zero:3").zero);
  CHECK_THROWS(VectorPotential::preset("helical:1"));
}

TEST_CASE("gauge covariance") {
  const Lie L = Lie::abelian(2);
  const VectorPotential A = VectorPotential::landau(0.7);
  const GaugeFunction psi = GaugeFunction::polynomial(2, {{1.0, {1, 1}}});
  Rng rng(43);
  std::vector<Vec> pts;
  for (int k = 0; k < 10; ++k) pts.push_back(rng.uniform_vec(2, -1.5, 1.5));
  for (int t = 0; t < 3; ++t)
    CHECK(gauge_translation_residual(L, A, psi, rng.uniform_vec(2, -1, 1), bump(2), pts) <= 1e-8);

  const Grid g = Grid::uniform(2, 4.0, 12);
  const BerezinConfig cfg{L, Window::gaussian(g, 1.0), g, XiGrid::uniform(2, 4.0, 8),
                          Symbol::gaussian(Vec::Zero(2), 1.0, DualVec::Zero(2), 1.0)};
  CHECK(gauge_berezin_residual(cfg, A, psi) <= 5e-2);
}

TEST_CASE("magnetic Ber(1) stays close to the identity") {
  const Lie L = Lie::abelian(2);
  const Grid g = default_operator_grid(2);
  const BerezinConfig cfg{L, Window::gaussian(g, 1.0), g, default_xi_grid(2), Symbol::one(2)};
  const OperatorMatrix B = mag_berezin(cfg, VectorPotential::landau(0.5));
  const CVector u = gaussian_field(Domain::Group, v2(0.2, -0.1), 0.9, v2(0.3, 0.0)).sample(g);
  CHECK((op_apply(B, u) - u).norm() / u.norm() <= 5e-2);
  CHECK(hermiticity_residual(B) <= 1e-10);
}
