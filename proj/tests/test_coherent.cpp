#include <doctest.h>

#include "nilquant/coherent.hpp"
#include "nilquant/random.hpp"

using namespace nilquant;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Field gauss(int n, double width = 1.0) {
  return Field::analytic(Domain::Group, n, [n, width](const Vec& x) {
    return Complex(std::exp(-0.5 * x.squaredNorm() / (width * width))) * expi(0.2 * x(n - 1));
  });
}

}  // namespace

TEST_CASE("Weyl operators: unit, abelian shift, adjoint round trip") {
  const Lie A = Lie::abelian(1);
  const Field u = gauss(1);
  const PhasePoint p(v1(0.8), v1(-1.1));
  for (double x : {-1.0, 0.0, 0.7}) {
    CHECK(std::abs(weyl(A, PhasePoint::origin(1), u)(v1(x)) - u(v1(x))) == 0.0);
    CHECK(std::abs(weyl(A, p, u)(v1(x)) - expi(-1.1 * x) * u(v1(x - 0.8))) < 1e-15);
    CHECK(std::abs(weyl_adjoint(A, p, u)(v1(x)) - expi(1.1 * (0.8 + x)) * u(v1(x + 0.8))) < 1e-15);
  }

  const Lie H = Lie::heisenberg(1);
  Rng rng(5);
  const Field w = gauss(3);
  double err = 0.0;
  for (int t = 0; t < 20; ++t) {
    const PhasePoint q(rng.uniform_vec(3, -1, 1), rng.uniform_vec(3, -1, 1));
    const Vec x = rng.uniform_vec(3, -1, 1);
    err = std::max(err, std::abs(weyl_adjoint(H, q, weyl(H, q, w))(x) - w(x)));
  }
  CHECK(err <= 1e-12);
}

TEST_CASE("composition factor") {
  const Lie H = Lie::heisenberg(1);
  Rng rng(6);
  const PhasePoint p(rng.uniform_vec(3, -1, 1), rng.uniform_vec(3, -1, 1));
  const PhasePoint q0(rng.uniform_vec(3, -1, 1), DualVec::Zero(3));
  for (int t = 0; t < 5; ++t) {
    const Vec x = rng.uniform_vec(3, -1, 1);
    CHECK(std::abs(weyl_compose_factor(H, p, q0, x) - 1.0) < 1e-15);
  }

  // Abelian: constant in x.
  const Lie A = Lie::abelian(1);
  const PhasePoint a(v1(0.5), v1(0.3)), b(v1(-0.2), v1(1.4));
  const Complex g0 = weyl_compose_factor(A, a, b, v1(0.0));
  CHECK(std::abs(std::abs(g0) - 1.0) < 1e-15);
  for (double x : {-2.0, 0.4, 3.0}) CHECK(std::abs(weyl_compose_factor(A, a, b, v1(x)) - g0) < 1e-14);
}

TEST_CASE("Fourier-Wigner transform of abelian Gaussians") {
  // u = exp(-x^2/2): W_{u,u}(z, zeta) = sqrt(pi) exp(-z^2/4 - zeta^2/4 + i z zeta / 2).
  const Lie A = Lie::abelian(1);
  const Field u = Field::analytic(Domain::Group, 1, [](const Vec& x) { return Complex(std::exp(-0.5 * x(0) * x(0))); });
  const XiGrid xi = XiGrid::uniform(1, 4.0, 16);
  const Grid quad = Grid::uniform(1, 10.0, 128);
  const Field W = fourier_wigner(A, u, u, xi, quad);
  double err = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const PhasePoint p = xi.node(i);
    const double z = p.z(0), s = p.zeta(0);
    const Complex exact = std::sqrt(kPi) * std::exp(-0.25 * (z * z + s * s)) * expi(0.5 * z * s);
    err = std::max(err, std::abs(W.samples()(static_cast<Eigen::Index>(i)) - exact));
  }
  CHECK(err < 1e-4);
  CHECK(std::abs(fourier_wigner_at(A, u, u, PhasePoint::origin(1), quad) - std::sqrt(kPi)) < 1e-12);
}

TEST_CASE("factored and direct Fourier-Wigner agree on H1") {
  const Lie H = Lie::heisenberg(1);
  const Field u = gauss(3, 0.9), v = gauss(3, 1.1);
  const XiGrid xi = XiGrid::uniform(3, 2.0, 3);
  const Grid quad = Grid::uniform(3, 4.0, 9);
  const Field a = fourier_wigner(H, u, v, xi, quad);
  const Field b = fourier_wigner_direct(H, u, v, xi, quad);
  CHECK((a.samples() - b.samples()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("window normalization and coherent states") {
  const Grid g = Grid::uniform(3, 4.0, 11);
  const Window w = Window::gaussian(g, 1.0);
  CHECK(std::abs(l2_norm(w.field().sample(g), g.cell_volume()) - 1.0) < 1e-10);

  const Lie H = Lie::heisenberg(1);
  Rng rng(8);
  const PhasePoint p(rng.uniform_vec(3, -0.5, 0.5), rng.uniform_vec(3, -1, 1));
  const Field c = coherent_state(H, w, p), ref = weyl_adjoint(H, p, w.field());
  for (int t = 0; t < 5; ++t) {
    const Vec x = rng.uniform_vec(3, -1, 1);
    CHECK(std::abs(c(x) - ref(x)) < 1e-15);
  }
  // The reproducing kernel on the diagonal is the squared norm.
  CHECK(std::abs(reproducing_kernel(H, w, p, p, g) - 1.0) < 1e-3);
}

TEST_CASE("Bargmann transform is isometric on abelian n=1") {
  const Lie A = Lie::abelian(1);
  const Grid g = Grid::uniform(1, 10.0, 128);
  const Window w = Window::gaussian(g, 1.0);
  const XiGrid xi = XiGrid::uniform(1, 10.0, 128);
  const Field u = gauss(1, 0.8);
  const double nu = l2_norm(u.sample(g), g.cell_volume());
  const Field B = bargmann(A, w, u, xi, g);
  const double nb = l2_norm(B.samples(), xi.measure());
  CHECK(std::abs(nb / nu - 1.0) < 1e-6);
}
