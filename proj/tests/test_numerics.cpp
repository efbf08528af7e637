#include <doctest.h>

#include <cmath>

#include "nilquant/fourier.hpp"
#include "nilquant/operator.hpp"
#include "nilquant/quadrature.hpp"
#include "nilquant/random.hpp"

using namespace nilquant;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Field gauss1(double c = 0.0) {
  return Field::analytic(Domain::Group, 1,
                         [c](const Vec& x) { return Complex(std::exp(-0.5 * (x(0) - c) * (x(0) - c))); });
}

}  // namespace

TEST_CASE("grid nodes sit inside the box") {
  const Grid g(Vec::Constant(2, 1.5), {4, 7});
  CHECK(g.size() == 28);
  CHECK(g.cell_volume() == doctest::Approx(0.75 * 3.0 / 7.0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.contains(g.node(i)));
    CHECK(g.flat_index(g.multi_index(i)) == i);
  }
  // Last axis fastest.
  CHECK(g.node(1)(0) == g.node(0)(0));
  CHECK(g.node(1)(1) > g.node(0)(1));
  CHECK_THROWS(Grid(Vec::Constant(1, -1.0), {4}));
}

TEST_CASE("integrate: box volume, Gaussian mass, odd symmetry") {
  CHECK(std::abs(integrate(constant_field(Domain::Group, 1, 1.0), Grid::uniform(1, 1.0, 10)) - 2.0) < 1e-14);

  // Standard normal density on [-8, 8]: the missing tail is erfc(8/sqrt 2) ~ 1e-15.
  const Field density = Field::analytic(
      Domain::Group, 1, [](const Vec& x) { return Complex(std::exp(-0.5 * x(0) * x(0)) / std::sqrt(2 * kPi)); });
  const double mass = std::erf(8.0 / std::sqrt(2.0));
  CHECK(std::abs(integrate(density, Grid::uniform(1, 8.0, 128)) - mass) < 1e-6);

  const Field odd =
      Field::analytic(Domain::Group, 2, [](const Vec& x) { return Complex(x(0) * std::exp(-x.squaredNorm())); });
  CHECK(std::abs(integrate(odd, Grid::uniform(2, 3.0, 17))) < 1e-15);
}

TEST_CASE("fourier of a Gaussian") {
  const Grid quad = Grid::uniform(1, 10.0, 256);
  const Grid target = Grid::uniform(1, 6.0, 31);
  const Field F = fourier(gauss1(), quad, target);
  double err = 0.0, imag = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double xi = target.node(i)(0);
    const Complex v = F(target.node(i));
    err = std::max(err, std::abs(v - std::sqrt(2 * kPi) * std::exp(-0.5 * xi * xi)));
    imag = std::max(imag, std::abs(v.imag()));
  }
  CHECK(err < 1e-4);
  CHECK(imag < 1e-10);

  // Shift theorem.
  const double x0 = 0.7;
  for (double xi : {-1.3, 0.0, 0.4, 2.2}) {
    const Complex shifted = fourier_at(gauss1(x0), quad, v1(xi));
    const Complex plain = fourier_at(gauss1(), quad, v1(xi));
    CHECK(std::abs(shifted - expi(-x0 * xi) * plain) < 1e-10);
  }
}

TEST_CASE("inverse fourier round trip and limits") {
  const Grid quad = Grid::uniform(1, 10.0, 256);
  const Field h = gauss1(0.3);
  const Field back = inverse_fourier(fourier(h, quad, quad), quad);
  CHECK(relative_l2(back.sample(quad), h.sample(quad)) < 1e-4);

  // A narrow dual Gaussian of unit mass transforms to nearly (2 pi)^{-1}.
  const double s = 0.05;
  const Field narrow = Field::analytic(Domain::Dual, 1, [s](const Vec& xi) {
    return Complex(std::exp(-0.5 * xi(0) * xi(0) / (s * s)) / (std::sqrt(2 * kPi) * s));
  });
  const Grid dq = Grid::uniform(1, 1.0, 400);
  for (double x : {-1.0, 0.0, 0.5})
    CHECK(std::abs(inverse_fourier_at(narrow, dq, v1(x)) - 1.0 / (2 * kPi)) < 1e-2 / (2 * kPi));
  // Real even w gives a real output.
  CHECK(std::abs(inverse_fourier_at(narrow, dq, v1(0.8)).imag()) < 1e-14);
}

TEST_CASE("gauss-legendre exactness") {
  for (int m : {1, 3, 8, 32}) {
    const GaussRule r = gauss_legendre(m);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int d = 0; d < 2 * m; ++d) {
      double q = 0.0;
      for (std::size_t k = 0; k < r.nodes.size(); ++k) q += r.weights[k] * std::pow(r.nodes[k], d);
      CHECK(q == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("operator matrices: action, adjoint, Schatten norms") {
  const Grid g = Grid::uniform(1, 2.0, 8);
  const double vol = g.cell_volume();
  Rng rng(7);
  CMatrix K(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) K(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  const OperatorMatrix A(g, K);
  CVector u(8);
  for (int i = 0; i < 8; ++i) u(i) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  CHECK((op_apply(A, u) - vol * K * u).norm() < 1e-14);
  CHECK((op_adjoint(A).kernel() - K.adjoint()).norm() == 0.0);
  CHECK(std::abs(op_trace(A) - vol * K.trace()) < 1e-14);

  // Identity: singular values 1, trace = node count.
  const OperatorMatrix I = OperatorMatrix::identity(g);
  CHECK((op_apply(I, u) - u).norm() < 1e-14);
  CHECK(schatten_norm(I, 1.0) == doctest::Approx(8.0));
  CHECK(schatten_norm(I, 2.0) == doctest::Approx(std::sqrt(8.0)));
  CHECK(schatten_norm(I, INFINITY) == doctest::Approx(1.0));

  // Diagonal with known singular values.
  CVector d(8);
  for (int i = 0; i < 8; ++i) d(i) = Complex(0.0, i + 1.0);
  const OperatorMatrix D = multiplication_operator(g, d);
  CHECK(schatten_norm(D, 1.0) == doctest::Approx(36.0));
  CHECK(schatten_norm(D, 3.0) == doctest::Approx(std::cbrt(1296.0)));
  CHECK(schatten_norm(D, 2.0) == doctest::Approx(std::sqrt(204.0)));
  CHECK(schatten_norm(D, INFINITY) == doctest::Approx(8.0));
  CHECK(hermiticity_residual(D) == doctest::Approx(2.0));
  CHECK(hermiticity_residual(I) == 0.0);
  CHECK(min_eigenvalue(I) == doctest::Approx(1.0));
  CHECK_THROWS(schatten_norm(D, 0.5));
}

TEST_CASE("gridded fields interpolate linearly and vanish outside") {
  const Grid g = Grid::uniform(2, 1.0, 6);
  CVector s(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec p = g.node(i);
    s(static_cast<Eigen::Index>(i)) = 2.0 * p(0) - p(1) + 0.5;
  }
  const Field f = Field::gridded(Domain::Group, g, s);
  Vec p(2);
  p << 0.1, -0.37;
  CHECK(std::abs(f(p) - Complex(2 * 0.1 + 0.37 + 0.5)) < 1e-14);
  p << 1.5, 0.0;
  CHECK(f(p) == Complex(0.0));
}
