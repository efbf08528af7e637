#pragma once

#include "nilquant/berezin.hpp"

#include <string>

namespace nilquant {

// c * prod x_k^{powers[k]}
struct Monomial {
  double coef = 0.0;
  std::vector<int> powers;
};

using Polynomial = std::vector<Monomial>;

double poly_eval(const Polynomial& p, const Vec& x);
// d/dx_k
Polynomial poly_derivative(const Polynomial& p, int k);

// 1-form A = sum_k A_k dx^k in exponential coordinates.
struct VectorPotential {
  std::string name = "zero";
  int dim = 0;
  std::function<DualVec(const Vec&)> A;
  // Analytic 2-form coefficients B_ij = d_i A_j - d_j A_i, if known.
  std::function<RMatrix(const Vec&)> curl;
  bool zero = false;  // A == 0: magnetic routines fall through to the plain ones

  DualVec operator()(const Vec& x) const { return A(x); }

  static VectorPotential zero_potential(int n);
  static VectorPotential polynomial(int n, const std::vector<Polynomial>& components, std::string name = "polynomial");
  // A = (-b x2 / 2, b x1 / 2): constant field b dx1 ^ dx2 on R^2.
  static VectorPotential landau(double b);
  // Same 2-form on the first two coordinates of a 3-dimensional group.
  static VectorPotential linear3(double b);
  static VectorPotential preset(const std::string& name);
};

// Gauge function psi with its gradient.
struct GaugeFunction {
  std::function<double(const Vec&)> psi;
  std::function<Vec(const Vec&)> grad;

  static GaugeFunction polynomial(int n, const Polynomial& p);
};

VectorPotential plus_gradient(const VectorPotential& A, const GaugeFunction& g);

struct MagneticField {
  int dim = 0;
  std::function<RMatrix(const Vec&)> B;

  // Analytic curl when available, else central differences with step h.
  static MagneticField from_potential(const VectorPotential& A, double h = 1e-5);
};

inline constexpr int kCirculationNodes = 32;

// [x, y]_s = exp((1 - s) log x + s log y)
Vec segment(const Vec& x, const Vec& y, double s);
// int_0^1 <log y - log x | A([x, y]_s)> ds, Gauss-Legendre with m nodes.
double circulation(const VectorPotential& A, const Vec& x, const Vec& y, int m = kCirculationNodes);
// Flux of B through the flat simplex (p0, p1, p2), oriented by (p1 - p0, p2 - p0).
double flux_simplex(const MagneticField& B, const Vec& p0, const Vec& p1, const Vec& p2, int m = kCirculationNodes);
// Gamma^B(x; y, z): corners x, y^{-1} x, z^{-1} y^{-1} x.
double flux_triangle(const Lie& L, const MagneticField& B, const Vec& x, const Vec& y, const Vec& z,
                     int m = kCirculationNodes);
// Circulation around p0 -> p1 -> p2 -> p0.
double boundary_circulation(const VectorPotential& A, const Vec& p0, const Vec& p1, const Vec& p2,
                            int m = kCirculationNodes);

// [L^A_z u](x) = e^{i Gamma^A[x, z^{-1} x]} u(z^{-1} x)
Field mag_translation(const Lie& L, const VectorPotential& A, const Vec& z, const Field& u, int m = kCirculationNodes);
// W^A(z, zeta) = M_zeta L^A_z and its adjoint.
Field mag_weyl(const Lie& L, const VectorPotential& A, const PhasePoint& p, const Field& u, int m = kCirculationNodes);
Field mag_weyl_adjoint(const Lie& L, const VectorPotential& A, const PhasePoint& p, const Field& u,
                       int m = kCirculationNodes);
Field mag_coherent(const Lie& L, const VectorPotential& A, const Window& w, const PhasePoint& p,
                   int m = kCirculationNodes);
Field mag_wigner(const Lie& L, const VectorPotential& A, const Field& u, const Field& v, const XiGrid& xi,
                 const Grid& quad, int m = kCirculationNodes);

CoherentFamily magnetic_family(const Lie& L, const VectorPotential& A, const Window& w, int m = kCirculationNodes);
OperatorMatrix mag_berezin(const BerezinConfig& cfg, const VectorPotential& A, int m = kCirculationNodes);

// max |L^A_y L^A_z u - e^{i Gamma^B(.; y, z)} L^A_{yz} u| over the points.
double cocycle_residual(const Lie& L, const VectorPotential& A, const MagneticField& B, const Vec& y, const Vec& z,
                        const Field& u, const std::vector<Vec>& points, int m = kCirculationNodes);
// max |L^{A + d psi}_z u - e^{-i psi} L^A_z (e^{i psi} u)| over the points.
double gauge_translation_residual(const Lie& L, const VectorPotential& A, const GaugeFunction& g, const Vec& z,
                                  const Field& u, const std::vector<Vec>& points, int m = kCirculationNodes);
// Frobenius residual of Ber^{A + d psi}_omega(f) against
// Mult(e^{-i psi}) Ber^A_{e^{i psi} omega}(f) Mult(e^{i psi}).
double gauge_berezin_residual(const BerezinConfig& cfg, const VectorPotential& A, const GaugeFunction& g,
                              int m = kCirculationNodes);

}  // namespace nilquant
