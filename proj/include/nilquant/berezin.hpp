#pragma once

#include "nilquant/coherent.hpp"
#include "nilquant/symbol.hpp"

namespace nilquant {

struct BerezinConfig {
  Lie algebra;
  Window window;
  Grid g_grid;    // operator grid
  XiGrid xi_grid;  // z- and zeta-quadrature
  Symbol symbol;

  void validate() const;
};

// A family of states omega_{z,zeta}(x) = amplitude(z,x) exp(-i <anchor(z,x)|zeta>).
// Plain, tau-ordered and magnetic coherent states differ only in these maps.
// eval(z, x, anchor) returns the amplitude and writes the anchor.
struct CoherentFamily {
  std::function<Complex(const Vec& z, const Vec& x, Vec& anchor)> eval;
};

CoherentFamily berezin_family(const Lie& L, const Window& w);
Field family_state(const CoherentFamily& fam, const PhasePoint& p, int n);

// Cost guard for z-quadrature assemblies: N_z * rows * cols.
inline constexpr double kAssemblyLimit = 5e9;

// Kernel int int f(z,zeta) omega_{z,zeta}(x) conj omega_{z,zeta}(y) dz dzeta
// at arbitrary points, with the zeta integral done in closed form. Only
// terms with a Gaussian zeta-factor are allowed here.
CMatrix family_kernel(const Symbol& f, const CoherentFamily& fam, const Grid& zgrid, const std::vector<Vec>& rows,
                      const std::vector<Vec>& cols);

// Same kernel sampled on cfg.g_grid; point-mass (zeta-constant) terms give a
// diagonal contribution, general symbols use Xi quadrature, and a point mass
// in Xi gives the rank-one projector of the family.
OperatorMatrix family_operator(const BerezinConfig& cfg, const CoherentFamily& fam);

// sum over Xi nodes of f(Z) omega_Z (x) conj omega_Z (y) * measure.
OperatorMatrix xi_quadrature_operator(const CoherentFamily& fam,
                                      const std::function<Complex(const Vec& z, const DualVec& zeta)>& f,
                                      const XiGrid& xi, const Grid& grid);

OperatorMatrix berezin_matrix(const BerezinConfig& cfg);
CMatrix berezin_kernel(const BerezinConfig& cfg, const std::vector<Vec>& rows, const std::vector<Vec>& cols);

// <Ber(f) u, v> = int f W_{u,omega} conj W_{v,omega} over the Xi grid.
Complex berezin_weak(const BerezinConfig& cfg, const Field& u, const Field& v);

// x -> int phi(z) |omega(zx)|^2 dz, z-quadrature on zgrid.
Field berezin_mult_example(const Lie& L, const Window& w, const Field& phi, const Grid& zgrid);
// Kernel int psi~(zx - zy) omega(zx) conj omega(zy) dz with psi~ the
// (2 pi)^{-n}-normalized zeta transform of psi, both integrals by quadrature.
OperatorMatrix berezin_conv_example(const Lie& L, const Window& w, const Field& psi, const XiGrid& xi,
                                    const Grid& g_grid);

// ||L_z^* Ber(f) L_z - Ber(f(. z^{-1}, .))||_F / ||Ber(f(. z^{-1}, .))||_F
double covariance_check_L(const BerezinConfig& cfg, const Vec& z);

// int f(Z) <omega_p, omega_Z> <omega_Z, omega_q> dZ.
Complex toeplitz_kernel(const BerezinConfig& cfg, const PhasePoint& p, const PhasePoint& q);

struct SchattenCheck {
  double s = 1.0;
  double operator_norm = 0.0;  // ||Ber(f)||_{B^s}
  double symbol_norm = 0.0;    // ||f||_{L^s(Xi)}
  double ratio = 0.0;
  double bound = 0.0;  // 4^{1/s}
  bool violated = false;
};

SchattenCheck schatten_bound_check(const BerezinConfig& cfg, double s, double slack = 5e-2);
SchattenCheck schatten_bound_check(const OperatorMatrix& ber, const BerezinConfig& cfg, double s, double slack = 5e-2);

// ||f||_{L^s(Xi)} by quadrature on the Xi grid (sup over nodes for s = inf).
double symbol_norm(const Symbol& f, const XiGrid& xi, double s);

}  // namespace nilquant
