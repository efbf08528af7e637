#pragma once

#include "nilquant/berezin.hpp"
#include "nilquant/pseudodiff.hpp"

#include <string>

namespace nilquant {

// Continuous map tau: G -> G selecting the ordering of the quantization.
struct TauMap {
  std::string name;  // "e", "id", "symmetric", "scale:t" or custom
  std::function<Vec(const Vec&)> map;

  Vec operator()(const Vec& x) const { return map(x); }
  bool is_unit() const { return name == "e"; }
};

TauMap tau_unit();        // x -> e
TauMap tau_identity();    // x -> x
TauMap tau_scale(double t);  // x -> exp(t log x)
// int_0^1 exp(s log x) ds computed in the chart: x -> exp(log x / 2).
TauMap symmetric_tau(const Lie& L);
TauMap tau_preset(const std::string& name, const Lie& L);

// tau~(x) = tau(x^{-1}) x
TauMap tau_tilde(const Lie& L, const TauMap& tau);

// K(x, y) = a^_2(tau(x y^{-1})^{-1} x, log(y^{-1} x)) on grid nodes; zeta-flat
// terms must be unshifted and give a multiplication by a(tau(e)^{-1} x).
OperatorMatrix op_quantize_tau(const Lie& L, const Symbol& a, const TauMap& tau, const Grid& grid);

// W^tau(z, zeta) u (x) = e^{i<log(tau(z)^{-1} x)|zeta>} u(z^{-1} x)
Field weyl_tau(const Lie& L, const TauMap& tau, const PhasePoint& p, const Field& u);
// W^tau(z, zeta)^* u (y) = e^{-i<log(tau(z)^{-1} z y)|zeta>} u(z y)
Field weyl_tau_adjoint(const Lie& L, const TauMap& tau, const PhasePoint& p, const Field& u);
Field coherent_tau(const Lie& L, const TauMap& tau, const Window& w, const PhasePoint& p);
// <W^tau(z, zeta) u, v> on the Xi grid (substitution t = tau(z)^{-1} y, then partial Fourier).
Field wigner_tau(const Lie& L, const TauMap& tau, const Field& u, const Field& v, const XiGrid& xi, const Grid& quad);

CoherentFamily tau_family(const Lie& L, const TauMap& tau, const Window& w);
OperatorMatrix berezin_tau(const BerezinConfig& cfg, const TauMap& tau);
CMatrix berezin_tau_kernel(const BerezinConfig& cfg, const TauMap& tau, const std::vector<Vec>& rows,
                           const std::vector<Vec>& cols);

// ||M_zeta^* Ber^id(f) M_zeta - Ber^id(f(., . - zeta))||_F / ||Ber^id(f(., . - zeta))||_F
double covariance_check_M(const BerezinConfig& cfg, const DualVec& zeta);

}  // namespace nilquant
