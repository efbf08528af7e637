#pragma once

#include "nilquant/fourier.hpp"
#include "nilquant/lie.hpp"
#include "nilquant/operator.hpp"

#include <functional>

namespace nilquant {

// L2-normalized window; the norm is fixed by quadrature on the grid given at
// construction.
class Window {
 public:
  Window() = default;
  // pi^{-n/4} sigma^{-n/2} exp(-|x-c|^2/(2 sigma^2)), then renormalized.
  static Window gaussian(int n, double sigma, const Vec& center, const Grid& norm_grid);
  static Window gaussian(const Grid& norm_grid, double sigma = 1.0);
  static Window from_field(const Field& f, const Grid& norm_grid);

  Complex operator()(const Vec& x) const { return field_(x); }
  const Field& field() const { return field_; }
  int dim() const { return field_.dim(); }
  double sigma() const { return sigma_; }
  const Vec& center() const { return center_; }

  // x -> phase(x) omega(x) with |phase| = 1; no renormalization.
  Window with_phase(const Field& phase) const;

 private:
  Field field_;
  double sigma_ = 0.0;
  Vec center_;
};

// W(z,zeta) u (x) = e^{i<x|zeta>} u(z^{-1} x)
Field weyl(const Lie& L, const PhasePoint& p, const Field& u);
// W(z,zeta)^* u (y) = e^{-i<zy|zeta>} u(zy)
Field weyl_adjoint(const Lie& L, const PhasePoint& p, const Field& u);
// gamma with W(p) W(q) = Mult(gamma) W(zy, zeta+eta).
Complex weyl_compose_factor(const Lie& L, const PhasePoint& p, const PhasePoint& q, const Vec& x);

// For every z of xi.g_grid: zeta -> int e^{i<y|zeta>} g(z, y) dy on
// xi.dual_grid, the y-integral by quadrature on `quad`. g also receives the
// flat index of y in `quad`. Result is z-major.
using WignerIntegrand = std::function<Complex(const Vec& z, std::size_t iy, const Vec& y)>;
CVector factored_wigner(const WignerIntegrand& g, const XiGrid& xi, const Grid& quad);

// W_{u,v}(z,zeta) = <W(z,zeta) u, v>: change of variables + partial Fourier.
Field fourier_wigner(const Lie& L, const Field& u, const Field& v, const XiGrid& xi, const Grid& quad);
Field fourier_wigner(const Lie& L, const Field& u, const Field& v, const XiGrid& xi);
// Same transform with one G-quadrature per Xi node.
Field fourier_wigner_direct(const Lie& L, const Field& u, const Field& v, const XiGrid& xi, const Grid& quad);
Complex fourier_wigner_at(const Lie& L, const Field& u, const Field& v, const PhasePoint& p, const Grid& quad);

// omega_{z,zeta}(x) = e^{-i<zx|zeta>} omega(zx)
Field coherent_state(const Lie& L, const Window& w, const PhasePoint& p);
OperatorMatrix projector(const Lie& L, const Window& w, const PhasePoint& p, const Grid& grid);

// B u = W_{u,omega}; adjoint h -> int h(Z) omega_Z dZ sampled on `target`.
Field bargmann(const Lie& L, const Window& w, const Field& u, const XiGrid& xi, const Grid& quad);
Field bargmann_adjoint(const Lie& L, const Window& w, const Field& h, const XiGrid& xi, const Grid& target);

// <omega_p, omega_q> by quadrature on `quad`.
Complex reproducing_kernel(const Lie& L, const Window& w, const PhasePoint& p, const PhasePoint& q,
                           const Grid& quad);

// Columns omega_X (X over xi nodes) sampled on `grid`; guarded in size.
CMatrix coherent_matrix(const Lie& L, const Window& w, const XiGrid& xi, const Grid& grid);
CMatrix coherent_matrix(const Lie& L, const Window& w, const XiGrid& xi, const std::vector<Vec>& points);

inline constexpr double kCoherentMatrixLimit = 2e7;

}  // namespace nilquant
