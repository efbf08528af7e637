#pragma once

#include "nilquant/berezin.hpp"
#include "nilquant/covariant.hpp"

namespace nilquant {

// Pseudo-differential symbols share the Symbol representation: Gaussian
// zeta-factors have closed-form partial transforms, flat ones are point masses.
using PdoSymbol = Symbol;

// Kernel values K(rows[i], cols[j]) at arbitrary points.
struct KernelEvaluator {
  std::function<CMatrix(const std::vector<Vec>& rows, const std::vector<Vec>& cols)> eval;
  bool approximate = false;  // values come from interpolated samples
};

// a^_2(x, w) = (2 pi)^{-n} int e^{i<w|xi>} a(x, xi) dxi; closed-form terms only.
Complex symbol_partial_inverse(const Symbol& a, const Vec& x, const Vec& w);

// Kernel K_a(x, y) = a^_2(x, log(x y^{-1})) on grid nodes. Flat terms give a
// multiplication (zero shift) or a lattice shift; a shift that does not map
// the grid to itself is rejected (use op_action).
OperatorMatrix op_quantize(const Lie& L, const Symbol& a, const Grid& grid);
// General Xi symbols: the xi-integral by quadrature on `dual`.
OperatorMatrix op_quantize(const Lie& L, const Symbol& a, const Grid& grid, const Grid& dual);

KernelEvaluator op_kernel(const Lie& L, const Symbol& a);

// (Op(a) u)(x) at arbitrary x: flat terms exactly, the rest by y-quadrature on quad.
Field op_action(const Lie& L, const Symbol& a, const Field& u, const Grid& quad);

// a(x, xi) = int e^{-i<y|xi>} K(x, y^{-1} x) dy on the nodes of xi, y over quad.
Field symbol_from_kernel(const Lie& L, const KernelEvaluator& K, const XiGrid& xi, const Grid& quad);
// Multilinear interpolation of kernel samples; zero outside the box.
KernelEvaluator kernel_evaluator(const OperatorMatrix& K);
// Odd-count grid of lags x_i - x_j of a uniform grid (contains 0).
Grid lag_grid(const Grid& g);

// a_omega(f) on cfg.xi_grid through the Berezin kernel and symbol recovery;
// zeta-flat terms contribute their multiplier exactly.
Field berezin_symbol(const BerezinConfig& cfg, const Grid& quad);
// a_omega(f)(x, xi) by the triple y, z, zeta quadrature (zeta on cfg.xi_grid.dual_grid).
Complex berezin_symbol_direct(const BerezinConfig& cfg, const Vec& x, const DualVec& xi, const Grid& yquad);
// Abelian groups: int int V(s, eta) f(s - x, eta - xi) ds deta with
// V(s, eta) = int e^{-i<y|eta>} omega(s) conj omega(s - y) dy tabulated on `table`.
std::vector<Complex> berezin_symbol_convolution(const BerezinConfig& cfg, const std::vector<PhasePoint>& points,
                                                const XiGrid& table, const Grid& yquad);

// Symbol of T from its full covariant symbol (kernel reconstruction, then recovery).
KernelEvaluator cov_kernel(const CovSymbol& C, const Lie& L, const Window& w);
Field symbol_of_regularizing(const CovSymbol& C, const Lie& L, const Window& w, const XiGrid& out,
                             const Grid& quad);

// ||a||_{L^2(Xi)} with the (2 pi)^{-n} dual factor, quadrature on xi.
double symbol_l2(const Symbol& a, const XiGrid& xi);

}  // namespace nilquant
