#pragma once

#include "nilquant/field.hpp"
#include "nilquant/lie.hpp"
#include "nilquant/report.hpp"

#include <cstdint>

namespace nilquant {

struct CcrContext {
  Lie algebra;
  Grid grid;

  CcrContext(Lie L, Grid g) : algebra(std::move(L)), grid(std::move(g)) {
    if (grid.dim() != algebra.dim()) throw std::invalid_argument("CcrContext: grid and algebra dimensions differ");
  }
};

Field lambda_field(const DualVec& zeta);
Field eps_field(const DualVec& zeta);

// e^{i<x|zeta>} u(x)
Field mult_M(const DualVec& zeta, const Field& u);
// lambda_zeta(x) u(x)
Field mult_Lambda(const DualVec& zeta, const Field& u);
// u(z^{-1} x)
Field trans_L(const Lie& L, const Vec& z, const Field& u);
// u(x z)
Field trans_R(const Lie& L, const Vec& z, const Field& u);

// Central differences of t -> u(exp(tZ) x) and t -> u(x exp(tZ)).
Field deriv_L(const Lie& L, const Vec& Z, const Field& u, double h = 1e-4);
Field deriv_R(const Lie& L, const Vec& Z, const Field& u, double h = 1e-4);

// Relations of the basic representations checked pointwise at `samples`
// random points. The left-generator bracket is checked as
// [D^L_Y, D^L_Z] = -D^L_{[Y,Z]} (exp(tZ) x is a right-invariant flow).
Report verify_ccr(const CcrContext& ctx, int samples, std::uint64_t seed, double h = 1e-4, double tol_scale = 1.0);

}  // namespace nilquant
