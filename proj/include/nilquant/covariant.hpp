#pragma once

#include "nilquant/berezin.hpp"

namespace nilquant {

// Covariant symbol cov(T)(X, Y) = <T omega_X, omega_Y> sampled on a Xi grid,
// either the full Xi x Xi table or its diagonal Cov(T)(X).
struct CovSymbol {
  XiGrid xi;
  CMatrix full;  // full(i, j) = cov(X_i, X_j)
  CVector diag;
  bool is_full = false;

  Complex operator()(std::size_t i, std::size_t j) const;
  Complex at(std::size_t i) const { return is_full ? full(i, i) : diag(static_cast<Eigen::Index>(i)); }
  std::size_t size() const { return xi.size(); }
};

// Guard on the number of stored Xi x Xi entries.
inline constexpr double kCovFullLimit = 1e7;

Complex cov(const OperatorMatrix& T, const Lie& L, const Window& w, const PhasePoint& p, const PhasePoint& q);

CovSymbol cov_full(const OperatorMatrix& T, const Lie& L, const Window& w, const XiGrid& xi);
CovSymbol cov_diag(const OperatorMatrix& T, const Lie& L, const Window& w, const XiGrid& xi);

// (F box G)(X, Y) = int F(X, Z) G(Z, Y) dZ; F^box(X, Y) = conj F(Y, X).
CovSymbol square_compose(const CovSymbol& F, const CovSymbol& G);
CovSymbol square_adjoint(const CovSymbol& F);

// BT(f)(p) = int f(Z) |<omega_p, omega_Z>|^2 dZ on cfg.xi_grid.
double berezin_transform(const BerezinConfig& cfg, const PhasePoint& p);
// The same at every node of cfg.xi_grid, from the Xi x Xi overlap table.
CVector berezin_transform_grid(const BerezinConfig& cfg);

struct NormBound {
  double p = 1.0;
  double cov_norm = 0.0;       // ||Cov(T)||_{L^p(Xi)}
  double schatten_norm = 0.0;  // ||T||_{B^p}
  double ratio = 0.0;
  bool violated = false;
};

NormBound norm_bound_check(const OperatorMatrix& T, const Lie& L, const Window& w, const XiGrid& xi, double p,
                           double slack = 5e-2);
NormBound norm_bound_check(const OperatorMatrix& T, const CovSymbol& diag, double p, double slack = 5e-2);

struct DecayReport {
  std::vector<double> radii;        // shell lower edges (l-infinity norm on Xi)
  std::vector<double> shell_max;    // max |Cov(T)| in each shell
  double central = 0.0;
  bool monotone = false;
  bool decays = false;  // monotone and last shell <= 0.1 * central
};

// Shells [r_k, r_{k+1}) of the l-infinity norm of (z, zeta); the last shell is
// open-ended inside the box.
DecayReport c0_decay_check(const CovSymbol& diag, const std::vector<double>& radii, double slack = 5e-2);

// K(x, y) = int int cov(Z, Z') omega_{Z'}(x) conj omega_Z(y) dZ dZ'.
OperatorMatrix kernel_from_cov(const CovSymbol& C, const Lie& L, const Window& w, const Grid& grid);

}  // namespace nilquant
