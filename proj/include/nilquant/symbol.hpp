#pragma once

#include "nilquant/field.hpp"
#include "nilquant/lie.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace nilquant {

// zeta-side factor h(zeta) = exp(-|zeta - c|^2 / (2 s^2)) exp(-i <b|zeta>).
// width = +inf gives the flat factor exp(-i <b|zeta>), whose transform is a
// point mass.
struct DualFactor {
  DualVec center;
  double width = std::numeric_limits<double>::infinity();
  Vec shift;

  static DualFactor flat(int n, const Vec& shift);
  static DualFactor flat(int n) { return flat(n, Vec::Zero(n)); }
  static DualFactor gaussian(const DualVec& center, double width, const Vec& shift);
  static DualFactor gaussian(const DualVec& center, double width) {
    return gaussian(center, width, Vec::Zero(center.size()));
  }

  bool is_flat() const { return !std::isfinite(width); }
  Complex operator()(const DualVec& zeta) const;
  // (2 pi)^{-n} int exp(-i <w|zeta>) h(zeta) dzeta; undefined for flat factors.
  Complex transform(const Vec& w) const;
  DualFactor conj() const;
};

struct SymbolTerm {
  Complex coeff{1.0, 0.0};
  Field x_factor;  // analytic on G
  DualFactor dual;
};

// Phase-space symbol f(x, xi). Either a finite sum of separable terms with a
// closed-form zeta transform, a point mass at a phase-space point, or a
// general Xi field (quadrature paths only).
class Symbol {
 public:
  Symbol() = default;

  static Symbol from_terms(int n, std::vector<SymbolTerm> terms);
  static Symbol one(int n);
  // amp * exp(-|x-x0|^2/(2 sx^2)) * exp(-|xi-xi0|^2/(2 sxi^2))
  static Symbol gaussian(const Vec& x0, double sx, const DualVec& xi0, double sxi, Complex amp = 1.0);
  static Symbol mult(const Field& phi);                 // phi (x) 1
  static Symbol conv(const DualVec& c, double width);   // 1 (x) Gaussian
  static Symbol delta(const PhasePoint& p);
  // eps_{z,zeta}(x, xi) = exp(i(<x|zeta> - <z|xi>))
  static Symbol weyl_exponential(const PhasePoint& p);
  static Symbol general(const Field& f);

  int dim() const { return n_; }
  bool is_delta() const { return delta_.has_value(); }
  bool is_general() const { return !general_.empty(); }
  bool has_closed_form() const { return !is_delta() && !is_general(); }
  bool has_point_mass() const;
  const PhasePoint& delta_point() const { return *delta_; }
  const std::vector<SymbolTerm>& terms() const { return terms_; }
  const Field& general_field() const { return general_; }

  Complex operator()(const Vec& x, const DualVec& xi) const;
  Field as_field() const;

  Symbol conj() const;
  // (x, xi) -> f(x z^{-1}, xi)
  Symbol translate_x(const Lie& L, const Vec& z) const;
  // (x, xi) -> f(x, xi - eta)
  Symbol shift_dual(const DualVec& eta) const;

 private:
  int n_ = 0;
  std::vector<SymbolTerm> terms_;
  std::optional<PhasePoint> delta_;
  Field general_;
};

}  // namespace nilquant
