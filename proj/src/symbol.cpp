#include "nilquant/symbol.hpp"

#include "nilquant/grid.hpp"

#include <cmath>

namespace nilquant {

DualFactor DualFactor::flat(int n, const Vec& shift) {
  require_dim(shift, n, "DualFactor::flat");
  DualFactor f;
  f.center = DualVec::Zero(n);
  f.shift = shift;
  return f;
}

DualFactor DualFactor::gaussian(const DualVec& center, double width, const Vec& shift) {
  if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("DualFactor: width must be positive");
  require_dim(shift, static_cast<int>(center.size()), "DualFactor::gaussian");
  DualFactor f;
  f.center = center;
  f.width = width;
  f.shift = shift;
  return f;
}

Complex DualFactor::operator()(const DualVec& zeta) const {
  const Complex phase = expi(-shift.dot(zeta));
  if (is_flat()) return phase;
  return std::exp(-(zeta - center).squaredNorm() / (2.0 * width * width)) * phase;
}

Complex DualFactor::transform(const Vec& w) const {
  if (is_flat()) throw std::logic_error("DualFactor::transform: flat factor has a point-mass transform");
  const int n = static_cast<int>(center.size());
  const Vec d = w + shift;
  const double s2 = width * width;
  return dual_factor(n) * std::pow(2.0 * kPi * s2, 0.5 * n) * std::exp(-0.5 * s2 * d.squaredNorm()) *
         expi(-d.dot(center));
}

DualFactor DualFactor::conj() const {
  DualFactor f = *this;
  f.shift = -shift;
  return f;
}

Symbol Symbol::from_terms(int n, std::vector<SymbolTerm> terms) {
  for (const auto& t : terms) {
    if (t.x_factor.dim() != n || t.dual.center.size() != n || t.dual.shift.size() != n)
      throw std::invalid_argument("Symbol: term dimension mismatch");
    if (!t.x_factor.is_analytic()) throw std::invalid_argument("Symbol: x-factors must be analytic");
  }
  Symbol s;
  s.n_ = n;
  s.terms_ = std::move(terms);
  return s;
}

Symbol Symbol::one(int n) {
  return from_terms(n, {{1.0, constant_field(Domain::Group, n, 1.0), DualFactor::flat(n)}});
}

Symbol Symbol::gaussian(const Vec& x0, double sx, const DualVec& xi0, double sxi, Complex amp) {
  const int n = static_cast<int>(x0.size());
  return from_terms(n, {{amp, gaussian_field(Domain::Group, x0, sx, Vec::Zero(n)), DualFactor::gaussian(xi0, sxi)}});
}

Symbol Symbol::mult(const Field& phi) {
  return from_terms(phi.dim(), {{1.0, phi, DualFactor::flat(phi.dim())}});
}

Symbol Symbol::conv(const DualVec& c, double width) {
  const int n = static_cast<int>(c.size());
  return from_terms(n, {{1.0, constant_field(Domain::Group, n, 1.0), DualFactor::gaussian(c, width)}});
}

Symbol Symbol::delta(const PhasePoint& p) {
  Symbol s;
  s.n_ = p.dim();
  s.delta_ = p;
  return s;
}

Symbol Symbol::weyl_exponential(const PhasePoint& p) {
  const int n = p.dim();
  const DualVec zeta = p.zeta;
  Field xf = Field::analytic(Domain::Group, n, [zeta](const Vec& x) { return expi(x.dot(zeta)); });
  return from_terms(n, {{1.0, xf, DualFactor::flat(n, p.z)}});
}

Symbol Symbol::general(const Field& f) {
  if (f.domain() != Domain::Phase || f.dim() % 2 != 0) throw std::invalid_argument("Symbol::general: need a Xi field");
  Symbol s;
  s.n_ = f.dim() / 2;
  s.general_ = f;
  return s;
}

bool Symbol::has_point_mass() const {
  for (const auto& t : terms_)
    if (t.dual.is_flat()) return true;
  return false;
}

Complex Symbol::operator()(const Vec& x, const DualVec& xi) const {
  if (is_delta()) throw std::logic_error("Symbol: a point mass has no pointwise values");
  if (is_general()) {
    Vec p(2 * n_);
    p << x, xi;
    return general_(p);
  }
  Complex s{0.0, 0.0};
  for (const auto& t : terms_) s += t.coeff * t.x_factor(x) * t.dual(xi);
  return s;
}

Field Symbol::as_field() const {
  if (is_general()) return general_;
  const Symbol self = *this;
  const int n = n_;
  return Field::analytic(Domain::Phase, 2 * n, [self, n](const Vec& p) { return self(p.head(n), p.tail(n)); });
}

Symbol Symbol::conj() const {
  Symbol s = *this;
  if (is_delta()) return s;
  if (is_general()) {
    s.general_ = general_.conj();
    return s;
  }
  for (auto& t : s.terms_) {
    t.coeff = std::conj(t.coeff);
    t.x_factor = t.x_factor.conj();
    t.dual = t.dual.conj();
  }
  return s;
}

Symbol Symbol::translate_x(const Lie& L, const Vec& z) const {
  require_dim(z, n_, "Symbol::translate_x");
  Symbol s = *this;
  if (is_delta()) {
    s.delta_->z = bch<double>(L, delta_->z, z);
    return s;
  }
  if (is_general()) {
    const Field g = general_;
    const int n = n_;
    s.general_ = Field::analytic(Domain::Phase, 2 * n, [g, L, z, n](const Vec& p) {
      Vec q(2 * n);
      q << bch<double>(L, p.head(n), -z), p.tail(n);
      return g(q);
    });
    return s;
  }
  for (auto& t : s.terms_) {
    const Field f = t.x_factor;
    t.x_factor = Field::analytic(Domain::Group, n_, [f, L, z](const Vec& x) { return f(bch<double>(L, x, -z)); });
  }
  return s;
}

Symbol Symbol::shift_dual(const DualVec& eta) const {
  require_dim(eta, n_, "Symbol::shift_dual");
  Symbol s = *this;
  if (is_delta()) {
    s.delta_->zeta = delta_->zeta + eta;
    return s;
  }
  if (is_general()) {
    const Field g = general_;
    const int n = n_;
    s.general_ = Field::analytic(Domain::Phase, 2 * n, [g, eta, n](const Vec& p) {
      Vec q(2 * n);
      q << p.head(n), p.tail(n) - eta;
      return g(q);
    });
    return s;
  }
  for (auto& t : s.terms_) {
    // exp(-i<b|zeta - eta>) = exp(i<b|eta>) exp(-i<b|zeta>)
    t.coeff *= expi(t.dual.shift.dot(eta));
    t.dual.center += eta;
  }
  return s;
}

}  // namespace nilquant
