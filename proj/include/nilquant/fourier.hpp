#pragma once

#include "nilquant/field.hpp"

namespace nilquant {

// vol * sum f(node), pairwise-summed.
Complex integrate(const Field& f, const Grid& grid);
// Xi quadrature with the (2 pi)^{-n} dual factor: measure() * sum f(node).
Complex integrate(const Field& f, const XiGrid& xi);
Complex integrate_samples(const CVector& values, double weight);

// out(t) = vol(from) * sum_y exp(sign * i <y|t>) data(y), axis by axis.
class ExpTransform {
 public:
  ExpTransform(const Grid& from, const Grid& to, int sign);
  CVector operator()(const CVector& data) const;
  const Grid& from() const { return from_; }
  const Grid& to() const { return to_; }

 private:
  Grid from_, to_;
  std::vector<CMatrix> axis_;
};

CVector exp_transform(const CVector& data, const Grid& from, const Grid& to, int sign);

// vol(from) * sum_y exp(sign * i <y|t>) data(y) at one arbitrary point t.
Complex exp_contract(const CVector& data, const Grid& from, const Vec& t, int sign);

// (F h)(xi) = int exp(-i <X|xi>) h(X) dX, quadrature over `quad`.
Field fourier(const Field& h, const Grid& quad, const Grid& target);
Field fourier(const Field& gridded_h, const Grid& target);
Complex fourier_at(const Field& h, const Grid& quad, const DualVec& xi);

// (2 pi)^{-n} int exp(i <x|xi>) w(xi) dxi.
Field inverse_fourier(const Field& w, const Grid& quad, const Grid& target);
Field inverse_fourier(const Field& gridded_w, const Grid& target);
Complex inverse_fourier_at(const Field& w, const Grid& quad, const Vec& x);

// Script F = F o Exp; Exp is the identity in exponential coordinates.
inline Field script_fourier(const Field& u, const Grid& quad, const Grid& target) { return fourier(u, quad, target); }
inline Field script_fourier_inv(const Field& w, const Grid& quad, const Grid& target) {
  return inverse_fourier(w, quad, target);
}

// L2 norm and inner product of samples with cell weight `vol`.
double l2_norm(const CVector& u, double vol);
Complex inner(const CVector& u, const CVector& v, double vol);
double relative_l2(const CVector& approx, const CVector& exact);

}  // namespace nilquant
