#include "nilquant/fourier.hpp"

#include "nilquant/parallel.hpp"

#include <cmath>

namespace nilquant {

Complex integrate_samples(const CVector& values, double weight) {
  return weight * pairwise_sum(values.data(), static_cast<std::size_t>(values.size()));
}

Complex integrate(const Field& f, const Grid& grid) {
  if (f.domain() == Domain::Phase) throw std::invalid_argument("integrate: Xi field needs an XiGrid");
  if (f.dim() != grid.dim()) throw std::invalid_argument("integrate: dimension mismatch");
  return integrate_samples(f.sample(grid), grid.cell_volume());
}

Complex integrate(const Field& f, const XiGrid& xi) {
  if (f.domain() != Domain::Phase) throw std::invalid_argument("integrate: field is not defined on Xi");
  return integrate_samples(f.sample(xi), xi.measure());
}

ExpTransform::ExpTransform(const Grid& from, const Grid& to, int sign) : from_(from), to_(to) {
  if (to.dim() != from.dim()) throw std::invalid_argument("ExpTransform: dimension mismatch");
  for (int k = 0; k < from.dim(); ++k) {
    const auto ys = from.axis_nodes(k);
    const auto ts = to.axis_nodes(k);
    CMatrix E(static_cast<Eigen::Index>(ts.size()), static_cast<Eigen::Index>(ys.size()));
    for (std::size_t m = 0; m < ts.size(); ++m)
      for (std::size_t j = 0; j < ys.size(); ++j)
        E(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)) = expi(sign * ts[m] * ys[j]);
    axis_.push_back(std::move(E));
  }
}

CVector ExpTransform::operator()(const CVector& data) const {
  const int n = from_.dim();
  if (data.size() != static_cast<Eigen::Index>(from_.size()))
    throw std::invalid_argument("ExpTransform: data size does not match source grid");
  std::vector<Eigen::Index> dims(from_.counts().begin(), from_.counts().end());
  CVector cur = data;
  using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  for (int k = 0; k < n; ++k) {
    const CMatrix& E = axis_[k];
    Eigen::Index outer = 1, inner = 1;
    for (int a = 0; a < k; ++a) outer *= dims[a];
    for (int a = k + 1; a < n; ++a) inner *= dims[a];
    const Eigen::Index dk = dims[k], dm = E.rows();
    CVector next(outer * dm * inner);
    for (Eigen::Index o = 0; o < outer; ++o) {
      Eigen::Map<const RowMat> block(cur.data() + o * dk * inner, dk, inner);
      Eigen::Map<RowMat> dst(next.data() + o * dm * inner, dm, inner);
      dst.noalias() = E * block;
    }
    dims[k] = dm;
    cur.swap(next);
  }
  return from_.cell_volume() * cur;
}

CVector exp_transform(const CVector& data, const Grid& from, const Grid& to, int sign) {
  return ExpTransform(from, to, sign)(data);
}

Complex exp_contract(const CVector& data, const Grid& from, const Vec& t, int sign) {
  const int n = from.dim();
  if (t.size() != n) throw std::invalid_argument("exp_contract: dimension mismatch");
  using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  CVector cur = data;
  Eigen::Index outer = cur.size();
  for (int k = n - 1; k >= 0; --k) {
    const int d = from.counts()[k];
    CVector e(d);
    for (int j = 0; j < d; ++j) e(j) = expi(sign * t(k) * from.coord(k, j));
    outer /= d;
    CVector next = Eigen::Map<const RowMat>(cur.data(), outer, d) * e;
    cur.swap(next);
  }
  return from.cell_volume() * cur(0);
}

Field fourier(const Field& h, const Grid& quad, const Grid& target) {
  Field out = Field::gridded(Domain::Dual, target, exp_transform(h.sample(quad), quad, target, -1));
  return out.mark_approximate(h.approximate());
}

Field fourier(const Field& gridded_h, const Grid& target) { return fourier(gridded_h, gridded_h.grid(), target); }

Complex fourier_at(const Field& h, const Grid& quad, const DualVec& xi) {
  const CVector s = h.sample(quad);
  CVector terms(s.size());
  for (std::size_t i = 0; i < quad.size(); ++i)
    terms(static_cast<Eigen::Index>(i)) = expi(-quad.node(i).dot(xi)) * s(static_cast<Eigen::Index>(i));
  return integrate_samples(terms, quad.cell_volume());
}

Field inverse_fourier(const Field& w, const Grid& quad, const Grid& target) {
  Field out = Field::gridded(Domain::Group, target,
                             dual_factor(quad.dim()) * exp_transform(w.sample(quad), quad, target, +1));
  return out.mark_approximate(w.approximate());
}

Field inverse_fourier(const Field& gridded_w, const Grid& target) {
  return inverse_fourier(gridded_w, gridded_w.grid(), target);
}

Complex inverse_fourier_at(const Field& w, const Grid& quad, const Vec& x) {
  const CVector s = w.sample(quad);
  CVector terms(s.size());
  for (std::size_t i = 0; i < quad.size(); ++i)
    terms(static_cast<Eigen::Index>(i)) = expi(quad.node(i).dot(x)) * s(static_cast<Eigen::Index>(i));
  return dual_factor(quad.dim()) * integrate_samples(terms, quad.cell_volume());
}

double l2_norm(const CVector& u, double vol) { return std::sqrt(vol * u.squaredNorm()); }

Complex inner(const CVector& u, const CVector& v, double vol) {
  if (u.size() != v.size()) throw std::invalid_argument("inner: size mismatch");
  CVector prod = u.cwiseProduct(v.conjugate());
  return integrate_samples(prod, vol);
}

double relative_l2(const CVector& approx, const CVector& exact) {
  const double d = exact.norm();
  return d == 0.0 ? approx.norm() : (approx - exact).norm() / d;
}

}  // namespace nilquant
