#include "nilquant/operator.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace nilquant {

OperatorMatrix::OperatorMatrix(Grid grid, CMatrix kernel) : grid_(std::move(grid)), kernel_(std::move(kernel)) {
  const auto n = static_cast<Eigen::Index>(grid_.size());
  if (kernel_.rows() != n || kernel_.cols() != n)
    throw std::invalid_argument("OperatorMatrix: kernel shape does not match grid");
}

OperatorMatrix OperatorMatrix::identity(const Grid& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  return {g, CMatrix::Identity(n, n) / g.cell_volume()};
}

OperatorMatrix OperatorMatrix::zero(const Grid& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  return {g, CMatrix::Zero(n, n)};
}

namespace {

void require_same_grid(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
  if (a.grid() != b.grid()) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

bool is_hermitian(const CMatrix& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale;
}

}  // namespace

CVector op_apply(const OperatorMatrix& K, const CVector& u) {
  if (u.size() != K.rows()) throw std::invalid_argument("op_apply: vector size does not match grid");
  return K.weight() * (K.kernel() * u);
}

Field op_apply(const OperatorMatrix& K, const Field& u) {
  Field out = Field::gridded(Domain::Group, K.grid(), op_apply(K, u.sample(K.grid())));
  return out.mark_approximate(u.approximate());
}

OperatorMatrix op_compose(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_grid(a, b, "op_compose");
  return {a.grid(), a.weight() * (a.kernel() * b.kernel())};
}

OperatorMatrix op_adjoint(const OperatorMatrix& a) { return {a.grid(), a.kernel().adjoint()}; }

Complex op_trace(const OperatorMatrix& a) { return a.weight() * a.kernel().trace(); }

OperatorMatrix op_sum(const OperatorMatrix& a, const OperatorMatrix& b, Complex beta) {
  require_same_grid(a, b, "op_sum");
  return {a.grid(), a.kernel() + beta * b.kernel()};
}

Eigen::VectorXd singular_values(const OperatorMatrix& a) {
  const CMatrix m = a.action();
  Eigen::VectorXd s;
  if (is_hermitian(m)) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    s = es.eigenvalues().cwiseAbs();
  } else {
    Eigen::BDCSVD<CMatrix> svd(m);
    s = svd.singularValues();
  }
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

double schatten_norm_from_singular(const Eigen::VectorXd& s, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be >= 1");
  if (s.size() == 0) return 0.0;
  if (std::isinf(p)) return s.maxCoeff();
  const double top = s.maxCoeff();
  if (top == 0.0) return 0.0;
  return top * std::pow((s / top).array().pow(p).sum(), 1.0 / p);
}

double schatten_norm(const OperatorMatrix& a, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: p must be >= 1");
  if (p == 2.0) return a.weight() * a.kernel().norm();
  return schatten_norm_from_singular(singular_values(a), p);
}

double min_eigenvalue(const OperatorMatrix& a) {
  const CMatrix m = a.action();
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double hermiticity_residual(const OperatorMatrix& a) {
  const double scale = a.kernel().cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (a.kernel() - a.kernel().adjoint()).cwiseAbs().maxCoeff() / scale;
}

double frobenius_relative(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_grid(a, b, "frobenius_relative");
  const double d = b.kernel().norm();
  const double diff = (a.kernel() - b.kernel()).norm();
  return d == 0.0 ? diff : diff / d;
}

OperatorMatrix multiplication_operator(const Grid& g, const CVector& values) {
  if (values.size() != static_cast<Eigen::Index>(g.size()))
    throw std::invalid_argument("multiplication_operator: size mismatch");
  CMatrix k = CMatrix::Zero(values.size(), values.size());
  k.diagonal() = values / g.cell_volume();
  return {g, std::move(k)};
}

OperatorMatrix multiplication_operator(const Grid& g, const Field& m) {
  return multiplication_operator(g, m.sample(g));
}

OperatorMatrix rank_one(const Grid& g, const CVector& a, const CVector& b) {
  return {g, a * b.adjoint()};
}

}  // namespace nilquant
