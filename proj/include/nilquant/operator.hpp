#pragma once

#include "nilquant/field.hpp"

namespace nilquant {

// Integral kernel sampled on a G-grid: (K u)(x_i) = vol * sum_j K(x_i, y_j) u(y_j).
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  OperatorMatrix(Grid grid, CMatrix kernel);

  static OperatorMatrix identity(const Grid& g);
  static OperatorMatrix zero(const Grid& g);

  const Grid& grid() const { return grid_; }
  const CMatrix& kernel() const { return kernel_; }
  CMatrix& kernel() { return kernel_; }
  double weight() const { return grid_.cell_volume(); }
  Eigen::Index rows() const { return kernel_.rows(); }

  // vol * K: the matrix acting on sample vectors.
  CMatrix action() const { return weight() * kernel_; }

 private:
  Grid grid_;
  CMatrix kernel_;
};

CVector op_apply(const OperatorMatrix& K, const CVector& u);
Field op_apply(const OperatorMatrix& K, const Field& u);
OperatorMatrix op_compose(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix op_adjoint(const OperatorMatrix& a);
Complex op_trace(const OperatorMatrix& a);
OperatorMatrix op_sum(const OperatorMatrix& a, const OperatorMatrix& b, Complex beta = 1.0);

// Singular values of vol * K in decreasing order.
Eigen::VectorXd singular_values(const OperatorMatrix& a);
double schatten_norm(const OperatorMatrix& a, double p);
double schatten_norm_from_singular(const Eigen::VectorXd& s, double p);
// Smallest eigenvalue of the Hermitian part of vol * K.
double min_eigenvalue(const OperatorMatrix& a);

// max |K - K^*| / max |K| (0 for the zero kernel).
double hermiticity_residual(const OperatorMatrix& a);
// ||A - B||_F / ||B||_F on kernel samples.
double frobenius_relative(const OperatorMatrix& a, const OperatorMatrix& b);

OperatorMatrix multiplication_operator(const Grid& g, const Field& m);
OperatorMatrix multiplication_operator(const Grid& g, const CVector& values);
// Kernel a(x) conj(b(y)).
OperatorMatrix rank_one(const Grid& g, const CVector& a, const CVector& b);

}  // namespace nilquant
