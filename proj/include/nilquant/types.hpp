#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nilquant {

// Upper bound on algebra dimension; phase-space points need 2n <= kMaxDim.
inline constexpr int kMaxDim = 32;

template <typename Scalar>
using VectorN = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

using Complex = std::complex<double>;
using Vec = VectorN<double>;
using DualVec = VectorN<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Point (z, zeta) of the phase space G x g#.
struct PhasePoint {
  Vec z;
  DualVec zeta;

  PhasePoint() = default;
  PhasePoint(Vec z_, DualVec zeta_) : z(std::move(z_)), zeta(std::move(zeta_)) {
    if (z.size() != zeta.size()) throw std::invalid_argument("PhasePoint: z and zeta dimensions differ");
  }
  static PhasePoint origin(int n) { return {Vec::Zero(n), DualVec::Zero(n)}; }
  int dim() const { return static_cast<int>(z.size()); }
};

inline void require_dim(const Vec& v, int n, const char* what) {
  if (v.size() != n)
    throw std::invalid_argument(std::string(what) + ": expected dimension " + std::to_string(n) + ", got " +
                                std::to_string(v.size()));
}

inline Complex expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

}  // namespace nilquant
