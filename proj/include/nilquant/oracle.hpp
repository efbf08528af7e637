#pragma once

// Faithful matrix representations of the preset nilpotent algebras. The group
// law is read off from products of matrix exponentials, which gives a check on
// bch that shares no code with the series.

#include "nilquant/types.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace nilquant {

struct MatrixOracle {
  int size = 0;  // matrix size
  std::function<RMatrix(const Vec&)> encode;
  std::function<Vec(const RMatrix&)> decode;
};

// exp and log of a strictly upper-triangular (nilpotent) matrix; both series end.
inline RMatrix nilpotent_exp(const RMatrix& m) {
  RMatrix out = RMatrix::Identity(m.rows(), m.cols());
  RMatrix term = out;
  for (int k = 1; k < m.rows(); ++k) {
    term = term * m / static_cast<double>(k);
    out += term;
  }
  return out;
}

inline RMatrix nilpotent_log(const RMatrix& g) {
  const RMatrix n = g - RMatrix::Identity(g.rows(), g.cols());
  RMatrix out = RMatrix::Zero(g.rows(), g.cols());
  RMatrix pw = n;
  for (int k = 1; k < g.rows(); ++k) {
    out += ((k % 2) ? 1.0 : -1.0) / k * pw;
    pw = pw * n;
  }
  return out;
}

inline MatrixOracle heisenberg_oracle() {
  return {3,
          [](const Vec& x) {
            RMatrix m = RMatrix::Zero(3, 3);
            m(0, 1) = x(0);
            m(1, 2) = x(1);
            m(0, 2) = x(2);
            return m;
          },
          [](const RMatrix& m) {
            Vec x(3);
            x << m(0, 1), m(1, 2), m(0, 2);
            return x;
          }};
}

// e1 = E12 + E23 + E34, e2 = E34, e3 = E24, e4 = E14.
inline MatrixOracle engel_oracle() {
  return {4,
          [](const Vec& x) {
            RMatrix m = RMatrix::Zero(4, 4);
            m(0, 1) = x(0);
            m(1, 2) = x(0);
            m(2, 3) = x(0) + x(1);
            m(1, 3) = x(2);
            m(0, 3) = x(3);
            return m;
          },
          [](const RMatrix& m) {
            Vec x(4);
            x << m(0, 1), m(2, 3) - m(0, 1), m(1, 3), m(0, 3);
            return x;
          }};
}

// Basis E_ab (a < b) in lexicographic order, matching LieAlgebra::upper_triangular.
inline MatrixOracle upper_oracle(int k) {
  return {k,
          [k](const Vec& x) {
            RMatrix m = RMatrix::Zero(k, k);
            int t = 0;
            for (int a = 0; a < k; ++a)
              for (int b = a + 1; b < k; ++b) m(a, b) = x(t++);
            return m;
          },
          [k](const RMatrix& m) {
            Vec x(k * (k - 1) / 2);
            int t = 0;
            for (int a = 0; a < k; ++a)
              for (int b = a + 1; b < k; ++b) x(t++) = m(a, b);
            return x;
          }};
}

inline MatrixOracle oracle_for(const std::string& preset) {
  if (preset == "heisenberg:1") return heisenberg_oracle();
  if (preset == "engel") return engel_oracle();
  if (preset.rfind("upper:", 0) == 0) return upper_oracle(std::stoi(preset.substr(6)));
  throw std::invalid_argument("no matrix oracle for '" + preset + "'");
}

inline Vec oracle_product(const MatrixOracle& o, const Vec& x, const Vec& y) {
  return o.decode(nilpotent_log(nilpotent_exp(o.encode(x)) * nilpotent_exp(o.encode(y))));
}

inline Vec oracle_bracket(const MatrixOracle& o, const Vec& x, const Vec& y) {
  const RMatrix a = o.encode(x), b = o.encode(y);
  return o.decode(a * b - b * a);
}

}  // namespace nilquant
