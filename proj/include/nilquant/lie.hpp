#pragma once

// Nilpotent Lie algebras and their groups in exponential coordinates.
// Group points are stored as log x, so exp/log are the identity on
// coordinates, the product is the (finite) BCH series and x^{-1} = -x.

#include "nilquant/types.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace nilquant {

inline constexpr int kMaxBchDepth = 6;

// Vector arguments of the free functions take their scalar from the algebra,
// so Eigen expressions convert implicitly.
template <typename Scalar>
using VecArg = std::type_identity_t<VectorN<Scalar>>;

template <typename Scalar>
class LieAlgebra {
 public:
  using Vector = VectorN<Scalar>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  // c[i][j][k]: [e_i, e_j] = sum_k c[i][j][k] e_k (0-based).
  struct Entry {
    int i, j, k;
    Scalar c;
  };

  LieAlgebra() = default;

  // Entries are stored verbatim; no antisymmetrization is applied, so a
  // malformed table is representable and can be diagnosed by validate().
  // step == 0 means "certify from the lower central series".
  LieAlgebra(int n, std::vector<Entry> entries, int step = 0, std::string name = "custom")
      : n_(n), entries_(std::move(entries)), name_(std::move(name)) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("LieAlgebra: dimension out of range");
    for (const auto& e : entries_)
      if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= n || e.j >= n || e.k >= n)
        throw std::invalid_argument("LieAlgebra: structure-constant index out of range");
    step_ = step > 0 ? step : lower_central_step();
  }

  // [e_i, e_j] = sum c e_k for i<j given once; the (j,i) entries are implied.
  static LieAlgebra from_brackets(int n, const std::vector<Entry>& brackets, int step = 0,
                                  std::string name = "custom") {
    std::vector<Entry> all;
    all.reserve(2 * brackets.size());
    for (const auto& b : brackets) {
      all.push_back(b);
      all.push_back({b.j, b.i, b.k, -b.c});
    }
    return LieAlgebra(n, std::move(all), step, std::move(name));
  }

  static LieAlgebra abelian(int n) { return LieAlgebra(n, {}, 1, "abelian:" + std::to_string(n)); }

  // Heisenberg algebra of dimension 2d+1: [e_i, e_{d+i}] = e_{2d+1}.
  static LieAlgebra heisenberg(int d) {
    std::vector<Entry> b;
    for (int i = 0; i < d; ++i) b.push_back({i, d + i, 2 * d, Scalar(1)});
    return from_brackets(2 * d + 1, b, 2, "heisenberg:" + std::to_string(d));
  }

  // Filiform algebra of dimension 4: [e1,e2]=e3, [e1,e3]=e4.
  static LieAlgebra engel() {
    return from_brackets(4, {{0, 1, 2, Scalar(1)}, {0, 2, 3, Scalar(1)}}, 3, "engel");
  }

  // Strictly upper triangular k x k matrices, basis E_ab (a<b), step k-1.
  static LieAlgebra upper_triangular(int k) {
    std::vector<std::pair<int, int>> basis;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) basis.emplace_back(a, b);
    auto index = [&](int a, int b) {
      for (std::size_t t = 0; t < basis.size(); ++t)
        if (basis[t] == std::pair{a, b}) return static_cast<int>(t);
      return -1;
    };
    std::vector<Entry> all;
    const int n = static_cast<int>(basis.size());
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        auto [a, b] = basis[p];
        auto [c, d] = basis[q];
        // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
        if (b == c) all.push_back({p, q, index(a, d), Scalar(1)});
        if (d == a) all.push_back({p, q, index(c, b), Scalar(-1)});
      }
    return LieAlgebra(n, std::move(all), k - 1, "upper:" + std::to_string(k));
  }

  // "abelian:n", "heisenberg:d", "engel", "upper:k".
  static LieAlgebra preset(std::string_view name) {
    auto arg = [&](std::string_view prefix) -> int {
      std::string_view rest = name.substr(prefix.size());
      int v = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
      if (ec != std::errc() || ptr != rest.data() + rest.size() || v < 1)
        throw std::invalid_argument("unknown algebra preset '" + std::string(name) + "'");
      return v;
    };
    if (name == "engel") return engel();
    if (name.starts_with("abelian:")) return abelian(arg("abelian:"));
    if (name.starts_with("heisenberg:")) return heisenberg(arg("heisenberg:"));
    if (name.starts_with("upper:")) {
      int k = arg("upper:");
      if (k < 2) throw std::invalid_argument("upper:k needs k >= 2");
      return upper_triangular(k);
    }
    throw std::invalid_argument("unknown algebra preset '" + std::string(name) + "'");
  }

  int dim() const { return n_; }
  int step() const { return step_; }
  const std::string& name() const { return name_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_abelian() const { return entries_.empty(); }

  Scalar constant(int i, int j, int k) const {
    Scalar s(0);
    for (const auto& e : entries_)
      if (e.i == i && e.j == j && e.k == k) s += e.c;
    return s;
  }

  template <typename T>
  LieAlgebra<T> cast() const {
    std::vector<typename LieAlgebra<T>::Entry> out;
    for (const auto& e : entries_) out.push_back({e.i, e.j, e.k, static_cast<T>(e.c)});
    return LieAlgebra<T>(n_, std::move(out), step_, name_);
  }

  // Smallest s with g_{s+1} = 0 for the lower central series, 0 if it never
  // terminates within n steps.
  int lower_central_step() const {
    Eigen::MatrixXd span = Eigen::MatrixXd::Identity(n_, n_);
    for (int depth = 1; depth <= n_ + 1; ++depth) {
      Eigen::MatrixXd next(n_, n_ * span.cols());
      int col = 0;
      for (int i = 0; i < n_; ++i)
        for (int c = 0; c < span.cols(); ++c) {
          Eigen::VectorXd v = Eigen::VectorXd::Zero(n_);
          for (const auto& e : entries_)
            if (e.i == i) v(e.k) += static_cast<double>(e.c) * span(e.j, c);
          next.col(col++) = v;
        }
      if (next.size() == 0 || next.cwiseAbs().maxCoeff() < 1e-12) return depth;
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(next);
      qr.setThreshold(1e-10);
      const auto r = qr.rank();
      if (r == 0) return depth;
      Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n_, n_);
      span = q.leftCols(r);
    }
    return 0;
  }

 private:
  int n_ = 0;
  int step_ = 0;
  std::vector<Entry> entries_;
  std::string name_;
};

using Lie = LieAlgebra<double>;

template <typename Scalar>
VectorN<Scalar> bracket(const LieAlgebra<Scalar>& L, const VecArg<Scalar>& X, const VecArg<Scalar>& Y) {
  if (X.size() != L.dim() || Y.size() != L.dim()) throw std::invalid_argument("bracket: dimension mismatch");
  VectorN<Scalar> out = VectorN<Scalar>::Zero(L.dim());
  for (const auto& e : L.entries()) out(e.k) += e.c * X(e.i) * Y(e.j);
  return out;
}

// Matrix of Z -> [X, Z].
template <typename Scalar>
typename LieAlgebra<Scalar>::Matrix ad(const LieAlgebra<Scalar>& L, const VecArg<Scalar>& X) {
  if (X.size() != L.dim()) throw std::invalid_argument("ad: dimension mismatch");
  typename LieAlgebra<Scalar>::Matrix M = LieAlgebra<Scalar>::Matrix::Zero(L.dim(), L.dim());
  for (const auto& e : L.entries()) M(e.k, e.j) += e.c * X(e.i);
  return M;
}

namespace detail {

struct BchTerm {
  int degree;
  std::string_view prefix;  // letters p1..p_{degree-2} of [p1,[p2,...,[X,Y]]]
  long num;
  long den;
};

// Right-nested Dynkin-Specht-Wever form of log(e^X e^Y), degrees 3..6.
inline constexpr BchTerm kBchTerms[] = {
    {3, "X", 1, 12},       {3, "Y", -1, 12},

    {4, "XY", -1, 48},     {4, "YX", -1, 48},

    {5, "XXX", -1, 720},   {5, "XYX", -1, 120},   {5, "XYY", -1, 360},
    {5, "YXX", 1, 360},    {5, "YXY", 1, 120},    {5, "YYY", 1, 720},

    {6, "XXXY", 1, 2160},  {6, "XXYX", -1, 1440}, {6, "XXYY", -1, 1440}, {6, "XYXX", 1, 2160},
    {6, "XYXY", 1, 360},   {6, "XYYX", -1, 1440}, {6, "XYYY", 1, 2160},  {6, "YXXX", 1, 2160},
    {6, "YXXY", -1, 1440}, {6, "YXYX", 1, 360},   {6, "YXYY", 1, 2160},  {6, "YYXX", -1, 1440},
    {6, "YYXY", -1, 1440}, {6, "YYYX", 1, 2160},
};

constexpr int prefix_index(std::string_view p) {
  int idx = 0;
  for (char c : p) idx = 2 * idx + (c == 'Y' ? 1 : 0);
  return idx;
}

inline void require_bch_step(int step) {
  if (step < 1)
    throw std::domain_error("bch: algebra is not certified nilpotent");
  if (step > kMaxBchDepth)
    throw std::domain_error("bch: nilpotency step " + std::to_string(step) + " exceeds the supported depth " +
                            std::to_string(kMaxBchDepth));
}

}  // namespace detail

// log(exp X exp Y); exact for step <= 6.
template <typename Scalar>
VectorN<Scalar> bch(const LieAlgebra<Scalar>& L, const VecArg<Scalar>& X, const VecArg<Scalar>& Y) {
  if (X.size() != L.dim() || Y.size() != L.dim()) throw std::invalid_argument("bch: dimension mismatch");
  const int s = L.step();
  detail::require_bch_step(s);
  VectorN<Scalar> out = X + Y;
  if (s < 2) return out;

  // nested[m][idx] = [p1,[p2,...,[pm,[X,Y]]]], p1 is the high bit (0 = X, 1 = Y).
  std::array<std::array<VectorN<Scalar>, 16>, kMaxBchDepth - 1> nested;
  nested[0][0] = bracket(L, X, Y);
  out += nested[0][0] / Scalar(2);
  for (int m = 1; m <= s - 2; ++m)
    for (int idx = 0; idx < (1 << m); ++idx) {
      const int rest = idx & ((1 << (m - 1)) - 1);
      nested[m][idx] = bracket(L, (idx >> (m - 1)) ? Y : X, nested[m - 1][rest]);
    }
  for (const auto& t : detail::kBchTerms) {
    if (t.degree > s) break;
    out += (Scalar(t.num) / Scalar(t.den)) * nested[t.degree - 2][detail::prefix_index(t.prefix)];
  }
  return out;
}

template <typename Scalar>
VectorN<Scalar> group_mul(const LieAlgebra<Scalar>& L, const VecArg<Scalar>& x, const VecArg<Scalar>& y) {
  return bch(L, x, y);
}

template <typename Scalar>
VectorN<Scalar> group_inv(const VectorN<Scalar>& x) {
  return -x;
}

template <typename Scalar>
Scalar pairing(const VectorN<Scalar>& X, const VectorN<Scalar>& xi) {
  if (X.size() != xi.size()) throw std::invalid_argument("pairing: dimension mismatch");
  return X.dot(xi);
}

// gamma_x(zeta) = zeta o ad_{-x}.
template <typename Scalar>
VectorN<Scalar> coadjoint(const LieAlgebra<Scalar>& L, const VecArg<Scalar>& x, const VecArg<Scalar>& zeta) {
  if (x.size() != L.dim() || zeta.size() != L.dim()) throw std::invalid_argument("coadjoint: dimension mismatch");
  VectorN<Scalar> g = VectorN<Scalar>::Zero(L.dim());
  for (const auto& e : L.entries()) g(e.j) -= x(e.i) * e.c * zeta(e.k);
  return g;
}

// d/dt <log(exp(tZ) x) | zeta> at t = 0; the quadratic truncation is exact
// only for step <= 2.
template <typename Scalar>
Scalar dlambda_left(const LieAlgebra<Scalar>& L, const VecArg<Scalar>& Z, const VecArg<Scalar>& zeta,
                    const VecArg<Scalar>& x) {
  if (L.step() > 2)
    throw std::domain_error("dlambda_left: closed form needs step <= 2; use dlambda_left_fd");
  const VectorN<Scalar> g1 = coadjoint(L, x, zeta);
  const VectorN<Scalar> g2 = coadjoint(L, x, g1);
  return pairing<Scalar>(Z, zeta + g1 / Scalar(2) + g2 / Scalar(12));
}

template <typename Scalar>
Scalar dlambda_left_fd(const LieAlgebra<Scalar>& L, const VecArg<Scalar>& Z, const VecArg<Scalar>& zeta,
                       const VecArg<Scalar>& x, Scalar h) {
  if (!(h > Scalar(0))) throw std::invalid_argument("dlambda_left_fd: step must be positive");
  const VectorN<Scalar> plus = bch<Scalar>(L, h * Z, x);
  const VectorN<Scalar> minus = bch<Scalar>(L, -h * Z, x);
  return (pairing<Scalar>(plus, zeta) - pairing<Scalar>(minus, zeta)) / (Scalar(2) * h);
}

// Right-multiplication analogue: d/dt <log(x exp(tZ)) | zeta>.
template <typename Scalar>
Scalar dlambda_right(const LieAlgebra<Scalar>& L, const VecArg<Scalar>& Z, const VecArg<Scalar>& zeta,
                     const VecArg<Scalar>& x) {
  if (L.step() > 2)
    throw std::domain_error("dlambda_right: closed form needs step <= 2");
  const VectorN<Scalar> g1 = coadjoint(L, x, zeta);
  const VectorN<Scalar> g2 = coadjoint(L, x, g1);
  return pairing<Scalar>(Z, zeta - g1 / Scalar(2) + g2 / Scalar(12));
}

struct AlgebraReport {
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  int declared_step = 0;
  int certified_step = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

template <typename Scalar>
AlgebraReport validate_algebra(const LieAlgebra<Scalar>& L, double tol = 1e-12) {
  AlgebraReport r;
  const int n = L.dim();
  std::vector<double> c(static_cast<std::size_t>(n) * n * n, 0.0);
  auto at = [&](int i, int j, int k) -> double& { return c[(static_cast<std::size_t>(i) * n + j) * n + k]; };
  for (const auto& e : L.entries()) at(e.i, e.j, e.k) += static_cast<double>(e.c);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double d = std::abs(at(i, j, k) + at(j, i, k));
        if (d > r.antisymmetry_residual) r.antisymmetry_residual = d;
        if (d > tol && i <= j && r.failures.size() < 16) {
          std::ostringstream os;
          os << "antisymmetry: c[" << i + 1 << "][" << j + 1 << "][" << k + 1 << "] + c[" << j + 1 << "]["
             << i + 1 << "][" << k + 1 << "] = " << at(i, j, k) + at(j, i, k);
          r.failures.push_back(os.str());
        }
      }

  // [e_i,[e_j,e_k]] + cyclic, coefficient m.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          double s = 0.0;
          for (int l = 0; l < n; ++l)
            s += at(j, k, l) * at(i, l, m) + at(k, i, l) * at(j, l, m) + at(i, j, l) * at(k, l, m);
          r.jacobi_residual = std::max(r.jacobi_residual, std::abs(s));
        }
  if (r.jacobi_residual > tol) r.failures.push_back("Jacobi identity violated (max residual " +
                                                    std::to_string(r.jacobi_residual) + ")");

  r.declared_step = L.step();
  r.certified_step = L.lower_central_step();
  if (r.certified_step == 0)
    r.failures.push_back("lower central series does not terminate: algebra is not nilpotent");
  else if (r.certified_step != r.declared_step)
    r.failures.push_back("declared step " + std::to_string(r.declared_step) + " differs from certified step " +
                         std::to_string(r.certified_step));
  if (r.certified_step > kMaxBchDepth)
    r.failures.push_back("step " + std::to_string(r.certified_step) + " exceeds supported BCH depth " +
                         std::to_string(kMaxBchDepth));
  return r;
}

}  // namespace nilquant
