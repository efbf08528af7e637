#pragma once

#include "nilquant/grid.hpp"

#include <functional>
#include <memory>

namespace nilquant {

enum class Domain { Group, Dual, Phase };

const char* domain_name(Domain d);

// Complex function on G, g# or Xi. Analytic fields evaluate exactly at any
// point; gridded fields interpolate multilinearly inside their box and
// vanish outside it.
class Field {
 public:
  using Fn = std::function<Complex(const Vec&)>;

  Field() = default;
  static Field analytic(Domain d, int dim, Fn f);
  static Field gridded(Domain d, Grid grid, CVector samples);
  // Xi-valued samples stored against an XiGrid (z-major, zeta-minor).
  static Field gridded(const XiGrid& xi, CVector samples);

  Complex operator()(const Vec& p) const;

  Domain domain() const { return domain_; }
  int dim() const { return dim_; }
  bool is_analytic() const { return static_cast<bool>(fn_); }
  bool empty() const { return !fn_ && !grid_; }
  // Set when any value was obtained by interpolation of gridded data.
  bool approximate() const { return approximate_; }
  Field& mark_approximate(bool a = true) {
    approximate_ = a;
    return *this;
  }

  const Grid& grid() const;
  const CVector& samples() const;

  // Values at the nodes of g; reuses stored samples when the grid matches.
  CVector sample(const Grid& g) const;
  CVector sample(const XiGrid& xi) const;

  Field conj() const;
  Field scaled(Complex c) const;

 private:
  Domain domain_ = Domain::Group;
  int dim_ = 0;
  Fn fn_;
  std::shared_ptr<const Grid> grid_;
  std::shared_ptr<const CVector> samples_;
  bool approximate_ = false;

  Complex interpolate(const Vec& p) const;
};

// exp(-|x-c|^2 / (2 s^2)) exp(i <x|k>), not normalized.
Field gaussian_field(Domain d, const Vec& center, double width, const Vec& wave);
Field constant_field(Domain d, int dim, Complex value);

}  // namespace nilquant
