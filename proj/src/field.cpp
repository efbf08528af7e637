#include "nilquant/field.hpp"

#include "nilquant/parallel.hpp"

#include <cmath>

namespace nilquant {

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::Group: return "G";
    case Domain::Dual: return "dual";
    case Domain::Phase: return "Xi";
  }
  return "?";
}

Field Field::analytic(Domain d, int dim, Fn f) {
  if (!f) throw std::invalid_argument("Field::analytic: empty evaluator");
  Field out;
  out.domain_ = d;
  out.dim_ = dim;
  out.fn_ = std::move(f);
  return out;
}

Field Field::gridded(Domain d, Grid grid, CVector samples) {
  if (samples.size() != static_cast<Eigen::Index>(grid.size()))
    throw std::invalid_argument("Field::gridded: sample count does not match grid");
  Field out;
  out.domain_ = d;
  out.dim_ = grid.dim();
  out.grid_ = std::make_shared<const Grid>(std::move(grid));
  out.samples_ = std::make_shared<const CVector>(std::move(samples));
  return out;
}

Field Field::gridded(const XiGrid& xi, CVector samples) {
  return gridded(Domain::Phase, xi.as_grid(), std::move(samples));
}

const Grid& Field::grid() const {
  if (!grid_) throw std::logic_error("Field: analytic field has no grid");
  return *grid_;
}

const CVector& Field::samples() const {
  if (!samples_) throw std::logic_error("Field: analytic field has no samples");
  return *samples_;
}

Complex Field::operator()(const Vec& p) const {
  if (p.size() != dim_) throw std::invalid_argument("Field: evaluation point has wrong dimension");
  if (fn_) return fn_(p);
  if (grid_) return interpolate(p);
  throw std::logic_error("Field: empty field evaluated");
}

Complex Field::interpolate(const Vec& p) const {
  Complex acc{0.0, 0.0};
  for (const auto& [idx, w] : grid_->stencil(p)) acc += w * (*samples_)(static_cast<Eigen::Index>(idx));
  return acc;
}

CVector Field::sample(const Grid& g) const {
  if (g.dim() != dim_) throw std::invalid_argument("Field::sample: grid dimension mismatch");
  if (grid_ && *grid_ == g) return *samples_;
  CVector out(static_cast<Eigen::Index>(g.size()));
  parallel_for(g.size(), [&](std::size_t i) { out(static_cast<Eigen::Index>(i)) = (*this)(g.node(i)); });
  return out;
}

CVector Field::sample(const XiGrid& xi) const { return sample(xi.as_grid()); }

Field Field::conj() const {
  if (fn_) {
    auto f = fn_;
    Field out = analytic(domain_, dim_, [f](const Vec& p) { return std::conj(f(p)); });
    out.approximate_ = approximate_;
    return out;
  }
  Field out = gridded(domain_, *grid_, samples_->conjugate());
  out.approximate_ = approximate_;
  return out;
}

Field Field::scaled(Complex c) const {
  if (fn_) {
    auto f = fn_;
    Field out = analytic(domain_, dim_, [f, c](const Vec& p) { return c * f(p); });
    out.approximate_ = approximate_;
    return out;
  }
  Field out = gridded(domain_, *grid_, c * *samples_);
  out.approximate_ = approximate_;
  return out;
}

Field gaussian_field(Domain d, const Vec& center, double width, const Vec& wave) {
  if (center.size() != wave.size()) throw std::invalid_argument("gaussian_field: dimension mismatch");
  const double a = 0.5 / (width * width);
  return Field::analytic(d, static_cast<int>(center.size()), [center, a, wave](const Vec& x) {
    return std::exp(-a * (x - center).squaredNorm()) * expi(x.dot(wave));
  });
}

Field constant_field(Domain d, int dim, Complex value) {
  return Field::analytic(d, dim, [value](const Vec&) { return value; });
}

}  // namespace nilquant
