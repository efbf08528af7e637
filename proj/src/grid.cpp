#include "nilquant/grid.hpp"

#include <cmath>

namespace nilquant {

Grid::Grid(Vec half_width, std::vector<int> counts) : half_width_(std::move(half_width)), counts_(std::move(counts)) {
  if (half_width_.size() != static_cast<Eigen::Index>(counts_.size()) || counts_.empty())
    throw std::invalid_argument("Grid: half_width and counts must have the same nonzero length");
  vol_ = 1.0;
  size_ = 1;
  for (int k = 0; k < dim(); ++k) {
    if (!(half_width_(k) > 0.0) || !std::isfinite(half_width_(k)))
      throw std::invalid_argument("Grid: half widths must be positive");
    if (counts_[k] < 1) throw std::invalid_argument("Grid: counts must be positive");
    vol_ *= spacing(k);
    size_ *= static_cast<std::size_t>(counts_[k]);
  }
}

Grid Grid::uniform(int n, double half_width, int count) {
  return Grid(Vec::Constant(n, half_width), std::vector<int>(static_cast<std::size_t>(n), count));
}

std::vector<double> Grid::axis_nodes(int axis) const {
  std::vector<double> out(static_cast<std::size_t>(counts_[axis]));
  for (int i = 0; i < counts_[axis]; ++i) out[i] = coord(axis, i);
  return out;
}

Vec Grid::node(std::size_t flat) const {
  Vec p(dim());
  for (int k = dim() - 1; k >= 0; --k) {
    const auto n = static_cast<std::size_t>(counts_[k]);
    p(k) = coord(k, static_cast<int>(flat % n));
    flat /= n;
  }
  return p;
}

std::vector<Vec> Grid::nodes() const {
  std::vector<Vec> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(node(i));
  return out;
}

std::vector<int> Grid::multi_index(std::size_t flat) const {
  std::vector<int> idx(counts_.size());
  for (int k = dim() - 1; k >= 0; --k) {
    const auto n = static_cast<std::size_t>(counts_[k]);
    idx[k] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

std::size_t Grid::flat_index(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (int k = 0; k < dim(); ++k) flat = flat * static_cast<std::size_t>(counts_[k]) + idx[k];
  return flat;
}

bool Grid::contains(const Vec& p) const {
  if (p.size() != dim()) return false;
  for (int k = 0; k < dim(); ++k)
    if (std::abs(p(k)) > half_width_(k)) return false;
  return true;
}

std::vector<std::pair<std::size_t, double>> Grid::stencil(const Vec& p) const {
  std::vector<std::pair<std::size_t, double>> out;
  if (!contains(p)) return out;
  const int n = dim();
  std::vector<int> base(static_cast<std::size_t>(n));
  std::vector<double> frac(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = (p(k) + half_width_(k)) / spacing(k) - 0.5;
    int i0 = static_cast<int>(std::floor(t));
    double f = t - i0;
    if (i0 < 0) {
      i0 = 0;
      f = 0.0;
    } else if (i0 >= counts_[k] - 1) {
      i0 = counts_[k] - 1;
      f = 0.0;
    }
    base[k] = i0;
    frac[k] = f;
  }
  std::vector<int> idx(base);
  for (int corner = 0; corner < (1 << n); ++corner) {
    double w = 1.0;
    for (int k = 0; k < n; ++k) {
      const bool up = (corner >> k) & 1;
      if (up && frac[k] == 0.0) {
        w = 0.0;
        break;
      }
      idx[k] = base[k] + (up ? 1 : 0);
      w *= up ? frac[k] : 1.0 - frac[k];
    }
    if (w != 0.0) out.emplace_back(flat_index(idx), w);
  }
  return out;
}

bool Grid::operator==(const Grid& o) const {
  return counts_ == o.counts_ && half_width_.size() == o.half_width_.size() && half_width_ == o.half_width_;
}

XiGrid::XiGrid(Grid g, Grid dual) : g_grid(std::move(g)), dual_grid(std::move(dual)) {
  if (g_grid.dim() != dual_grid.dim()) throw std::invalid_argument("XiGrid: G and dual grid dimensions differ");
  if (2 * g_grid.dim() > kMaxDim) throw std::invalid_argument("XiGrid: dimension too large for phase-space points");
}

namespace {

struct DeskSizes {
  double op_l;
  int op_n;
  double xi_l;
  int xi_n;
};

DeskSizes desk(int n) {
  switch (n) {
    case 1: return {10.0, 128, 10.0, 128};
    case 2: return {5.0, 24, 5.0, 16};
    case 3: return {4.0, 11, 4.0, 9};
    default: return {4.0, 7, 4.0, 5};
  }
}

}  // namespace

Grid default_operator_grid(int n) {
  const DeskSizes d = desk(n);
  return Grid::uniform(n, d.op_l, d.op_n);
}

XiGrid default_xi_grid(int n) {
  const DeskSizes d = desk(n);
  return XiGrid::uniform(n, d.xi_l, d.xi_n);
}

double dual_factor(int n) { return std::pow(2.0 * kPi, -n); }

double XiGrid::measure() const { return cell_volume() * dual_factor(dim()); }

PhasePoint XiGrid::node(std::size_t flat) const {
  const std::size_t nd = dual_grid.size();
  return {g_grid.node(flat / nd), dual_grid.node(flat % nd)};
}

Grid XiGrid::as_grid() const {
  const int n = dim();
  Vec hw(2 * n);
  hw << g_grid.half_width(), dual_grid.half_width();
  std::vector<int> c = g_grid.counts();
  c.insert(c.end(), dual_grid.counts().begin(), dual_grid.counts().end());
  return Grid(hw, c);
}

}  // namespace nilquant
