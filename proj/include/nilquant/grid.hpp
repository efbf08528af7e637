#pragma once

#include "nilquant/types.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace nilquant {

// Uniform midpoint grid on the box prod [-L_i, L_i]. Nodes are enumerated
// row-major: the last axis varies fastest.
class Grid {
 public:
  Grid() = default;
  Grid(Vec half_width, std::vector<int> counts);
  static Grid uniform(int n, double half_width, int count);

  int dim() const { return static_cast<int>(counts_.size()); }
  const Vec& half_width() const { return half_width_; }
  const std::vector<int>& counts() const { return counts_; }
  double spacing(int axis) const { return 2.0 * half_width_(axis) / counts_[axis]; }
  double cell_volume() const { return vol_; }
  std::size_t size() const { return size_; }

  double coord(int axis, int i) const { return -half_width_(axis) + (i + 0.5) * spacing(axis); }
  std::vector<double> axis_nodes(int axis) const;
  Vec node(std::size_t flat) const;
  std::vector<Vec> nodes() const;
  std::vector<int> multi_index(std::size_t flat) const;
  std::size_t flat_index(const std::vector<int>& idx) const;
  bool contains(const Vec& p) const;
  // Multilinear interpolation weights at p: empty outside the box; half cells
  // next to the edge use the nearest node.
  std::vector<std::pair<std::size_t, double>> stencil(const Vec& p) const;

  bool operator==(const Grid& o) const;
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  Vec half_width_;
  std::vector<int> counts_;
  double vol_ = 0.0;
  std::size_t size_ = 0;
};

// Box over G x g#; the Xi node index is iz * dual.size() + izeta, which is the
// row-major enumeration of the concatenated 2n-dimensional grid.
struct XiGrid {
  Grid g_grid;
  Grid dual_grid;

  XiGrid() = default;
  XiGrid(Grid g, Grid dual);
  static XiGrid uniform(int n, double half_width, int count) {
    return {Grid::uniform(n, half_width, count), Grid::uniform(n, half_width, count)};
  }

  int dim() const { return g_grid.dim(); }
  std::size_t size() const { return g_grid.size() * dual_grid.size(); }
  double cell_volume() const { return g_grid.cell_volume() * dual_grid.cell_volume(); }
  // Quadrature weight of one Xi cell, (2 pi)^{-n} included.
  double measure() const;
  PhasePoint node(std::size_t flat) const;
  Grid as_grid() const;
  bool operator==(const XiGrid& o) const { return g_grid == o.g_grid && dual_grid == o.dual_grid; }
};

// Desk-scale defaults. n = 1: L = 10, N = 128 for both grids; n = 3: L = 4 with
// N = 11 (operators) and N = 9 (Xi quadrature).
Grid default_operator_grid(int n);
XiGrid default_xi_grid(int n);

// (2 pi)^{-n}
double dual_factor(int n);

}  // namespace nilquant
