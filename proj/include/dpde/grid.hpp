#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace dpde {

/// Uniform node-centred mesh on the half circle [0, pi], endpoints included.
class Grid {
 public:
  static constexpr int kMinCells = 8;

  int n_cells() const { return n_cells_; }
  std::size_t size() const { return thetas_.size(); }
  double dtheta() const { return dtheta_; }
  std::span<const double> thetas() const { return thetas_; }
  double theta(std::size_t i) const { return thetas_[i]; }

 private:
  explicit Grid(int n_cells);
  friend std::shared_ptr<const Grid> make_grid(int n_cells);

  int n_cells_;
  double dtheta_;
  std::vector<double> thetas_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws InvalidArgument for n_cells < Grid::kMinCells.
GridPtr make_grid(int n_cells);

/// Nodal values of a scalar quantity on a Grid. Always finite, always n_cells+1 long.
class Field {
 public:
  Field(GridPtr grid, std::vector<double> values);

  static Field constant(GridPtr grid, double value);

  template <class F>
  static Field sample(GridPtr grid, F&& profile) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = profile(grid->theta(i));
    return Field(std::move(grid), std::move(v));
  }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Grids are interchangeable when they have the same number of cells.
bool same_grid(const Grid& a, const Grid& b);

/// Throws MismatchedGrids unless both fields live on the same grid.
void require_same_grid(const Field& a, const Field& b);

Field operator-(const Field& a, const Field& b);
Field operator+(const Field& a, const Field& b);

double max_norm(const Field& f);

/// Discrete L2(0, pi) norm with trapezoidal weights.
double l2_norm(const Field& f);
double l2_norm(std::span<const double> values, double dtheta);

double min_value(const Field& f);
double max_value(const Field& f);

/// Injects a field onto a coarser grid whose nodes are a subset of the fine nodes.
/// Throws MismatchedGrids when fine.n_cells is not a multiple of coarse.n_cells.
Field restrict_to(const Field& fine, const GridPtr& coarse);

}  // namespace dpde
