#include "dpde/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dpde/errors.hpp"

namespace dpde {

Grid::Grid(int n_cells) : n_cells_(n_cells), dtheta_(std::numbers::pi / n_cells), thetas_(n_cells + 1) {
  for (int i = 0; i <= n_cells; ++i) thetas_[i] = i * std::numbers::pi / n_cells;
  thetas_.back() = std::numbers::pi;
}

GridPtr make_grid(int n_cells) {
  if (n_cells < Grid::kMinCells) {
    throw InvalidArgument("grid needs at least " + std::to_string(Grid::kMinCells) + " cells, got " +
                          std::to_string(n_cells));
  }
  return GridPtr(new Grid(n_cells));
}

Field::Field(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw InvalidArgument("field without grid");
  if (values_.size() != grid_->size()) {
    throw MismatchedGrids("field has " + std::to_string(values_.size()) + " values, grid has " +
                          std::to_string(grid_->size()) + " nodes");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidArgument("non-finite field value at node " + std::to_string(i));
    }
  }
}

Field Field::constant(GridPtr grid, double value) {
  std::vector<double> v(grid->size(), value);
  return Field(std::move(grid), std::move(v));
}

bool same_grid(const Grid& a, const Grid& b) { return a.n_cells() == b.n_cells(); }

void require_same_grid(const Field& a, const Field& b) {
  if (!same_grid(a.grid(), b.grid())) {
    throw MismatchedGrids("fields live on grids with " + std::to_string(a.grid().n_cells()) + " and " +
                          std::to_string(b.grid().n_cells()) + " cells");
  }
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return Field(a.grid_ptr(), std::move(v));
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return Field(a.grid_ptr(), std::move(v));
}

double max_norm(const Field& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

double l2_norm(std::span<const double> values, double dtheta) {
  double sum = 0.0;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += w * values[i] * values[i];
  }
  return std::sqrt(sum * dtheta);
}

double l2_norm(const Field& f) { return l2_norm(f.values(), f.grid().dtheta()); }

double min_value(const Field& f) { return *std::min_element(f.values().begin(), f.values().end()); }

double max_value(const Field& f) { return *std::max_element(f.values().begin(), f.values().end()); }

Field restrict_to(const Field& fine, const GridPtr& coarse) {
  const int nf = fine.grid().n_cells();
  const int nc = coarse->n_cells();
  if (nf < nc || nf % nc != 0) {
    throw MismatchedGrids("cannot restrict " + std::to_string(nf) + " cells onto " + std::to_string(nc));
  }
  const int stride = nf / nc;
  std::vector<double> v(coarse->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fine[i * stride];
  return Field(coarse, std::move(v));
}

}  // namespace dpde
