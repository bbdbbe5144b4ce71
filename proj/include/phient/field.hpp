#ifndef PHIENT_FIELD_HPP
#define PHIENT_FIELD_HPP

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

#include "phient/grid.hpp"

namespace phient {

/// Real values on grid nodes; the discrete stand-in for a smooth function.
struct ScalarField {
  GridPtr grid;
  Eigen::VectorXd values;

  ScalarField() = default;
  ScalarField(GridPtr g, Eigen::VectorXd v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid || values.size() != grid->node_count())
      throw std::invalid_argument("ScalarField: value count does not match grid");
    if (!values.allFinite())
      throw std::invalid_argument("ScalarField: non-finite values");
  }

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[i]; }
};

/// Sample a function of x (1-D) or (x, y) (torus2d) on the grid nodes.
ScalarField make_field(const GridPtr& grid, const std::function<double(double)>& f);
ScalarField make_field2d(const GridPtr& grid, const std::function<double(double, double)>& f);
ScalarField constant_field(const GridPtr& grid, double c);

inline void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (a.grid.get() != b.grid.get() && !same_grid(*a.grid, *b.grid))
    throw std::invalid_argument("fields live on different grids");
}

/// CSV columns "x,value" (torus2d: "x,y,value"), one row per node.
std::string to_csv(const ScalarField& f);

}  // namespace phient

#endif
