#include "phient/measure.hpp"

#include <cmath>
#include <cstdio>

namespace phient {

std::string to_csv(const ScalarField& f) {
  const Grid& g = *f.grid;
  std::string s;
  char line[120];
  if (g.kind == GridKind::torus2d) {
    s = "x,y,value\n";
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", g.x[i], g.y[j],
                      f.values[g.index(i, j)]);
        s += line;
      }
  } else {
    s = "x,value\n";
    for (int i = 0; i < g.nx; ++i) {
      std::snprintf(line, sizeof line, "%.17g,%.17g\n", g.x[i], f.values[i]);
      s += line;
    }
  }
  return s;
}

ScalarField make_field(const GridPtr& grid, const std::function<double(double)>& f) {
  Eigen::VectorXd v(grid->node_count());
  if (grid->kind == GridKind::torus2d)
    throw std::invalid_argument("make_field: torus2d needs a function of (x, y)");
  for (int i = 0; i < grid->nx; ++i) v[i] = f(grid->x[i]);
  return ScalarField(grid, std::move(v));
}

ScalarField make_field2d(const GridPtr& grid, const std::function<double(double, double)>& f) {
  Eigen::VectorXd v(grid->node_count());
  if (grid->kind == GridKind::torus2d) {
    for (int j = 0; j < grid->ny; ++j)
      for (int i = 0; i < grid->nx; ++i)
        v[grid->index(i, j)] = f(grid->x[i], grid->y[j]);
  } else {
    for (int i = 0; i < grid->nx; ++i) v[i] = f(grid->x[i], 0.0);
  }
  return ScalarField(grid, std::move(v));
}

ScalarField constant_field(const GridPtr& grid, double c) {
  return ScalarField(grid, Eigen::VectorXd::Constant(grid->node_count(), c));
}

double integrate(const ScalarField& f, const WeightedMeasure& mu) {
  if (f.grid.get() != mu.grid.get() && !same_grid(*f.grid, *mu.grid))
    throw std::invalid_argument("integrate: field and measure grids differ");
  return f.values.dot(mu.weights);
}

WeightedMeasure cell_measure(const GridPtr& grid) {
  WeightedMeasure mu;
  mu.grid = grid;
  mu.weights = Eigen::Map<const Eigen::VectorXd>(grid->vol.data(), grid->node_count());
  mu.normalized = false;
  return mu;
}

std::pair<ScalarField, WeightedMeasure> normalize_potential(const ScalarField& V) {
  const auto& grid = V.grid;
  const double vmax = V.values.maxCoeff();

  double mass = 0.0;
  for (int i = 0; i < grid->node_count(); ++i)
    mass += std::exp(V.values[i] - vmax) * grid->vol[i];
  const double shift = vmax + std::log(mass);

  Eigen::VectorXd vs = V.values.array() - shift;
  Eigen::VectorXd w(grid->node_count());
  for (int i = 0; i < grid->node_count(); ++i)
    w[i] = std::exp(vs[i]) * grid->vol[i];

  WeightedMeasure mu;
  mu.grid = grid;
  mu.weights = std::move(w);
  mu.normalized = true;
  return {ScalarField(grid, std::move(vs)), std::move(mu)};
}

}  // namespace phient
