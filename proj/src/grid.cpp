#include "phient/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace phient {

namespace {

void check_common(int n, double length) {
  if (n < 8) throw std::invalid_argument("make_grid: n must be at least 8");
  if (!(length > 0.0)) throw std::invalid_argument("make_grid: domain length must be positive");
}

}  // namespace

GridPtr make_grid(GridKind kind, int n, double a, double b) {
  if (kind == GridKind::torus2d)
    throw std::invalid_argument("make_grid: use make_grid_torus for torus2d");
  const double length = b - a;
  check_common(n, length);

  auto g = std::make_shared<Grid>();
  g->kind = kind;
  g->nx = n;
  g->ny = 1;
  g->x0 = a;
  g->lx = length;
  g->x.resize(n);
  g->vol.resize(n);

  if (kind == GridKind::circle) {
    g->hx = length / n;
    for (int i = 0; i < n; ++i) {
      g->x[i] = a + i * g->hx;
      g->vol[i] = g->hx;
    }
  } else {
    g->hx = length / (n - 1);
    for (int i = 0; i < n; ++i) {
      g->x[i] = a + i * g->hx;
      g->vol[i] = (i == 0 || i == n - 1) ? 0.5 * g->hx : g->hx;
    }
  }
  return g;
}

GridPtr make_grid_torus(int nx, int ny, double lx, double ly) {
  check_common(nx, lx);
  check_common(ny, ly);

  auto g = std::make_shared<Grid>();
  g->kind = GridKind::torus2d;
  g->nx = nx;
  g->ny = ny;
  g->lx = lx;
  g->ly = ly;
  g->hx = lx / nx;
  g->hy = ly / ny;
  g->x.resize(nx);
  g->y.resize(ny);
  for (int i = 0; i < nx; ++i) g->x[i] = i * g->hx;
  for (int j = 0; j < ny; ++j) g->y[j] = j * g->hy;
  g->vol.assign(static_cast<size_t>(nx) * ny, g->hx * g->hy);
  return g;
}

bool same_grid(const Grid& a, const Grid& b) {
  return a.kind == b.kind && a.nx == b.nx && a.ny == b.ny &&
         a.x0 == b.x0 && a.lx == b.lx && a.y0 == b.y0 && a.ly == b.ly;
}

int refined_node_count(GridKind kind, int n) {
  switch (kind) {
    case GridKind::circle:
    case GridKind::torus2d:
      return 2 * n;
    default:
      return 2 * n - 1;
  }
}

}  // namespace phient
