#ifndef PHIENT_GRID_HPP
#define PHIENT_GRID_HPP

#include <memory>
#include <vector>

namespace phient {

enum class GridKind { circle, interval_neumann, interval_dirichlet, torus2d };

/// Uniform node grid on a model geometry.  Periodic grids cover [x0, x0+lx)
/// without duplicating the seam; interval grids include both endpoints and
/// carry trapezoid half-cells there.
struct Grid {
  GridKind kind;
  int nx = 0;
  int ny = 1;                 // > 1 only for torus2d
  double x0 = 0.0, lx = 0.0;  // start and length along x
  double y0 = 0.0, ly = 0.0;
  double hx = 0.0, hy = 0.0;
  std::vector<double> x;      // node coordinates per axis
  std::vector<double> y;
  std::vector<double> vol;    // cell volume per node, size node_count()

  int node_count() const { return nx * ny; }
  int index(int i, int j) const { return j * nx + i; }
  int dimension() const { return kind == GridKind::torus2d ? 2 : 1; }
  bool periodic_x() const {
    return kind == GridKind::circle || kind == GridKind::torus2d;
  }
  bool is_interval() const {
    return kind == GridKind::interval_neumann ||
           kind == GridKind::interval_dirichlet;
  }
};

using GridPtr = std::shared_ptr<const Grid>;

/// 1-D factory.  For circle the domain [a,b) is the covered arc; for
/// intervals [a,b] is inclusive.  Rejects n < 8 and non-positive lengths.
GridPtr make_grid(GridKind kind, int n, double a, double b);

/// Flat 2-D torus of side lengths lx, ly.
GridPtr make_grid_torus(int nx, int ny, double lx, double ly);

bool same_grid(const Grid& a, const Grid& b);

/// Node count whose mesh width is half that of an n-node grid of this kind
/// (2n on periodic grids, 2n-1 on intervals).
int refined_node_count(GridKind kind, int n);

/// Two-level Richardson step for second-order quantities:
/// (4*fine - coarse) / 3.
inline double richardson2(double coarse, double fine) {
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace phient

#endif
