#ifndef PHIENT_TESTS_HELPERS_HPP
#define PHIENT_TESTS_HELPERS_HPP

#include <cmath>
#include <functional>
#include <random>

#include "phient/gamma.hpp"
#include "phient/random_fields.hpp"

namespace phient::testing {

inline GridPtr circle(int n, double len = 2.0 * M_PI) {
  return make_grid(GridKind::circle, n, 0.0, len);
}

inline Generator circle_generator(int n, const std::function<double(double)>& V) {
  return Generator::build(make_field(circle(n), V));
}

inline Generator zero_circle_generator(int n) {
  return circle_generator(n, [](double) { return 0.0; });
}

/// Richardson step for a quantity computed at node counts n and refined(n).
inline double extrapolate(GridKind kind, int n, const std::function<double(int)>& value) {
  return richardson2(value(n), value(refined_node_count(kind, n)));
}

/// Random smooth circle potential, a few Fourier modes.
inline ScalarField random_potential(const GridPtr& grid, std::mt19937_64& rng) {
  return random_band_limited(grid, rng, 3, 0.5, 0.0);
}

inline double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace phient::testing

#endif
