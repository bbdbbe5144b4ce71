#ifndef PHIENT_RANDOM_FIELDS_HPP
#define PHIENT_RANDOM_FIELDS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "phient/measure.hpp"

namespace phient {

// Seeded test-data generators shared by the CLI and the test suites.  The
// uniform draw is hand-rolled from raw engine output so identical seeds give
// identical doubles on every standard library.

inline double uniform_draw(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

/// offset + sum_{k=1..kmax} a_k cos(k s) + b_k sin(k s), s = 2 pi (x-x0)/L,
/// coefficients scaled so that sum |a|+|b| <= spread (keeps the field at
/// least offset - spread everywhere).  mode_decay > 0 damps mode k by
/// k^{-mode_decay} before rescaling, for suites that need small high-mode
/// time derivatives.
inline ScalarField random_band_limited(const GridPtr& grid, std::mt19937_64& rng,
                                       int kmax, double spread, double offset,
                                       double mode_decay = 0.0) {
  std::vector<double> a(kmax), b(kmax);
  double norm = 0.0;
  for (int k = 0; k < kmax; ++k) {
    const double damp = std::pow(k + 1.0, -mode_decay);
    a[k] = uniform_draw(rng, -1.0, 1.0) * damp;
    b[k] = uniform_draw(rng, -1.0, 1.0) * damp;
    norm += std::abs(a[k]) + std::abs(b[k]);
  }
  const double scale = norm > 0.0 ? spread / norm : 0.0;
  const double x0 = grid->x0, L = grid->lx;
  return make_field(grid, [=](double x) {
    const double s = 2.0 * M_PI * (x - x0) / L;
    double v = offset;
    for (int k = 0; k < kmax; ++k)
      v += scale * (a[k] * std::cos((k + 1) * s) + b[k] * std::sin((k + 1) * s));
    return v;
  });
}

/// Random convex C^1 piecewise-quadratic potential on [a, b]: nondecreasing
/// piecewise-linear slope integrated once.
inline std::function<double(double)> random_convex_potential(std::mt19937_64& rng,
                                                             double a, double b) {
  const int pieces = 3;
  std::vector<double> brk = {a};
  for (int i = 1; i < pieces; ++i) brk.push_back(uniform_draw(rng, a, b));
  std::sort(brk.begin(), brk.end());
  brk.push_back(b);

  std::vector<double> curv(pieces);
  for (int i = 0; i < pieces; ++i) curv[i] = uniform_draw(rng, 0.0, 40.0);
  const double s0 = uniform_draw(rng, -10.0, 10.0);

  std::vector<double> slope = {s0}, val = {0.0};
  for (int i = 0; i < pieces; ++i) {
    const double len = brk[i + 1] - brk[i];
    slope.push_back(slope[i] + curv[i] * len);
    val.push_back(val[i] + slope[i] * len + 0.5 * curv[i] * len * len);
  }
  return [=](double x) {
    int i = 0;
    while (i + 1 < pieces && x > brk[i + 1]) ++i;
    const double d = x - brk[i];
    return val[i] + slope[i] * d + 0.5 * curv[i] * d * d;
  };
}

}  // namespace phient

#endif
