#ifndef PHIENT_MEASURE_HPP
#define PHIENT_MEASURE_HPP

#include <utility>

#include "phient/field.hpp"

namespace phient {

/// Cell weights e^{V(x_i)} * vol_i; a probability measure when normalized.
struct WeightedMeasure {
  GridPtr grid;
  Eigen::VectorXd weights;
  bool normalized = false;
};

/// Quadrature: sum of f_i * w_i.
double integrate(const ScalarField& f, const WeightedMeasure& mu);

/// Shift V so that e^V dx has total mass one.  Returns the shifted potential
/// and the normalized measure.  Exponentiation is guarded by subtracting
/// max(V) first.
std::pair<ScalarField, WeightedMeasure> normalize_potential(const ScalarField& V);

/// Lebesgue cell measure (weights = vol), not normalized.
WeightedMeasure cell_measure(const GridPtr& grid);

}  // namespace phient

#endif
