#ifndef PHIENT_GENERATOR_HPP
#define PHIENT_GENERATOR_HPP

#include <Eigen/Dense>
#include <memory>

#include "phient/measure.hpp"

namespace phient {

/// Finite-volume discretization of L = Laplacian + grad(V).grad with its
/// normalized weight measure.  Divergence form
///   (L f)_i = (1/w_i) * sum_faces a_ij (f_j - f_i),
/// face conductance a_ij = exp((V_i+V_j)/2) * (face area) / dist, which makes
/// L self-adjoint in l2(mu) and mass-conserving by construction.  On
/// interval_dirichlet grids the operator is the restriction to interior
/// nodes (zero boundary data); mass conservation does not apply there.
///
/// The semigroup e^{tL} is evaluated through the eigendecomposition of the
/// symmetrized matrix H = D L D^{-1}, D = diag(sqrt(w)); the decomposition is
/// computed once on first use and shared by copies of the handle.
class Generator {
 public:
  static Generator build(const ScalarField& V);

  const Grid& grid() const;
  GridPtr grid_ptr() const;
  GridKind bc() const;
  /// Potential after the normalizing shift (measure has total mass one).
  const ScalarField& potential() const;
  const WeightedMeasure& measure() const;

  /// Dense L on active nodes (all nodes, or interior for Dirichlet).
  const Eigen::MatrixXd& matrix() const;

  /// L f.  Dirichlet: boundary entries of the result are zero.
  ScalarField apply(const ScalarField& f) const;

  /// P_t f = e^{tL} f, t >= 0.
  ScalarField apply_semigroup(const ScalarField& f, double t) const;

  /// | int f Lg dmu - int g Lf dmu |.
  double symmetry_residual(const ScalarField& f, const ScalarField& g) const;

  /// Discrete Dirichlet form sum_faces a_ij (f_i-f_j)(g_i-g_j); equals
  /// -int f Lg dmu exactly on periodic/Neumann grids.
  double dirichlet_energy(const ScalarField& f, const ScalarField& g) const;

  /// Eigenvalues of L on active nodes, ascending (most negative first).
  const Eigen::VectorXd& eigenvalues() const;

  /// Smallest nonzero eigenvalue of -L after deflating the constant mode.
  /// Throws if the deflated form is not positive (discretization bug).
  double spectral_gap() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace phient

#endif
