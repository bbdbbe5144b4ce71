#ifndef PHIENT_SCHRODINGER_HPP
#define PHIENT_SCHRODINGER_HPP

#include <functional>

#include "phient/entropy.hpp"

namespace phient {

using Potential1D = std::function<double(double)>;

/// Leading Dirichlet eigenpairs of -d2/dx2 + U on [a, b] (3-point interior
/// discretization).  Eigenfunctions live on the n-2 interior nodes,
/// normalized to int phi^2 dx = 1, with phi0 > 0.
struct Spectrum {
  GridPtr grid;                    // full grid including the boundary nodes
  Eigen::VectorXd eigenvalues;     // first k, ascending
  Eigen::MatrixXd eigenfunctions;  // (n-2) x k
};

/// First k eigenpairs.  Eigenvalues by Sturm-sequence bisection, vectors by
/// inverse iteration with a pivoted tridiagonal solve.  With
/// refine_eigenvalues the eigenvalues are Richardson-extrapolated from the
/// n and 2n-1 grids (vectors stay on the base grid).
Spectrum dirichlet_eigs(const Potential1D& U, double a, double b, int k, int n,
                        bool refine_eigenvalues = false);

/// Diffusion generated by the ground state of -d2/dx2 + U: the invariant
/// measure is phi0^2 dx and the semigroup acts by conjugation with the
/// Dirichlet Schroedinger semigroup,
///   P_t f = phi0^{-1} e^{-t(H - lambda0)} (phi0 f),
/// which avoids discretizing the drift 2 (log phi0)', singular at the walls.
/// Fields live on the interior nodes.
class GroundStateSystem {
 public:
  GroundStateSystem(const Potential1D& U, double a, double b, int n);

  double lambda0() const { return lambda_(0); }
  double lambda1() const { return lambda_(1); }
  double diam() const;
  GridPtr interior_grid() const { return igrid_; }
  const WeightedMeasure& measure() const { return mu_; }
  ScalarField phi0() const { return ScalarField(igrid_, phi0_); }

  ScalarField apply_semigroup(const ScalarField& f, double t) const;

  /// (log phi0)'' by stencils on the interior nodes.
  ScalarField hess_log_phi0() const;
  /// Max of (log phi0)'' over nodes at distance >= 2h from the boundary.
  double max_hess_log_phi0() const;

  /// q_Phi(f) = int Phi''(f) Gamma(f) dmu, Gamma by stencils.
  double q(const PhiFunction& phi, const ScalarField& f) const;
  double c(const PhiFunction& phi, const ScalarField& f) const;

 private:
  GridPtr igrid_;
  double h_;
  Eigen::VectorXd lambda_;
  Eigen::MatrixXd Q_;      // Euclidean-orthonormal columns
  Eigen::VectorXd phi0_;   // int phi0^2 dx = 1
  WeightedMeasure mu_;
};

GroundStateSystem ground_state_system(const Potential1D& U, double a, double b, int n);

/// (lambda1 - lambda0) - 3 pi^2 / diam^2 with Richardson-refined eigenvalues.
/// Rejects non-convex U (sampled second differences below -1e-10).
double fundamental_gap_margin(const Potential1D& U, double a, double b, int n);

/// 4 (lambda0~ - Utilde(0)) where lambda0~ is the first Dirichlet eigenvalue
/// of -d2/dx2 + Utilde on [-diam/2, diam/2].  Utilde must be even.
double modulus_decay_rate(const Potential1D& Utilde, double diam, int n);

/// Measured q_Phi(P_t f) under the ground-state semigroup against
/// exp(-rate t) q_Phi(f) with rate = modulus_decay_rate(Utilde).
DecayReport check_schrodinger_decay(const GroundStateSystem& sys, const Potential1D& Utilde,
                                    const PhiFunction& phi, const ScalarField& f,
                                    const std::vector<double>& times);

}  // namespace phient

#endif
