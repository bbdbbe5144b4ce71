#ifndef PHIENT_GAMMA_HPP
#define PHIENT_GAMMA_HPP

#include <optional>

#include "phient/generator.hpp"
#include "phient/phi.hpp"

namespace phient {

/// Selects how Gamma-type quantities are discretized:
///  - stencil: central differences (second-order one-sided at interval ends),
///    consistent with the continuum operators;
///  - algebraic: compositions of the discrete generator itself, which keep
///    the discrete integration-by-parts identities exact.
enum class GammaRoute { stencil, algebraic };

/// Generator plus optional analytic derivatives of the potential.  When the
/// analytic fields are absent they are produced by the same stencils used
/// for test functions.
struct GammaContext {
  Generator gen;
  std::optional<ScalarField> vp;    // V'   (1-D)
  std::optional<ScalarField> vpp;   // V''  (1-D)
  std::optional<ScalarField> vx, vy;          // torus2d gradient
  std::optional<ScalarField> vxx, vxy, vyy;   // torus2d Hessian

  explicit GammaContext(Generator g) : gen(std::move(g)) {}
};

// Stencil derivatives.  axis 0 = x, 1 = y (torus2d only).
ScalarField gradient(const ScalarField& f, int axis = 0);
ScalarField second_derivative(const ScalarField& f, int axis = 0);
ScalarField mixed_second_derivative(const ScalarField& f);

/// Gamma(f,g) = grad f . grad g by stencils.
ScalarField gamma_stencil(const ScalarField& f, const ScalarField& g);

/// Gamma(f,g) = (L(fg) - f Lg - g Lf)/2.
ScalarField gamma_algebraic(const Generator& gen, const ScalarField& f, const ScalarField& g);

ScalarField gamma(const GammaContext& ctx, const ScalarField& f, const ScalarField& g,
                  GammaRoute route = GammaRoute::stencil);

/// Closed geometric form: <Hess f, Hess g> - Hess_V(grad f, grad g)
/// (1-D: f'' g'' - V'' f' g').
ScalarField gamma2_geometric(const GammaContext& ctx, const ScalarField& f, const ScalarField& g);

/// Iterated-operator form (L Gamma(f,g) - Gamma(Lf,g) - Gamma(f,Lg))/2 with
/// the algebraic Gamma inside.
ScalarField gamma2_iterated(const GammaContext& ctx, const ScalarField& f, const ScalarField& g);

ScalarField gamma2(const GammaContext& ctx, const ScalarField& f, const ScalarField& g,
                   GammaRoute route = GammaRoute::stencil);

/// Max-norm residual of the semigroup identity
///   (L - d/dt)[Phi''(u) Gamma(u)] =
///     2 Gamma2(Phi'(u))/Phi''(u) - (1/Phi'')''(u) [Phi''(u) Gamma(u)]^2
/// at u = P_t f, with d/dt expanded through du/dt = Lu.  On intervals the
/// two cells nearest each end are excluded from the norm.
double identity_residual(const GammaContext& ctx, const PhiFunction& phi,
                        const ScalarField& f, double t);

}  // namespace phient

#endif
