#ifndef PHIENT_CDC_HPP
#define PHIENT_CDC_HPP

#include <functional>

#include "phient/entropy.hpp"

namespace phient {

/// Sides of the integral curvature-dimension inequality for one test
/// function.  boundary_term holds the Neumann-boundary contribution, which
/// vanishes identically on every implemented geometry (flat 1-D boundaries,
/// zero-flux fields); it is stored explicitly.
struct CdcReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double boundary_term = 0.0;
};

/// int [ 2 Gamma2(Phi'(f))/Phi''(f) - (1/Phi'')''(f) (Phi''(f) Gamma(f))^2 ] dmu.
double cdc_lhs(const GammaContext& ctx, const PhiFunction& phi, const ScalarField& f,
               GammaRoute route = GammaRoute::stencil);

/// lhs (+ boundary term) vs rhs = 2K q + 2 q^2 / (m C); margin = lhs - rhs.
CdcReport integral_cdc_margin(const GammaContext& ctx, const PhiFunction& phi,
                              const ScalarField& f, double K, double m,
                              GammaRoute route = GammaRoute::stencil);

/// Exponential-substitution form of the relative-entropy condition evaluated
/// directly at g (the generic form at e^g, written in terms of g):
///   lhs = 2 int e^g Gamma2(g) dmu,  q = int e^g Gamma(g) dmu,  C = mu(e^g).
CdcReport integral_cdc_margin_exponential(const GammaContext& ctx, const ScalarField& g,
                                          double K, double m);

/// Expanded power-family form evaluated directly at f:
///   lhs = 2 [ int f^{2-p} Gamma2(f^{p-1}) dmu / (p-1)^2
///             + (2-p)(p-1)/2 int f^p Gamma(log f)^2 dmu ],
///   q = int f^p Gamma(log f) dmu,  C = mu(f^p).
CdcReport integral_cdc_margin_power(const GammaContext& ctx, const ScalarField& f,
                                    double p, double K, double m);

/// Min over nodes of the smallest eigenvalue of
/// (m - n)(-Hess V - K Id) - grad V (x) grad V   (n = grid dimension);
/// at m = inf this degenerates to min eig(-Hess V) - K.  Nonnegative iff the
/// pointwise condition CD(K, m) holds on the sampled potential.
double pointwise_cd_margin(const GammaContext& ctx, double K, double m);

/// Best constant K in  int Gamma2(f) dmu >= K int Gamma(f) dmu  over the
/// complement of constants.  With the operator-consistent quadratic forms
/// (A f = |Lf|^2-form, B = Dirichlet form) the pencil reduces exactly to the
/// spectral gap of -L, which is also the sharp decay constant of the
/// discrete semigroup.
double optimal_variance_k(const Generator& gen);

/// Two-grid Richardson extrapolation of optimal_variance_k: the factory maps
/// a node count to the generator at that resolution.
double optimal_variance_k_extrapolated(const std::function<Generator(int)>& factory,
                                       int n, GridKind kind);

// Built-in concave even potential with V'' = -ramp(|x|): zero on [0,1],
// cubic smoothstep down to -1 across [1,2], -1 beyond.  V(0) = V'(0) = 0.
double concave_family_potential(double x);
double concave_family_potential_d1(double x);
double concave_family_potential_d2(double x);

struct ConcaveFamilyCertificate {
  double delta = 0.0;      // largest d in (0,1) with -V'' >= 1/2 on [2-d, 2]
  double osc = 0.0;        // max - min of V on [-2, 2]
  double k_lower = 0.0;    // exp(-osc) * min(delta/16, 1/64)
  double k_numeric = 0.0;  // optimal_variance_k on the truncated generator
};

/// Certificate for the built-in family truncated to [-R, R] (Neumann),
/// R >= 6, n nodes.
ConcaveFamilyCertificate concave_family_certificate(double R, int n);

/// Quadrature value of int e^f [ (f'')^2 - V'' (f')^2 ] e^V dx on [-R, R]
/// for V = -alpha (x^4 - 2 x^2), f = -3 alpha x^2 (unnormalized measure);
/// a negative value defeats any positive constant in the exponential-form
/// integral condition.  Requires exp(V+f) < 1e-12 at the endpoints.
double counterexample_integral(double alpha, double R, int n);

/// Bisection locating the sign change of counterexample_integral over alpha in
/// (lo, hi), with the truncation radius and node count adapted to alpha.
double counterexample_sign_change(double lo, double hi);

/// | d/dt q_Phi(P_t f) + cdc_lhs | with the time derivative taken as the
/// centered difference across [0, 2 dt] and the spatial side evaluated at
/// P_dt f.  (Centering at t = 0 itself would need the backward flow, which
/// amplifies roundoff in the stiff modes by exp(|lambda_max| dt).)
double derivative_at_zero_check(const GammaContext& ctx, const PhiFunction& phi,
                                const ScalarField& f, double dt = 1e-3,
                                GammaRoute route = GammaRoute::stencil);

}  // namespace phient

#endif
