#ifndef PHIENT_ENTROPY_HPP
#define PHIENT_ENTROPY_HPP

#include <string>
#include <vector>

#include "phient/gamma.hpp"

namespace phient {

struct EntropyFunctionals {
  double ent;  // -int Phi(f) dmu
  double q;    // int Phi''(f) Gamma(f) dmu
  double c;    // int f^2 Phi''(f) dmu
};

/// The three scalars for f with respect to mu; Gamma by stencils.
EntropyFunctionals entropy_functionals(const PhiFunction& phi, const ScalarField& f,
                                       const WeightedMeasure& mu);

/// Same, with a route choice for Gamma (algebraic needs the generator).
EntropyFunctionals entropy_functionals(const PhiFunction& phi, const ScalarField& f,
                                       const Generator& gen,
                                       GammaRoute route = GammaRoute::stencil);

/// Right-hand side of the decay estimate
///   exp(-2Kt) [ 1/q0 + (1 - exp(-2Kt)) / (m K C0) ]^{-1},
/// with the K -> 0 limit [1/q0 + 2t/(m C0)]^{-1} when |K| < 1e-12, the m = inf
/// branch exp(-2Kt) q0, and 0 when q0 = 0.  m = inf is passed as infinity.
double decay_bound(double K, double m, double t, double q0, double C0);

/// Per-time comparison of the measured q against the decay bound.
struct DecayReport {
  std::vector<double> times;
  std::vector<double> measured;
  std::vector<double> bound;
  std::vector<double> margin;  // bound - measured
  double K = 0.0, m = 0.0, q0 = 0.0, c0 = 0.0;

  double min_margin() const;
  double max_abs_margin() const;
  std::string to_csv() const;  // header t,q_measured,bound,margin
};

DecayReport check_decay(const Generator& gen, const PhiFunction& phi, const ScalarField& f,
                        double K, double m, const std::vector<double>& times,
                        GammaRoute route = GammaRoute::stencil);

/// (1/2K) q_Phi(f) - [ int Phi(f) dmu - Phi(int f dmu) ]; K > 0.
double phi_sobolev_margin(const PhiFunction& phi, const ScalarField& f,
                          const WeightedMeasure& mu, double K);

}  // namespace phient

#endif
