#ifndef PHIENT_PHI_HPP
#define PHIENT_PHI_HPP

#include <string>

#include "phient/field.hpp"

namespace phient {

/// Entropy kernel Phi with its derivative stack.  Families:
///   xlogx     Phi(x) = x log x            on (0, inf)
///   square    Phi(x) = x^2                on R
///   power(p)  Phi(x) = (x^p - x)/(p(p-1)) on (0, inf), 1 < p <= 2
/// All have Phi'' > 0 with Phi'' and -1/Phi'' convex.
class PhiFunction {
 public:
  enum class Family { xlogx, square, power };

  static PhiFunction xlogx();
  static PhiFunction square();
  static PhiFunction power(double p);

  Family family() const { return family_; }
  double exponent() const { return p_; }
  std::string name() const;

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;
  double d3(double x) const;
  double d4(double x) const;
  /// (1/Phi'')''(x).
  double inv_d2_second(double x) const;

  /// Lower endpoint of the domain interval (open); -inf for square.
  double domain_min() const;

  /// All values strictly inside the domain with the given margin.
  bool admissible(const ScalarField& f, double margin = 1e-8) const;
  void require_admissible(const ScalarField& f, double margin = 1e-8) const;

  ScalarField map(const ScalarField& f, double (PhiFunction::*fn)(double) const) const;

 private:
  PhiFunction(Family fam, double p) : family_(fam), p_(p) {}
  Family family_;
  double p_;
};

/// Factory keyed by name ("xlogx", "square", "power"); p used for power.
PhiFunction phi_suite(const std::string& name, double p = 2.0);

}  // namespace phient

#endif
