#include "phient/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace phient {

namespace {

EntropyFunctionals functionals_impl(const PhiFunction& phi, const ScalarField& f,
                                    const WeightedMeasure& mu, const ScalarField& gam) {
  if (f.size() != mu.weights.size())
    throw std::invalid_argument("entropy_functionals: field and measure grids differ");
  phi.require_admissible(f);
  EntropyFunctionals out{};
  double ent = 0.0, q = 0.0, c = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double w = mu.weights[i];
    const double x = f.values[i];
    const double p2 = phi.d2(x);
    ent -= phi.value(x) * w;
    q += p2 * gam.values[i] * w;
    c += x * x * p2 * w;
  }
  out.ent = ent;
  out.q = q;
  out.c = c;
  return out;
}

}  // namespace

EntropyFunctionals entropy_functionals(const PhiFunction& phi, const ScalarField& f,
                                       const WeightedMeasure& mu) {
  return functionals_impl(phi, f, mu, gamma_stencil(f, f));
}

EntropyFunctionals entropy_functionals(const PhiFunction& phi, const ScalarField& f,
                                       const Generator& gen, GammaRoute route) {
  const ScalarField gam = route == GammaRoute::stencil
                              ? gamma_stencil(f, f)
                              : gamma_algebraic(gen, f, f);
  return functionals_impl(phi, f, gen.measure(), gam);
}

double decay_bound(double K, double m, double t, double q0, double C0) {
  if (q0 == 0.0) return 0.0;
  if (std::isinf(m)) return std::exp(-2.0 * K * t) * q0;
  if (std::abs(K) < 1e-12)
    return 1.0 / (1.0 / q0 + 2.0 * t / (m * C0));
  const double e = std::exp(-2.0 * K * t);
  return e / (1.0 / q0 + (1.0 - e) / (m * K * C0));
}

double DecayReport::min_margin() const {
  double r = std::numeric_limits<double>::infinity();
  for (double v : margin) r = std::min(r, v);
  return r;
}

double DecayReport::max_abs_margin() const {
  double r = 0.0;
  for (double v : margin) r = std::max(r, std::abs(v));
  return r;
}

std::string DecayReport::to_csv() const {
  std::string s = "t,q_measured,bound,margin\n";
  char line[160];
  for (size_t i = 0; i < times.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n",
                  times[i], measured[i], bound[i], margin[i]);
    s += line;
  }
  return s;
}

DecayReport check_decay(const Generator& gen, const PhiFunction& phi, const ScalarField& f,
                        double K, double m, const std::vector<double>& times,
                        GammaRoute route) {
  if (!std::is_sorted(times.begin(), times.end()) ||
      (!times.empty() && times.front() < 0.0))
    throw std::invalid_argument("check_decay: times must be sorted and nonnegative");

  const EntropyFunctionals at0 = entropy_functionals(phi, f, gen, route);
  DecayReport rep;
  rep.K = K;
  rep.m = m;
  rep.q0 = at0.q;
  rep.c0 = at0.c;
  for (double t : times) {
    ScalarField u = gen.apply_semigroup(f, t);
    phi.require_admissible(u, 1e-10);
    const double q = entropy_functionals(phi, u, gen, route).q;
    const double b = decay_bound(K, m, t, at0.q, at0.c);
    rep.times.push_back(t);
    rep.measured.push_back(q);
    rep.bound.push_back(b);
    rep.margin.push_back(b - q);
  }
  return rep;
}

double phi_sobolev_margin(const PhiFunction& phi, const ScalarField& f,
                          const WeightedMeasure& mu, double K) {
  if (!(K > 0.0)) throw std::invalid_argument("phi_sobolev_margin: K must be positive");
  const EntropyFunctionals e = entropy_functionals(phi, f, mu);
  const double mean = integrate(f, mu);
  const double deficit = -e.ent - phi.value(mean);  // int Phi(f) - Phi(mean)
  return e.q / (2.0 * K) - deficit;
}

}  // namespace phient
