#include "phient/cdc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace phient {

double cdc_lhs(const GammaContext& ctx, const PhiFunction& phi, const ScalarField& f,
               GammaRoute route) {
  phi.require_admissible(f);
  const WeightedMeasure& mu = ctx.gen.measure();

  ScalarField phi1 = phi.map(f, &PhiFunction::d1);
  ScalarField g2 = gamma2(ctx, phi1, phi1, route);
  ScalarField gam = gamma(ctx, f, f, route);

  double acc = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double p2 = phi.d2(f.values[i]);
    const double pg = p2 * gam.values[i];
    acc += (2.0 * g2.values[i] / p2 - phi.inv_d2_second(f.values[i]) * pg * pg) *
           mu.weights[i];
  }
  return acc;
}

CdcReport integral_cdc_margin(const GammaContext& ctx, const PhiFunction& phi,
                              const ScalarField& f, double K, double m,
                              GammaRoute route) {
  const EntropyFunctionals e = entropy_functionals(phi, f, ctx.gen, route);
  if (!(e.c > 0.0) && !std::isinf(m))
    throw std::logic_error("integral_cdc_margin: C_Phi vanished for admissible f");

  CdcReport rep;
  rep.boundary_term = 0.0;
  rep.lhs = cdc_lhs(ctx, phi, f, route) + rep.boundary_term;
  rep.rhs = 2.0 * K * e.q + (std::isinf(m) ? 0.0 : 2.0 * e.q * e.q / (m * e.c));
  rep.margin = rep.lhs - rep.rhs;
  return rep;
}

namespace {

CdcReport assemble(double lhs, double q, double C, double K, double m) {
  CdcReport rep;
  rep.boundary_term = 0.0;
  rep.lhs = lhs;
  rep.rhs = 2.0 * K * q + (std::isinf(m) ? 0.0 : 2.0 * q * q / (m * C));
  rep.margin = rep.lhs - rep.rhs;
  return rep;
}

}  // namespace

CdcReport integral_cdc_margin_exponential(const GammaContext& ctx, const ScalarField& g,
                                          double K, double m) {
  const WeightedMeasure& mu = ctx.gen.measure();
  ScalarField eg(g.grid, g.values.array().exp());
  ScalarField g2 = gamma2_geometric(ctx, g, g);
  ScalarField gam = gamma_stencil(g, g);
  double lhs = 0.0, q = 0.0, C = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double w = mu.weights[i] * eg.values[i];
    lhs += 2.0 * g2.values[i] * w;
    q += gam.values[i] * w;
    C += w;
  }
  return assemble(lhs, q, C, K, m);
}

CdcReport integral_cdc_margin_power(const GammaContext& ctx, const ScalarField& f,
                                    double p, double K, double m) {
  PhiFunction::power(p).require_admissible(f);
  const WeightedMeasure& mu = ctx.gen.measure();
  ScalarField fp1(f.grid, f.values.array().pow(p - 1.0));
  ScalarField logf(f.grid, f.values.array().log());
  ScalarField g2 = gamma2_geometric(ctx, fp1, fp1);
  ScalarField gamlog = gamma_stencil(logf, logf);
  double lhs = 0.0, q = 0.0, C = 0.0;
  const double c1 = 1.0 / ((p - 1.0) * (p - 1.0));
  const double c2 = 0.5 * (2.0 - p) * (p - 1.0);
  for (int i = 0; i < f.size(); ++i) {
    const double w = mu.weights[i];
    const double x = f.values[i];
    const double xp = std::pow(x, p);
    lhs += 2.0 * (c1 * std::pow(x, 2.0 - p) * g2.values[i] +
                  c2 * xp * gamlog.values[i] * gamlog.values[i]) * w;
    q += xp * gamlog.values[i] * w;
    C += xp * w;
  }
  return assemble(lhs, q, C, K, m);
}

double pointwise_cd_margin(const GammaContext& ctx, double K, double m) {
  const Grid& grid = ctx.gen.grid();
  const int dim = grid.dimension();
  if (!(m >= dim)) throw std::invalid_argument("pointwise_cd_margin: need m >= dimension");
  const bool inf_m = std::isinf(m);

  if (dim == 1) {
    const ScalarField vpp = ctx.vpp ? *ctx.vpp : second_derivative(ctx.gen.potential(), 0);
    const ScalarField vp = ctx.vp ? *ctx.vp : gradient(ctx.gen.potential(), 0);
    double r = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.node_count(); ++i) {
      const double val = inf_m
                             ? -vpp.values[i] - K
                             : (m - 1.0) * (-vpp.values[i] - K) - vp.values[i] * vp.values[i];
      r = std::min(r, val);
    }
    return r;
  }

  const ScalarField vxx = ctx.vxx ? *ctx.vxx : second_derivative(ctx.gen.potential(), 0);
  const ScalarField vyy = ctx.vyy ? *ctx.vyy : second_derivative(ctx.gen.potential(), 1);
  const ScalarField vxy = ctx.vxy ? *ctx.vxy : mixed_second_derivative(ctx.gen.potential());
  const ScalarField vx = ctx.vx ? *ctx.vx : gradient(ctx.gen.potential(), 0);
  const ScalarField vy = ctx.vy ? *ctx.vy : gradient(ctx.gen.potential(), 1);

  double r = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.node_count(); ++i) {
    double a, b, c;  // symmetric 2x2 [[a, c], [c, b]]
    if (inf_m) {
      a = -vxx.values[i] - K;
      b = -vyy.values[i] - K;
      c = -vxy.values[i];
    } else {
      const double s = m - 2.0;
      a = s * (-vxx.values[i] - K) - vx.values[i] * vx.values[i];
      b = s * (-vyy.values[i] - K) - vy.values[i] * vy.values[i];
      c = s * (-vxy.values[i]) - vx.values[i] * vy.values[i];
    }
    const double mid = 0.5 * (a + b);
    const double rad = std::sqrt(0.25 * (a - b) * (a - b) + c * c);
    r = std::min(r, mid - rad);
  }
  return r;
}

double optimal_variance_k(const Generator& gen) {
  const GridKind kind = gen.bc();
  if (kind != GridKind::circle && kind != GridKind::interval_neumann)
    throw std::invalid_argument("optimal_variance_k: circle or Neumann interval only");
  return gen.spectral_gap();
}

double optimal_variance_k_extrapolated(const std::function<Generator(int)>& factory,
                                       int n, GridKind kind) {
  const double coarse = optimal_variance_k(factory(n));
  const double fine = optimal_variance_k(factory(refined_node_count(kind, n)));
  return richardson2(coarse, fine);
}

namespace {

double ramp(double u) {
  if (u <= 1.0) return 0.0;
  if (u >= 2.0) return 1.0;
  const double s = u - 1.0;
  return s * s * (3.0 - 2.0 * s);
}

}  // namespace

double concave_family_potential(double x) {
  const double u = std::abs(x);
  if (u <= 1.0) return 0.0;
  if (u <= 2.0) {
    const double s = u - 1.0;
    return -(s * s * s * s / 4.0 - s * s * s * s * s / 10.0);
  }
  const double r = u - 2.0;
  return -3.0 / 20.0 - 0.5 * r - 0.5 * r * r;
}

double concave_family_potential_d1(double x) {
  const double u = std::abs(x);
  const double sign = x < 0.0 ? -1.0 : 1.0;
  if (u <= 1.0) return 0.0;
  if (u <= 2.0) {
    const double s = u - 1.0;
    return sign * (-(s * s * s - s * s * s * s / 2.0));
  }
  return sign * (-0.5 - (u - 2.0));
}

double concave_family_potential_d2(double x) { return -ramp(std::abs(x)); }

ConcaveFamilyCertificate concave_family_certificate(double R, int n) {
  if (R < 6.0)
    throw std::invalid_argument("concave_family_certificate: R < 6 truncates the tail too much");

  ConcaveFamilyCertificate cert;

  // First u with ramp(u) >= 1/2, by bisection; delta = 2 - u.
  double lo = 1.0, hi = 2.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ramp(mid) >= 0.5 ? hi : lo) = mid;
  }
  cert.delta = 2.0 - hi;

  GridPtr grid = make_grid(GridKind::interval_neumann, n, -R, R);
  ScalarField V = make_field(grid, concave_family_potential);

  double vmax = concave_family_potential(0.0), vmin = concave_family_potential(2.0);
  for (int i = 0; i < grid->nx; ++i)
    if (std::abs(grid->x[i]) <= 2.0) {
      vmax = std::max(vmax, V.values[i]);
      vmin = std::min(vmin, V.values[i]);
    }
  cert.osc = vmax - vmin;
  cert.k_lower = std::exp(-cert.osc) * std::min(cert.delta / 16.0, 1.0 / 64.0);
  cert.k_numeric = optimal_variance_k(Generator::build(V));
  return cert;
}

double counterexample_integral(double alpha, double R, int n) {
  if (!(alpha > 0.0)) throw std::invalid_argument("counterexample_integral: alpha must be positive");
  if (n < 2048) throw std::invalid_argument("counterexample_integral: n must be at least 2048");
  const double tail = -alpha * (R * R * R * R + R * R);  // V(R) + f(R)
  if (!(std::exp(tail) < 1e-12))
    throw std::invalid_argument("counterexample_integral: exp(V+f) tail above 1e-12 at |x| = R");

  GridPtr grid = make_grid(GridKind::interval_neumann, n, -R, R);
  double acc = 0.0;
  for (int i = 0; i < grid->nx; ++i) {
    const double x = grid->x[i];
    const double x2 = x * x;
    const double V = -alpha * (x2 * x2 - 2.0 * x2);
    const double f = -3.0 * alpha * x2;
    const double fp = -6.0 * alpha * x;
    const double fpp = -6.0 * alpha;
    const double vpp = -alpha * (12.0 * x2 - 4.0);
    acc += std::exp(f + V) * (fpp * fpp - vpp * fp * fp) * grid->vol[i];
  }
  return acc;
}

double counterexample_sign_change(double lo, double hi) {
  const auto value = [](double alpha) {
    double R = std::max(4.0, std::pow(32.0 / alpha, 0.25));
    int n = std::max(2048, static_cast<int>(512.0 * R));
    return counterexample_integral(alpha, R, n);
  };
  double flo = value(lo), fhi = value(hi);
  if (!(flo > 0.0 && fhi < 0.0))
    throw std::runtime_error("counterexample_sign_change: endpoints do not bracket a sign change");
  for (int it = 0; it < 200 && hi - lo > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double derivative_at_zero_check(const GammaContext& ctx, const PhiFunction& phi,
                                const ScalarField& f, double dt, GammaRoute route) {
  const Generator& gen = ctx.gen;
  const double q0 = entropy_functionals(phi, f, gen, route).q;
  ScalarField u1 = gen.apply_semigroup(f, dt);
  ScalarField u2 = gen.apply_semigroup(f, 2.0 * dt);
  const double q2 = entropy_functionals(phi, u2, gen, route).q;
  const double dq = (q2 - q0) / (2.0 * dt);
  return std::abs(dq + cdc_lhs(ctx, phi, u1, route));
}

}  // namespace phient
