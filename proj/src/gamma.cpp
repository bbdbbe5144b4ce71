#include "phient/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace phient {

namespace {

int wrap(int i, int n) { return (i % n + n) % n; }

Eigen::VectorXd product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.cwiseProduct(b);
}

}  // namespace

ScalarField gradient(const ScalarField& f, int axis) {
  const Grid& g = *f.grid;
  Eigen::VectorXd d(f.values.size());
  if (g.kind == GridKind::torus2d) {
    const int nx = g.nx, ny = g.ny;
    const double h = axis == 0 ? g.hx : g.hy;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int ip = axis == 0 ? g.index(wrap(i + 1, nx), j) : g.index(i, wrap(j + 1, ny));
        const int im = axis == 0 ? g.index(wrap(i - 1, nx), j) : g.index(i, wrap(j - 1, ny));
        d[g.index(i, j)] = (f.values[ip] - f.values[im]) / (2.0 * h);
      }
    return ScalarField(f.grid, std::move(d));
  }
  if (axis != 0) throw std::invalid_argument("gradient: axis 1 needs torus2d");
  const int n = g.nx;
  const double h = g.hx;
  const auto& v = f.values;
  if (g.kind == GridKind::circle) {
    for (int i = 0; i < n; ++i)
      d[i] = (v[wrap(i + 1, n)] - v[wrap(i - 1, n)]) / (2.0 * h);
  } else {
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (int i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  }
  return ScalarField(f.grid, std::move(d));
}

ScalarField second_derivative(const ScalarField& f, int axis) {
  const Grid& g = *f.grid;
  Eigen::VectorXd d(f.values.size());
  if (g.kind == GridKind::torus2d) {
    const int nx = g.nx, ny = g.ny;
    const double h2 = axis == 0 ? g.hx * g.hx : g.hy * g.hy;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int ip = axis == 0 ? g.index(wrap(i + 1, nx), j) : g.index(i, wrap(j + 1, ny));
        const int im = axis == 0 ? g.index(wrap(i - 1, nx), j) : g.index(i, wrap(j - 1, ny));
        const int c = g.index(i, j);
        d[c] = (f.values[ip] - 2.0 * f.values[c] + f.values[im]) / h2;
      }
    return ScalarField(f.grid, std::move(d));
  }
  if (axis != 0) throw std::invalid_argument("second_derivative: axis 1 needs torus2d");
  const int n = g.nx;
  const double h2 = g.hx * g.hx;
  const auto& v = f.values;
  if (g.kind == GridKind::circle) {
    for (int i = 0; i < n; ++i)
      d[i] = (v[wrap(i + 1, n)] - 2.0 * v[i] + v[wrap(i - 1, n)]) / h2;
  } else {
    d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
    for (int i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
    d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
  }
  return ScalarField(f.grid, std::move(d));
}

ScalarField mixed_second_derivative(const ScalarField& f) {
  const Grid& g = *f.grid;
  if (g.kind != GridKind::torus2d)
    throw std::invalid_argument("mixed_second_derivative: torus2d only");
  const int nx = g.nx, ny = g.ny;
  Eigen::VectorXd d(f.values.size());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double fpp = f.values[g.index(wrap(i + 1, nx), wrap(j + 1, ny))];
      const double fpm = f.values[g.index(wrap(i + 1, nx), wrap(j - 1, ny))];
      const double fmp = f.values[g.index(wrap(i - 1, nx), wrap(j + 1, ny))];
      const double fmm = f.values[g.index(wrap(i - 1, nx), wrap(j - 1, ny))];
      d[g.index(i, j)] = (fpp - fpm - fmp + fmm) / (4.0 * g.hx * g.hy);
    }
  return ScalarField(f.grid, std::move(d));
}

ScalarField gamma_stencil(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f, g);
  Eigen::VectorXd v = product(gradient(f, 0).values, gradient(g, 0).values);
  if (f.grid->kind == GridKind::torus2d)
    v += product(gradient(f, 1).values, gradient(g, 1).values);
  return ScalarField(f.grid, std::move(v));
}

ScalarField gamma_algebraic(const Generator& gen, const ScalarField& f, const ScalarField& g) {
  require_same_grid(f, g);
  ScalarField fg(f.grid, product(f.values, g.values));
  Eigen::VectorXd v = 0.5 * (gen.apply(fg).values - product(f.values, gen.apply(g).values) -
                             product(g.values, gen.apply(f).values));
  return ScalarField(f.grid, std::move(v));
}

ScalarField gamma(const GammaContext& ctx, const ScalarField& f, const ScalarField& g,
                  GammaRoute route) {
  return route == GammaRoute::stencil ? gamma_stencil(f, g)
                                      : gamma_algebraic(ctx.gen, f, g);
}

namespace {

ScalarField potential_second(const GammaContext& ctx, int axis) {
  if (axis == 0 && ctx.vpp) return *ctx.vpp;
  if (ctx.gen.grid().kind == GridKind::torus2d) {
    if (axis == 0 && ctx.vxx) return *ctx.vxx;
    if (axis == 1 && ctx.vyy) return *ctx.vyy;
  }
  return second_derivative(ctx.gen.potential(), axis);
}

ScalarField potential_mixed(const GammaContext& ctx) {
  if (ctx.vxy) return *ctx.vxy;
  return mixed_second_derivative(ctx.gen.potential());
}

}  // namespace

ScalarField gamma2_geometric(const GammaContext& ctx, const ScalarField& f, const ScalarField& g) {
  require_same_grid(f, g);
  const Grid& grid = *f.grid;
  if (grid.kind == GridKind::torus2d) {
    Eigen::VectorXd fx = gradient(f, 0).values, fy = gradient(f, 1).values;
    Eigen::VectorXd gx = gradient(g, 0).values, gy = gradient(g, 1).values;
    Eigen::VectorXd v = product(second_derivative(f, 0).values, second_derivative(g, 0).values) +
                        product(second_derivative(f, 1).values, second_derivative(g, 1).values) +
                        2.0 * product(mixed_second_derivative(f).values,
                                      mixed_second_derivative(g).values);
    v -= product(potential_second(ctx, 0).values, product(fx, gx));
    v -= product(potential_second(ctx, 1).values, product(fy, gy));
    v -= product(potential_mixed(ctx).values, product(fx, gy) + product(fy, gx));
    return ScalarField(f.grid, std::move(v));
  }
  Eigen::VectorXd v = product(second_derivative(f, 0).values, second_derivative(g, 0).values) -
                      product(potential_second(ctx, 0).values,
                              product(gradient(f, 0).values, gradient(g, 0).values));
  return ScalarField(f.grid, std::move(v));
}

ScalarField gamma2_iterated(const GammaContext& ctx, const ScalarField& f, const ScalarField& g) {
  const Generator& gen = ctx.gen;
  ScalarField lf = gen.apply(f), lg = gen.apply(g);
  Eigen::VectorXd v = 0.5 * (gen.apply(gamma_algebraic(gen, f, g)).values -
                             gamma_algebraic(gen, lf, g).values -
                             gamma_algebraic(gen, f, lg).values);
  return ScalarField(f.grid, std::move(v));
}

ScalarField gamma2(const GammaContext& ctx, const ScalarField& f, const ScalarField& g,
                   GammaRoute route) {
  return route == GammaRoute::stencil ? gamma2_geometric(ctx, f, g)
                                      : gamma2_iterated(ctx, f, g);
}

double identity_residual(const GammaContext& ctx, const PhiFunction& phi,
                        const ScalarField& f, double t) {
  const Generator& gen = ctx.gen;
  ScalarField u = gen.apply_semigroup(f, t);
  phi.require_admissible(u);

  ScalarField du = gen.apply(u);  // du/dt = Lu
  ScalarField phi2 = phi.map(u, &PhiFunction::d2);
  ScalarField phi3 = phi.map(u, &PhiFunction::d3);
  ScalarField gam = gamma_stencil(u, u);

  ScalarField A(u.grid, product(phi2.values, gam.values));
  Eigen::VectorXd dA_dt = product(phi3.values, product(du.values, gam.values)) +
                          2.0 * product(phi2.values, gamma_stencil(du, u).values);
  Eigen::VectorXd lhs = gen.apply(A).values - dA_dt;

  ScalarField phi1 = phi.map(u, &PhiFunction::d1);
  ScalarField g2 = gamma2_geometric(ctx, phi1, phi1);
  Eigen::VectorXd rhs(u.size());
  for (int i = 0; i < u.size(); ++i) {
    const double pg = phi2.values[i] * gam.values[i];
    rhs[i] = 2.0 * g2.values[i] / phi2.values[i] -
             phi.inv_d2_second(u.values[i]) * pg * pg;
  }

  const Grid& grid = *u.grid;
  double r = 0.0;
  if (grid.kind == GridKind::torus2d) {
    for (int i = 0; i < grid.node_count(); ++i)
      r = std::max(r, std::abs(lhs[i] - rhs[i]));
  } else {
    const int skip = grid.is_interval() ? 2 : 0;
    for (int i = skip; i < grid.nx - skip; ++i)
      r = std::max(r, std::abs(lhs[i] - rhs[i]));
  }
  return r;
}

}  // namespace phient
