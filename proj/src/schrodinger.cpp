#include "phient/schrodinger.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "phient/gamma.hpp"

namespace phient {

namespace {

// --- symmetric tridiagonal tools (diag d, off-diagonal e) ------------------

// Number of eigenvalues strictly below sigma, by the Sturm sequence of the
// LDL^T pivots.
int count_below(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double sigma) {
  const int m = static_cast<int>(d.size());
  const double pivmin = 1e-300;
  int cnt = 0;
  double q = 1.0;
  for (int i = 0; i < m; ++i) {
    double t = d[i] - sigma;
    if (i > 0) t -= e[i - 1] * e[i - 1] / q;
    if (std::abs(t) < pivmin) t = -pivmin;
    if (t < 0.0) ++cnt;
    q = t;
  }
  return cnt;
}

// k-th smallest eigenvalue (0-based) by bisection within Gershgorin bounds.
double kth_eigenvalue(const Eigen::VectorXd& d, const Eigen::VectorXd& e, int k) {
  const int m = static_cast<int>(d.size());
  double lo = d[0], hi = d[0];
  for (int i = 0; i < m; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < m) r += std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at machine resolution
    (count_below(d, e, mid) >= k + 1 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// LU factorization of (T - s I) with partial pivoting (dgttrf scheme).
struct TriLU {
  Eigen::VectorXd dl, dd, du, du2;
  std::vector<bool> piv;

  TriLU(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double s) {
    const int m = static_cast<int>(d.size());
    dl = e;
    du = e;
    dd = d.array() - s;
    du2 = Eigen::VectorXd::Zero(std::max(0, m - 2));
    piv.assign(std::max(0, m - 1), false);
    for (int i = 0; i + 1 < m; ++i) {
      if (std::abs(dd[i]) >= std::abs(dl[i])) {
        if (dd[i] == 0.0) dd[i] = 1e-300;
        const double fact = dl[i] / dd[i];
        dl[i] = fact;
        dd[i + 1] -= fact * du[i];
      } else {
        const double fact = dd[i] / dl[i];
        dd[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = dd[i + 1];
        dd[i + 1] = temp - fact * dd[i + 1];
        if (i + 2 < m) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        piv[i] = true;
      }
    }
    if (dd[m - 1] == 0.0) dd[m - 1] = 1e-300;
  }

  void solve(Eigen::VectorXd& b) const {
    const int m = static_cast<int>(b.size());
    for (int i = 0; i + 1 < m; ++i) {
      if (!piv[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[m - 1] /= dd[m - 1];
    if (m > 1) b[m - 2] = (b[m - 2] - du[m - 2] * b[m - 1]) / dd[m - 2];
    for (int i = m - 3; i >= 0; --i)
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i];
  }
};

Eigen::VectorXd inverse_iteration(const Eigen::VectorXd& d, const Eigen::VectorXd& e,
                                  double lambda, int index) {
  const int m = static_cast<int>(d.size());
  const double scale = d.cwiseAbs().maxCoeff() + e.cwiseAbs().maxCoeff();
  TriLU lu(d, e, lambda + scale * 1e-13);

  std::mt19937_64 rng(0x9e3779b97f4a7c15ull + static_cast<unsigned long long>(index));
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i)
    v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  v.normalize();
  for (int it = 0; it < 3; ++it) {
    lu.solve(v);
    v.normalize();
  }
  return v;
}

Eigen::VectorXd build_diag(const Potential1D& U, const Grid& g) {
  const int m = g.nx - 2;
  const double h2 = g.hx * g.hx;
  Eigen::VectorXd d(m);
  for (int i = 0; i < m; ++i) d[i] = 2.0 / h2 + U(g.x[i + 1]);
  return d;
}

GridPtr interior_grid_of(const Grid& g) {
  // Auxiliary interval grid over the interior nodes; used for stencils and
  // plain quadrature of interior fields.
  return make_grid(GridKind::interval_neumann, g.nx - 2, g.x[1], g.x[g.nx - 2]);
}

}  // namespace

Spectrum dirichlet_eigs(const Potential1D& U, double a, double b, int k, int n,
                        bool refine_eigenvalues) {
  if (k < 1) throw std::invalid_argument("dirichlet_eigs: k must be positive");
  if (n < 8 || k > n - 2) throw std::invalid_argument("dirichlet_eigs: k exceeds n-2");

  Spectrum sp;
  sp.grid = make_grid(GridKind::interval_dirichlet, n, a, b);
  const Grid& g = *sp.grid;
  const int m = n - 2;
  const double h = g.hx;

  Eigen::VectorXd d = build_diag(U, g);
  Eigen::VectorXd e = Eigen::VectorXd::Constant(m - 1, -1.0 / (h * h));

  sp.eigenvalues.resize(k);
  sp.eigenfunctions.resize(m, k);
  Eigen::MatrixXd unit(m, k);  // Euclidean-normalized copies for Gram-Schmidt
  for (int j = 0; j < k; ++j) {
    sp.eigenvalues[j] = kth_eigenvalue(d, e, j);
    Eigen::VectorXd v = inverse_iteration(d, e, sp.eigenvalues[j], j);
    for (int jj = 0; jj < j; ++jj) v -= unit.col(jj).dot(v) * unit.col(jj);
    v.normalize();
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    unit.col(j) = v;
    sp.eigenfunctions.col(j) = v / std::sqrt(h);  // int phi^2 dx = 1
  }

  if (sp.eigenvalues.size() > 1 && !(sp.eigenvalues[1] > sp.eigenvalues[0]))
    throw std::runtime_error("dirichlet_eigs: ground eigenvalue not simple");
  if (sp.eigenfunctions.col(0).minCoeff() <= 0.0)
    throw std::runtime_error("dirichlet_eigs: ground state not positive");

  if (refine_eigenvalues) {
    const int n2 = refined_node_count(GridKind::interval_dirichlet, n);
    GridPtr g2 = make_grid(GridKind::interval_dirichlet, n2, a, b);
    Eigen::VectorXd d2 = build_diag(U, *g2);
    Eigen::VectorXd e2 = Eigen::VectorXd::Constant(n2 - 3, -1.0 / (g2->hx * g2->hx));
    for (int j = 0; j < k; ++j)
      sp.eigenvalues[j] = richardson2(sp.eigenvalues[j], kth_eigenvalue(d2, e2, j));
  }
  return sp;
}

GroundStateSystem::GroundStateSystem(const Potential1D& U, double a, double b, int n) {
  GridPtr full = make_grid(GridKind::interval_dirichlet, n, a, b);
  const Grid& g = *full;
  const int m = n - 2;
  h_ = g.hx;
  igrid_ = interior_grid_of(g);

  Eigen::VectorXd d = build_diag(U, g);
  Eigen::VectorXd e = Eigen::VectorXd::Constant(m - 1, -1.0 / (h_ * h_));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  lambda_ = es.eigenvalues();
  Q_ = es.eigenvectors();

  Eigen::VectorXd v = Q_.col(0);
  int imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0.0) {
    v = -v;
    Q_.col(0) = v;
  }
  phi0_ = v / (std::sqrt(h_) * v.norm());
  if (phi0_.minCoeff() <= 0.0)
    throw std::runtime_error("ground_state_system: ground state not positive");
  if (phi0_[0] < 1e-12 || phi0_[m - 1] < 1e-12)
    throw std::runtime_error("ground_state_system: phi0 below 1e-12 next to the boundary");

  mu_.grid = igrid_;
  mu_.weights = phi0_.array().square() * h_;
  mu_.normalized = true;
}

GroundStateSystem ground_state_system(const Potential1D& U, double a, double b, int n) {
  return GroundStateSystem(U, a, b, n);
}

double GroundStateSystem::diam() const { return igrid_->lx + 2.0 * h_; }

ScalarField GroundStateSystem::apply_semigroup(const ScalarField& f, double t) const {
  if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be nonnegative");
  require_same_grid(f, ScalarField(igrid_, phi0_));
  Eigen::VectorXd c = Q_.transpose() * phi0_.cwiseProduct(f.values);
  for (int i = 0; i < c.size(); ++i) c[i] *= std::exp(-t * (lambda_[i] - lambda_[0]));
  return ScalarField(igrid_, (Q_ * c).cwiseQuotient(phi0_));
}

ScalarField GroundStateSystem::hess_log_phi0() const {
  Eigen::VectorXd logphi = phi0_.array().log();
  return second_derivative(ScalarField(igrid_, std::move(logphi)), 0);
}

double GroundStateSystem::max_hess_log_phi0() const {
  const ScalarField hess = hess_log_phi0();
  double r = -std::numeric_limits<double>::infinity();
  for (int i = 2; i + 2 < hess.size(); ++i) r = std::max(r, hess.values[i]);
  return r;
}

double GroundStateSystem::q(const PhiFunction& phi, const ScalarField& f) const {
  return entropy_functionals(phi, f, mu_).q;
}

double GroundStateSystem::c(const PhiFunction& phi, const ScalarField& f) const {
  return entropy_functionals(phi, f, mu_).c;
}

double fundamental_gap_margin(const Potential1D& U, double a, double b, int n) {
  GridPtr g = make_grid(GridKind::interval_dirichlet, n, a, b);
  for (int i = 1; i + 1 < n; ++i) {
    const double dd = U(g->x[i + 1]) - 2.0 * U(g->x[i]) + U(g->x[i - 1]);
    if (dd < -1e-10)
      throw std::invalid_argument("fundamental_gap_margin: U is not convex");
  }
  Spectrum sp = dirichlet_eigs(U, a, b, 2, n, /*refine_eigenvalues=*/true);
  const double diam = b - a;
  return (sp.eigenvalues[1] - sp.eigenvalues[0]) - 3.0 * M_PI * M_PI / (diam * diam);
}

double modulus_decay_rate(const Potential1D& Utilde, double diam, int n) {
  const double half = 0.5 * diam;
  for (int i = 1; i <= 16; ++i) {
    const double x = half * i / 17.0;
    if (std::abs(Utilde(x) - Utilde(-x)) > 1e-10 * (1.0 + std::abs(Utilde(x))))
      throw std::invalid_argument("modulus_decay_rate: Utilde must be even");
  }
  Spectrum sp = dirichlet_eigs(Utilde, -half, half, 1, n, /*refine_eigenvalues=*/true);
  return 4.0 * (sp.eigenvalues[0] - Utilde(0.0));
}

DecayReport check_schrodinger_decay(const GroundStateSystem& sys, const Potential1D& Utilde,
                                    const PhiFunction& phi, const ScalarField& f,
                                    const std::vector<double>& times) {
  phi.require_admissible(f);
  const int n = sys.interior_grid()->nx + 2;
  const double rate = modulus_decay_rate(Utilde, sys.diam(), n);

  DecayReport rep;
  rep.K = 0.5 * rate;  // bound is exp(-2Kt) q0
  rep.m = std::numeric_limits<double>::infinity();
  rep.q0 = sys.q(phi, f);
  rep.c0 = sys.c(phi, f);
  for (double t : times) {
    ScalarField u = sys.apply_semigroup(f, t);
    phi.require_admissible(u, 1e-10);
    const double qt = sys.q(phi, u);
    const double b = std::exp(-rate * t) * rep.q0;
    rep.times.push_back(t);
    rep.measured.push_back(qt);
    rep.bound.push_back(b);
    rep.margin.push_back(b - qt);
  }
  return rep;
}

}  // namespace phient
