#include "phient/generator.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace phient {

namespace {

struct Face {
  int p, q;   // full-grid node indices
  double a;   // conductance
};

}  // namespace

struct Generator::Impl {
  GridPtr grid;
  ScalarField V;          // shifted potential
  WeightedMeasure mu;     // normalized, all nodes
  std::vector<Face> faces;

  std::vector<int> active;      // active node indices (interior for Dirichlet)
  std::vector<int> full_to_active;  // -1 for inactive
  Eigen::VectorXd w_active;
  Eigen::VectorXd sqrt_w;
  Eigen::MatrixXd L;            // active x active

  mutable std::once_flag eig_once;
  mutable Eigen::VectorXd lam;
  mutable Eigen::MatrixXd U;
  mutable bool have_vectors = false;
  mutable std::once_flag val_once;
  mutable Eigen::VectorXd lam_only;
  mutable bool have_values = false;

  bool dirichlet() const { return grid->kind == GridKind::interval_dirichlet; }

  Eigen::VectorXd extract_active(const Eigen::VectorXd& f) const {
    Eigen::VectorXd r(active.size());
    for (size_t k = 0; k < active.size(); ++k) r[k] = f[active[k]];
    return r;
  }

  Eigen::VectorXd embed_active(const Eigen::VectorXd& fa) const {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(grid->node_count());
    for (size_t k = 0; k < active.size(); ++k) r[active[k]] = fa[k];
    return r;
  }

  Eigen::MatrixXd symmetrized() const {
    const int m = static_cast<int>(active.size());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, m);
    for (const Face& f : faces) {
      const int p = full_to_active[f.p];
      const int q = full_to_active[f.q];
      if (p >= 0) H(p, p) -= f.a / w_active[p];
      if (q >= 0) H(q, q) -= f.a / w_active[q];
      if (p >= 0 && q >= 0) {
        const double off = f.a / (sqrt_w[p] * sqrt_w[q]);
        H(p, q) += off;
        H(q, p) += off;
      }
    }
    return H;
  }

  void ensure_vectors() const {
    std::call_once(eig_once, [this] {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized());
      lam = es.eigenvalues();
      U = es.eigenvectors();
      snap_kernel(lam);
      have_vectors = true;
    });
  }

  void ensure_values() const {
    if (have_vectors) return;
    std::call_once(val_once, [this] {
      if (have_vectors) return;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized(), Eigen::EigenvaluesOnly);
      lam_only = es.eigenvalues();
      snap_kernel(lam_only);
      have_values = true;
    });
  }

  // Constants are in the kernel by construction; zero out the roundoff-level
  // top eigenvalue so the semigroup conserves mass exactly.
  void snap_kernel(Eigen::VectorXd& ev) const {
    if (dirichlet()) return;
    const int m = static_cast<int>(ev.size());
    const double scale = std::max(std::abs(ev[0]), std::abs(ev[m - 1]));
    if (std::abs(ev[m - 1]) <= 1e-12 * scale) ev[m - 1] = 0.0;
  }

  const Eigen::VectorXd& spectrum() const {
    if (have_vectors) return lam;
    ensure_values();
    return lam_only;
  }
};

Generator Generator::build(const ScalarField& Vraw) {
  auto impl = std::make_shared<Impl>();
  impl->grid = Vraw.grid;
  auto [vs, mu] = normalize_potential(Vraw);
  impl->V = std::move(vs);
  impl->mu = std::move(mu);

  const Grid& g = *impl->grid;
  const auto& V = impl->V.values;
  const int n = g.node_count();

  if (g.kind == GridKind::circle) {
    for (int i = 0; i < g.nx; ++i) {
      const int j = (i + 1) % g.nx;
      impl->faces.push_back({i, j, std::exp(0.5 * (V[i] + V[j])) / g.hx});
    }
  } else if (g.kind == GridKind::torus2d) {
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const int p = g.index(i, j);
        const int qx = g.index((i + 1) % g.nx, j);
        const int qy = g.index(i, (j + 1) % g.ny);
        impl->faces.push_back({p, qx, std::exp(0.5 * (V[p] + V[qx])) * g.hy / g.hx});
        impl->faces.push_back({p, qy, std::exp(0.5 * (V[p] + V[qy])) * g.hx / g.hy});
      }
  } else {
    for (int i = 0; i + 1 < g.nx; ++i)
      impl->faces.push_back({i, i + 1, std::exp(0.5 * (V[i] + V[i + 1])) / g.hx});
  }

  impl->full_to_active.assign(n, -1);
  if (impl->dirichlet()) {
    for (int i = 1; i + 1 < g.nx; ++i) impl->active.push_back(i);
  } else {
    for (int i = 0; i < n; ++i) impl->active.push_back(i);
  }
  for (size_t k = 0; k < impl->active.size(); ++k)
    impl->full_to_active[impl->active[k]] = static_cast<int>(k);

  const int m = static_cast<int>(impl->active.size());
  impl->w_active.resize(m);
  for (int k = 0; k < m; ++k) impl->w_active[k] = impl->mu.weights[impl->active[k]];
  impl->sqrt_w = impl->w_active.cwiseSqrt();

  impl->L = Eigen::MatrixXd::Zero(m, m);
  for (const Face& f : impl->faces) {
    const int p = impl->full_to_active[f.p];
    const int q = impl->full_to_active[f.q];
    if (p >= 0) {
      impl->L(p, p) -= f.a / impl->w_active[p];
      if (q >= 0) impl->L(p, q) += f.a / impl->w_active[p];
    }
    if (q >= 0) {
      impl->L(q, q) -= f.a / impl->w_active[q];
      if (p >= 0) impl->L(q, p) += f.a / impl->w_active[q];
    }
  }

  Generator gen;
  gen.impl_ = std::move(impl);
  return gen;
}

const Grid& Generator::grid() const { return *impl_->grid; }
GridPtr Generator::grid_ptr() const { return impl_->grid; }
GridKind Generator::bc() const { return impl_->grid->kind; }
const ScalarField& Generator::potential() const { return impl_->V; }
const WeightedMeasure& Generator::measure() const { return impl_->mu; }
const Eigen::MatrixXd& Generator::matrix() const { return impl_->L; }

ScalarField Generator::apply(const ScalarField& f) const {
  require_same_grid(f, impl_->V);
  Eigen::VectorXd fa = impl_->extract_active(f.values);
  return ScalarField(impl_->grid, impl_->embed_active(impl_->L * fa));
}

ScalarField Generator::apply_semigroup(const ScalarField& f, double t) const {
  require_same_grid(f, impl_->V);
  if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be nonnegative");
  impl_->ensure_vectors();

  Eigen::VectorXd g = impl_->sqrt_w.cwiseProduct(impl_->extract_active(f.values));
  Eigen::VectorXd c = impl_->U.transpose() * g;
  for (int i = 0; i < c.size(); ++i) c[i] *= std::exp(t * impl_->lam[i]);
  Eigen::VectorXd fa = (impl_->U * c).cwiseQuotient(impl_->sqrt_w);
  return ScalarField(impl_->grid, impl_->embed_active(fa));
}

double Generator::symmetry_residual(const ScalarField& f, const ScalarField& g) const {
  const double a = integrate(ScalarField(impl_->grid, f.values.cwiseProduct(apply(g).values)), impl_->mu);
  const double b = integrate(ScalarField(impl_->grid, g.values.cwiseProduct(apply(f).values)), impl_->mu);
  return std::abs(a - b);
}

double Generator::dirichlet_energy(const ScalarField& f, const ScalarField& g) const {
  require_same_grid(f, impl_->V);
  require_same_grid(g, impl_->V);
  double e = 0.0;
  for (const Face& fc : impl_->faces)
    e += fc.a * (f.values[fc.p] - f.values[fc.q]) * (g.values[fc.p] - g.values[fc.q]);
  return e;
}

const Eigen::VectorXd& Generator::eigenvalues() const { return impl_->spectrum(); }

double Generator::spectral_gap() const {
  if (impl_->dirichlet())
    throw std::invalid_argument("spectral_gap: defined for circle/Neumann generators");
  const Eigen::VectorXd& ev = impl_->spectrum();
  const int m = static_cast<int>(ev.size());
  const double scale = std::abs(ev[0]);
  if (ev[m - 1] > 1e-9 * scale)
    throw std::runtime_error("spectral_gap: positive eigenvalue, -L not PSD");
  if (std::abs(ev[m - 1]) > 1e-9 * scale)
    throw std::runtime_error("spectral_gap: kernel mode not found");
  return -ev[m - 2];
}

}  // namespace phient
