#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "helpers.hpp"

using namespace phient;
using namespace phient::testing;

TEST_CASE("flat circle matrix is the periodic 3-point Laplacian") {
  Generator gen = zero_circle_generator(64);
  const Eigen::MatrixXd& L = gen.matrix();
  const double h = gen.grid().hx;
  for (int i = 0; i < 64; ++i) {
    CHECK(L(i, i) == doctest::Approx(-2.0 / (h * h)).epsilon(1e-12));
    CHECK(L(i, (i + 1) % 64) == doctest::Approx(1.0 / (h * h)).epsilon(1e-12));
    CHECK(L(i, (i + 63) % 64) == doctest::Approx(1.0 / (h * h)).epsilon(1e-12));
  }
}

TEST_CASE("L annihilates constants and has nonnegative off-diagonals") {
  std::mt19937_64 rng(11);
  GridPtr g = circle(96);
  Generator gen = Generator::build(random_potential(g, rng));
  const Eigen::MatrixXd& L = gen.matrix();
  const double scale = L.cwiseAbs().maxCoeff();
  for (int i = 0; i < 96; ++i) {
    CHECK(std::abs(L.row(i).sum()) <= 1e-12 * scale);
    for (int j = 0; j < 96; ++j)
      if (i != j) CHECK(L(i, j) >= 0.0);
  }
}

TEST_CASE("mu-self-adjointness holds entrywise") {
  std::mt19937_64 rng(12);
  GridPtr g = circle(64);
  Generator gen = Generator::build(random_potential(g, rng));
  const Eigen::MatrixXd& L = gen.matrix();
  const Eigen::VectorXd& w = gen.measure().weights;
  double worst = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      worst = std::max(worst, std::abs(w[i] * L(i, j) - w[j] * L(j, i)));
  CHECK(worst <= 1e-14 * L.cwiseAbs().maxCoeff());
}

TEST_CASE("Neumann interval: L cos ~ -cos at second order") {
  auto err = [](int n) {
    GridPtr g = make_grid(GridKind::interval_neumann, n, 0.0, M_PI);
    Generator gen = Generator::build(constant_field(g, 0.0));
    ScalarField f = make_field(g, [](double x) { return std::cos(x); });
    ScalarField lf = gen.apply(f);
    return max_abs(lf.values + f.values);
  };
  const double ratio = err(129) / err(257);
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);
}

TEST_CASE("semigroup fixes constants") {
  std::mt19937_64 rng(13);
  GridPtr g = circle(64);
  Generator gen = Generator::build(random_potential(g, rng));
  ScalarField one = constant_field(g, 3.25);
  for (double t : {0.0, 0.3, 2.0}) {
    ScalarField u = gen.apply_semigroup(one, t);
    CHECK(max_abs(u.values.array() - 3.25) < 1e-12);
  }
}

TEST_CASE("circle sine decays like exp(-t)") {
  Generator gen = zero_circle_generator(512);
  GridPtr g = gen.grid_ptr();
  ScalarField f = make_field(g, [](double x) { return std::sin(x); });
  ScalarField u = gen.apply_semigroup(f, 1.0);
  Eigen::VectorXd expect = std::exp(-1.0) * f.values;
  CHECK(max_abs(u.values - expect) <= 1e-4);
}

TEST_CASE("Neumann cosine decays like exp(-t)") {
  GridPtr g = make_grid(GridKind::interval_neumann, 512, 0.0, M_PI);
  Generator gen = Generator::build(constant_field(g, 0.0));
  ScalarField f = make_field(g, [](double x) { return std::cos(x); });
  ScalarField u = gen.apply_semigroup(f, 1.0);
  Eigen::VectorXd expect = std::exp(-1.0) * f.values;
  CHECK(max_abs(u.values - expect) <= 1e-4);
}

TEST_CASE("semigroup property, positivity, contraction, mass") {
  std::mt19937_64 rng(14);
  GridPtr g = circle(96);
  Generator gen = Generator::build(random_potential(g, rng));
  ScalarField f = random_band_limited(g, rng, 4, 0.8, 0.2);

  ScalarField ab = gen.apply_semigroup(gen.apply_semigroup(f, 0.2), 0.5);
  ScalarField once = gen.apply_semigroup(f, 0.7);
  CHECK(max_abs(ab.values - once.values) < 1e-10);

  ScalarField pos(g, f.values.array() - f.values.minCoeff() + 0.0);
  ScalarField u = gen.apply_semigroup(pos, 0.4);
  CHECK(u.values.minCoeff() >= -1e-12);

  ScalarField v = gen.apply_semigroup(f, 0.4);
  CHECK(v.values.maxCoeff() <= f.values.maxCoeff() + 1e-12);
  CHECK(v.values.minCoeff() >= f.values.minCoeff() - 1e-12);

  const double m0 = integrate(f, gen.measure());
  const double m1 = integrate(gen.apply_semigroup(f, 1.3), gen.measure());
  CHECK(std::abs(m1 - m0) < 1e-10);
}

TEST_CASE("semigroup rejects negative time") {
  Generator gen = zero_circle_generator(16);
  ScalarField f = constant_field(gen.grid_ptr(), 1.0);
  CHECK_THROWS_AS(gen.apply_semigroup(f, -0.1), std::invalid_argument);
}

TEST_CASE("symmetry residual at roundoff for random data") {
  std::mt19937_64 rng(15);
  GridPtr g = circle(64);
  Generator gen = Generator::build(random_potential(g, rng));
  ScalarField f = random_band_limited(g, rng, 5, 1.0, 0.0);
  ScalarField gfun = random_band_limited(g, rng, 5, 1.0, 0.0);
  const double scale = max_abs(f.values) * max_abs(gfun.values) *
                       gen.matrix().cwiseAbs().maxCoeff();
  CHECK(gen.symmetry_residual(f, gfun) <= 1e-12 * scale);
  CHECK(gen.symmetry_residual(f, f) == 0.0);

  // f = 1: reduces to mass conservation of L
  ScalarField one = constant_field(g, 1.0);
  CHECK(gen.symmetry_residual(one, gfun) <= 1e-12 * scale);
}

TEST_CASE("integration by parts is exact against the face form") {
  std::mt19937_64 rng(16);
  GridPtr g = make_grid(GridKind::interval_neumann, 97, 0.0, 2.0);
  Generator gen = Generator::build(random_potential(g, rng));
  ScalarField f = random_band_limited(g, rng, 3, 1.0, 0.0);
  ScalarField gfun = random_band_limited(g, rng, 3, 1.0, 0.0);
  ScalarField lf = gen.apply(f);
  const double lhs = integrate(ScalarField(g, gfun.values.cwiseProduct(lf.values)),
                               gen.measure());
  const double rhs = -gen.dirichlet_energy(f, gfun);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)) * 100.0);
}

TEST_CASE("torus semigroup conserves mass and mixes modes independently") {
  GridPtr g = make_grid_torus(16, 16, 2.0 * M_PI, 2.0 * M_PI);
  Generator gen = Generator::build(constant_field(g, 0.0));
  ScalarField f = make_field2d(g, [](double x, double y) { return std::sin(x) + std::cos(y); });
  ScalarField u = gen.apply_semigroup(f, 0.5);
  const double m0 = integrate(f, gen.measure());
  const double m1 = integrate(u, gen.measure());
  CHECK(std::abs(m1 - m0) < 1e-10);
  // each unit mode decays at the same discrete rate
  const double rate = 2.0 / (g->hx * g->hx) * (1.0 - std::cos(g->hx));
  Eigen::VectorXd expect = std::exp(-0.5 * rate) * f.values;
  CHECK(max_abs(u.values - expect) < 1e-10);
}

TEST_CASE("concurrent semigroup applications share one decomposition") {
  std::mt19937_64 rng(17);
  GridPtr g = circle(128);
  Generator gen = Generator::build(random_potential(g, rng));
  ScalarField f = random_band_limited(g, rng, 3, 1.0, 0.0);

  std::vector<Eigen::VectorXd> results(4);
  std::vector<std::thread> workers;
  for (int i = 0; i < 4; ++i)
    workers.emplace_back([&, i] { results[i] = gen.apply_semigroup(f, 0.3).values; });
  for (auto& w : workers) w.join();

  const Eigen::VectorXd ref = gen.apply_semigroup(f, 0.3).values;
  for (const auto& r : results) CHECK(max_abs(r - ref) == 0.0);
}

TEST_CASE("Dirichlet generator decays to zero with zero boundary") {
  GridPtr g = make_grid(GridKind::interval_dirichlet, 65, 0.0, 1.0);
  Generator gen = Generator::build(constant_field(g, 0.0));
  ScalarField f = make_field(g, [](double x) { return std::sin(M_PI * x); });
  ScalarField u = gen.apply_semigroup(f, 0.05);
  CHECK(u.values[0] == 0.0);
  CHECK(u.values[64] == 0.0);
  CHECK(max_abs(u.values) < max_abs(f.values));
  ScalarField u2 = gen.apply_semigroup(f, 5.0);
  CHECK(max_abs(u2.values) < 1e-8);
}
