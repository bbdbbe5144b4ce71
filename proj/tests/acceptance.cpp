// Acceptance suite: one test case per criterion, one [PASS]/[FAIL] line each.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "phient/cdc.hpp"
#include "phient/schrodinger.hpp"

using namespace phient;
using namespace phient::testing;
using json = nlohmann::ordered_json;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kPi2 = M_PI * M_PI;

void report(int num, const char* name, bool ok) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", num, name);
  std::fflush(stdout);
}

std::vector<double> decay_times() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
}

// Shared random suite for criteria 3-5: five smooth circle potentials with
// twenty admissible band-limited fields each (min f >= 0.4, valid for every
// built-in Phi).
struct SuiteEntry {
  Generator gen;
  std::vector<ScalarField> fs;
  double kstar;
};

const std::vector<SuiteEntry>& random_suite() {
  static const std::vector<SuiteEntry> suite = [] {
    std::vector<SuiteEntry> v;
    std::mt19937_64 rng(1234);
    for (int p = 0; p < 5; ++p) {
      GridPtr g = circle(512);
      Generator gen = Generator::build(random_band_limited(g, rng, 3, 0.3, 0.0));
      SuiteEntry e{gen, {}, optimal_variance_k(gen) - 1e-6};
      for (int i = 0; i < 20; ++i)
        e.fs.push_back(random_band_limited(g, rng, 3, 0.6, 1.0, 6.0));
      v.push_back(std::move(e));
    }
    return v;
  }();
  return suite;
}

double zero_pot(double) { return 0.0; }

// CLI plumbing for criterion 12.
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliRun {
  int code;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  static int counter = 0;
  const char* bin = std::getenv("PHIENT_BIN");
  REQUIRE(bin != nullptr);
  const std::string file = "acc_cli_" + std::to_string(counter++) + ".txt";
  const int rc = std::system((std::string(bin) + " " + args + " > " + file +
                              " 2>/dev/null").c_str());
  CliRun r{WEXITSTATUS(rc), slurp(file)};
  std::remove(file.c_str());
  return r;
}

std::string preset(const std::string& name) {
  const char* dir = std::getenv("PHIENT_PRESETS");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

}  // namespace

TEST_CASE("criterion 1") {
  bool ok = true;
  for (const char* name : {"xlogx", "square", "power"}) {
    auto residual = [&](int n) {
      GridPtr g = circle(n);
      Generator gen =
          Generator::build(make_field(g, [](double x) { return 0.3 * std::cos(x); }));
      GammaContext ctx(gen);
      ctx.vpp = make_field(g, [](double x) { return -0.3 * std::cos(x); });
      ScalarField f = make_field(g, [](double x) { return 2.0 + std::sin(x); });
      return identity_residual(ctx, phi_suite(name, 1.5), f, 0.1);
    };
    const double ratio = residual(256) / residual(512);
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
    ok = ok && ratio > 3.2 && ratio < 4.8;
  }
  report(1, "identity residual drops fourfold from n=256 to n=512", ok);
  CHECK(ok);
}

TEST_CASE("criterion 2") {
  const double K = optimal_variance_k_extrapolated(
      [](int n) { return zero_circle_generator(n); }, 512, GridKind::circle);
  const bool ok_k = std::abs(K - 1.0) <= 1e-6;
  CHECK(ok_k);

  Generator gen = zero_circle_generator(512);
  ScalarField f = make_field(gen.grid_ptr(), [](double x) { return std::sin(x); });
  DecayReport rep = check_decay(gen, PhiFunction::square(), f, 1.0, kInf, decay_times());
  const bool ok_decay = rep.max_abs_margin() <= 1e-4;
  CHECK(ok_decay);

  auto cdc_at = [](int n) {
    Generator g = zero_circle_generator(n);
    GammaContext ctx(g);
    ScalarField s = make_field(g.grid_ptr(), [](double x) { return std::sin(x); });
    return integral_cdc_margin(ctx, PhiFunction::square(), s, 1.0, kInf).margin;
  };
  const double cdc_margin = extrapolate(GridKind::circle, 512, cdc_at);
  const bool ok_cdc = std::abs(cdc_margin) <= 1e-6;
  CHECK(ok_cdc);

  auto poin_at = [](int n) {
    GridPtr g = circle(n);
    auto mu = normalize_potential(constant_field(g, 0.0)).second;
    ScalarField s = make_field(g, [](double x) { return std::sin(x); });
    return phi_sobolev_margin(PhiFunction::square(), s, mu, 1.0);
  };
  const double poincare = extrapolate(GridKind::circle, 512, poin_at);
  const bool ok_poin = std::abs(poincare) <= 1e-8;
  CHECK(ok_poin);

  const bool ok = ok_k && ok_decay && ok_cdc && ok_poin;
  report(2, "circle equality chain (optimal K, decay, integral condition, Poincare)", ok);
  CHECK(ok);
}

TEST_CASE("criterion 3") {
  bool ok = true;
  const std::vector<double> times = decay_times();
  for (const SuiteEntry& e : random_suite())
    for (const ScalarField& f : e.fs) {
      DecayReport rep = check_decay(e.gen, PhiFunction::square(), f, e.kstar, kInf,
                                    times, GammaRoute::algebraic);
      ok = ok && rep.min_margin() >= -1e-8;
    }
  report(3, "decay margins nonnegative at the measured constant (5 x 20 suite)", ok);
  CHECK(ok);
}

TEST_CASE("criterion 4") {
  bool ok = true;
  double worst = 0.0;
  for (const SuiteEntry& e : random_suite()) {
    GammaContext ctx(e.gen);
    for (const ScalarField& f : e.fs) {
      const double v = derivative_at_zero_check(ctx, PhiFunction::square(), f, 1e-3,
                                                GammaRoute::algebraic);
      worst = std::max(worst, v);
      ok = ok && v <= 1e-4;
    }
  }
  std::printf("    worst derivative mismatch %.3e\n", worst);
  report(4, "time derivative at zero matches the integral left side", ok);
  CHECK(ok);
}

TEST_CASE("criterion 5") {
  bool ok = true;
  for (const SuiteEntry& e : random_suite())
    for (const PhiFunction& phi :
         {PhiFunction::xlogx(), PhiFunction::square(), PhiFunction::power(1.5)})
      for (const ScalarField& f : e.fs) {
        const double c0 = entropy_functionals(phi, f, e.gen.measure()).c;
        for (double t : {0.1, 0.5, 1.0}) {
          const double ct =
              entropy_functionals(phi, e.gen.apply_semigroup(f, t), e.gen.measure()).c;
          ok = ok && ct <= c0 + 1e-10;
        }
      }
  report(5, "C_Phi is monotone along the flow over the full suite", ok);
  CHECK(ok);
}

TEST_CASE("criterion 6") {
  ConcaveFamilyCertificate c8 = concave_family_certificate(8.0, 1024);
  ConcaveFamilyCertificate c10 = concave_family_certificate(10.0, 1024);
  const double drift = std::abs(c10.k_numeric - c8.k_numeric) / c8.k_numeric;
  const bool ok = c8.k_numeric > 0.0 && c8.k_numeric >= c8.k_lower && drift < 0.01;
  std::printf("    delta %.6g osc %.6g K_lower %.6g K_numeric %.6g (R=10: %.6g)\n",
              c8.delta, c8.osc, c8.k_lower, c8.k_numeric, c10.k_numeric);
  CHECK(c8.k_numeric > 0.0);
  CHECK(c8.k_numeric >= c8.k_lower);
  CHECK(drift < 0.01);
  report(6, "concave family beats its certificate and is truncation-stable", ok);
  CHECK(ok);
}

TEST_CASE("criterion 7") {
  const double value = counterexample_integral(10.0, 4.0, 4096);
  const double star = counterexample_sign_change(1e-3, 10.0);
  const bool ok = value < 0.0 && star > 0.0 && star < 10.0;
  std::printf("    value(alpha=10) %.6g, sign change at alpha %.6g\n", value, star);
  CHECK(value < 0.0);
  CHECK(star > 0.0);
  CHECK(star < 10.0);
  report(7, "exponential-form integral goes negative; sign change located", ok);
  CHECK(ok);
}

TEST_CASE("criterion 8") {
  Spectrum sp = dirichlet_eigs(zero_pot, 0.0, 1.0, 2, 2048);
  const double gap = sp.eigenvalues[1] - sp.eigenvalues[0];
  const bool ok_flat = std::abs(gap - 3.0 * kPi2) <= 1e-3 * 3.0 * kPi2;
  CHECK(ok_flat);

  bool ok_suite = true;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    auto U = random_convex_potential(rng, 0.0, 1.0);
    const double margin = fundamental_gap_margin(U, 0.0, 1.0, 1024);
    ok_suite = ok_suite && margin >= -1e-6;
  }
  CHECK(ok_suite);
  const bool ok = ok_flat && ok_suite;
  report(8, "fundamental gap: flat-well value and random convex suite", ok);
  CHECK(ok);
}

TEST_CASE("criterion 9") {
  GroundStateSystem sys([](double x) { return 5.0 * x * x; }, 0.0, 1.0, 512);
  std::mt19937_64 rng(3);
  std::vector<double> times;
  for (int i = 1; i <= 10; ++i) times.push_back(0.02 * i);

  bool ok = true;
  for (int i = 0; i < 5; ++i) {
    ScalarField f = random_band_limited(sys.interior_grid(), rng, 3, 0.4, 1.0);
    for (const PhiFunction& phi : {PhiFunction::square(), PhiFunction::xlogx()}) {
      const double q0 = sys.q(phi, f);
      for (double t : times) {
        const double qt = sys.q(phi, sys.apply_semigroup(f, t));
        ok = ok && qt <= std::exp(-4.0 * kPi2 * t) * q0 * (1.0 + 1e-6);
      }
      DecayReport rep = check_schrodinger_decay(sys, zero_pot, phi, f, times);
      ok = ok && rep.min_margin() >= -1e-6 * rep.q0;
    }
  }
  report(9, "ground-state flow beats the convex-potential decay rate", ok);
  CHECK(ok);
}

TEST_CASE("criterion 10") {
  const int n = 2048;
  const double h = 1.0 / (n - 1);
  const double lam_tilde = dirichlet_eigs(zero_pot, -0.5, 0.5, 1, n).eigenvalues[0];

  bool ok = true;
  for (auto U : {+[](double) { return 0.0; }, +[](double x) { return 5.0 * x * x; }}) {
    Spectrum sp = dirichlet_eigs(U, 0.0, 1.0, 1, n);
    const Grid& g = *sp.grid;
    GridPtr igrid = make_grid(GridKind::interval_neumann, n - 2, g.x[1], g.x[n - 2]);
    Eigen::VectorXd logphi = sp.eigenfunctions.col(0).array().log();
    ScalarField hess = second_derivative(ScalarField(igrid, std::move(logphi)), 0);
    double mx = -kInf;
    for (int i = 2; i + 2 < hess.size(); ++i) mx = std::max(mx, hess.values[i]);
    ok = ok && mx <= -lam_tilde + 50.0 * h * h;
  }
  report(10, "ground-state log-concavity bound with C h^2 slack", ok);
  CHECK(ok);
}

TEST_CASE("criterion 11") {
  auto diff_exp = [](int n) {
    GridPtr g = circle(n);
    Generator gen =
        Generator::build(make_field(g, [](double x) { return 0.2 * std::cos(x); }));
    GammaContext ctx(gen);
    ctx.vpp = make_field(g, [](double x) { return -0.2 * std::cos(x); });
    ScalarField gg = make_field(g, [](double x) { return 0.3 * std::sin(x); });
    ScalarField u(g, gg.values.array().exp());
    const double a =
        integral_cdc_margin(ctx, PhiFunction::xlogx(), u, 0.5, kInf, GammaRoute::algebraic)
            .margin;
    return std::abs(a - integral_cdc_margin_exponential(ctx, gg, 0.5, kInf).margin);
  };
  auto diff_pow = [](int n) {
    GridPtr g = circle(n);
    Generator gen =
        Generator::build(make_field(g, [](double x) { return 0.2 * std::cos(x); }));
    GammaContext ctx(gen);
    ctx.vpp = make_field(g, [](double x) { return -0.2 * std::cos(x); });
    ScalarField f = make_field(g, [](double x) { return 2.0 + std::sin(x); });
    const double a = integral_cdc_margin(ctx, PhiFunction::power(1.5), f, 0.5, 3.0).margin;
    return std::abs(a - integral_cdc_margin_power(ctx, f, 1.5, 0.5, 3.0).margin);
  };
  const double r1 = diff_exp(256) / diff_exp(512);
  const double r2 = diff_pow(256) / diff_pow(512);
  const bool ok = r1 > 3.2 && r1 < 4.8 && r2 > 3.2 && r2 < 4.8;
  CHECK(r1 > 3.2);
  CHECK(r1 < 4.8);
  CHECK(r2 > 3.2);
  CHECK(r2 < 4.8);
  report(11, "alternative forms of the integral condition agree at order two", ok);
  CHECK(ok);
}

TEST_CASE("criterion 12") {
  bool ok = true;

  // decay part of the equality chain: CSV matches the library byte for byte
  {
    CliRun r = run_cli("report --config " + preset("circle_sin.json"));
    Generator gen = zero_circle_generator(512);
    ScalarField f = make_field(gen.grid_ptr(), [](double x) { return std::sin(x); });
    DecayReport rep = check_decay(gen, PhiFunction::square(), f, 1.0, kInf, decay_times());
    ok = ok && r.code == 0 && r.out == rep.to_csv();
    CHECK(r.code == 0);
    CHECK(r.out == rep.to_csv());
  }

  // integral-condition and Poincare parts
  {
    CliRun r = run_cli("report --config " + preset("circle_sin_cdc.json"));
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    auto cdc_at = [](int n) {
      Generator g = zero_circle_generator(n);
      GammaContext ctx(g);
      ScalarField s = make_field(g.grid_ptr(), [](double x) { return std::sin(x); });
      return integral_cdc_margin(ctx, PhiFunction::square(), s, 1.0, kInf).margin;
    };
    const double margin = extrapolate(GridKind::circle, 512, cdc_at);
    ok = ok && r.code == 0 && j.at("results").at("margin").get<double>() == margin;
    CHECK(j.at("results").at("margin").get<double>() == margin);
  }

  // optimal-K part
  {
    CliRun r = run_cli("report --config " + preset("circle_sin_optimal_k.json"));
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    const double K = optimal_variance_k_extrapolated(
        [](int n) { return zero_circle_generator(n); }, 512, GridKind::circle);
    ok = ok && r.code == 0 && j.at("results").at("K").get<double>() == K;
    CHECK(j.at("results").at("K").get<double>() == K);
  }

  // concave family
  {
    CliRun r = run_cli("report --config " + preset("example14.json"));
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    ConcaveFamilyCertificate cert = concave_family_certificate(8.0, 1024);
    ok = ok && r.code == 0 &&
         j.at("results").at("K_numeric").get<double>() == cert.k_numeric &&
         j.at("results").at("K_lower").get<double>() == cert.k_lower;
    CHECK(j.at("results").at("K_numeric").get<double>() == cert.k_numeric);
  }

  // counterexample
  {
    CliRun r = run_cli("report --config " + preset("ane.json"));
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    ok = ok && r.code == 0 &&
         j.at("results").at("value").get<double>() == counterexample_integral(10.0, 4.0, 4096);
    const double star = j.at("results").at("alpha_star").get<double>();
    CHECK(star > 0.0);
    CHECK(star < 10.0);
  }

  // fundamental gap with the seeded convex suite
  {
    CliRun r = run_cli("report --config " + preset("gap_zero.json"));
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    const double margin = fundamental_gap_margin(zero_pot, 0.0, 1.0, 2048);
    ok = ok && r.code == 0 && j.at("results").at("margin").get<double>() == margin;
    CHECK(j.at("results").at("margin").get<double>() == margin);

    std::mt19937_64 rng(7);
    double suite_min = kInf;
    for (int i = 0; i < 10; ++i) {
      auto U = random_convex_potential(rng, 0.0, 1.0);
      suite_min = std::min(suite_min, fundamental_gap_margin(U, 0.0, 1.0, 1024));
    }
    CHECK(j.at("results").at("suite_min_margin").get<double>() == suite_min);
    ok = ok && j.at("results").at("suite_min_margin").get<double>() == suite_min;
  }

  // byte-identical reruns under a fixed seed
  for (const char* name : {"circle_sin.json", "gap_zero.json"}) {
    CliRun a = run_cli("report --config " + preset(name) + " --seed 5");
    CliRun b = run_cli("report --config " + preset(name) + " --seed 5");
    ok = ok && a.code == 0 && a.out == b.out && !a.out.empty();
    CHECK(a.out == b.out);
  }

  // exit-code contract
  {
    const int fail_code =
        run_cli("decay --config " + preset("circle_sin.json") + " --tol 1e-20").code;
    const int usage_code = run_cli("no-such-check").code;
    ok = ok && fail_code == 1 && usage_code == 2;
    CHECK(fail_code == 1);
    CHECK(usage_code == 2);
  }

  report(12, "CLI presets reproduce the equality criteria deterministically", ok);
  CHECK(ok);
}
