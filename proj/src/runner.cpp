#include "phient/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "phient/cdc.hpp"
#include "phient/config.hpp"
#include "phient/expr.hpp"
#include "phient/random_fields.hpp"
#include "phient/schrodinger.hpp"

namespace phient {

namespace {

using json = nlohmann::ordered_json;

int default_n(const std::string& check) {
  if (check == "identity") return 256;
  if (check == "gap") return 2048;
  if (check == "counterexample") return 4096;
  if (check == "example14") return 1024;
  return 512;
}

void fill_defaults(RunConfig& c) {
  if (c.params.R == 0.0) c.params.R = c.check == "counterexample" ? 4.0 : 8.0;
  if (c.check == "counterexample" || c.check == "example14") {
    c.geometry.kind = GridKind::interval_neumann;
    c.geometry.domain = {-c.params.R, c.params.R};
  }
  if (c.check == "gap" || c.check == "ground-state")
    c.geometry.kind = GridKind::interval_dirichlet;

  if (c.geometry.n == 0) c.geometry.n = default_n(c.check);
  if (c.geometry.kind == GridKind::torus2d && c.geometry.ny == 0)
    c.geometry.ny = c.geometry.n;
  if (c.geometry.domain.empty()) {
    switch (c.geometry.kind) {
      case GridKind::circle: c.geometry.domain = {0.0, 2.0 * M_PI}; break;
      case GridKind::torus2d: c.geometry.domain = {2.0 * M_PI, 2.0 * M_PI}; break;
      default: c.geometry.domain = {0.0, 1.0}; break;
    }
  }
  if (c.params.times.empty())
    c.params.times = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  if (c.params.f.empty())
    c.params.f = c.geometry.kind == GridKind::circle ? "sin(x)" : "1+x";
}

GridPtr build_grid(const GeometryConfig& g, GridKind kind_override, int n) {
  if (kind_override == GridKind::torus2d)
    return make_grid_torus(n, g.ny > 0 ? g.ny : n, g.domain[0], g.domain[1]);
  return make_grid(kind_override, n, g.domain[0], g.domain[1]);
}

struct Problem {
  GridPtr grid;
  Generator gen;
  GammaContext ctx;
};

Problem build_problem(const RunConfig& c, int n) {
  PotentialExpr V = parse_potential(c.potential);
  GridPtr grid = build_grid(c.geometry, c.geometry.kind, n);
  Generator gen = Generator::build(sample_expr(V, grid));
  GammaContext ctx(gen);
  if (grid->kind == GridKind::torus2d) {
    PotentialExpr vx = V.derivative("x"), vy = V.derivative("y");
    ctx.vx = sample_expr(vx, grid);
    ctx.vy = sample_expr(vy, grid);
    ctx.vxx = sample_expr(vx.derivative("x"), grid);
    ctx.vxy = sample_expr(vx.derivative("y"), grid);
    ctx.vyy = sample_expr(vy.derivative("y"), grid);
  } else {
    PotentialExpr vp = V.derivative("x");
    ctx.vp = sample_expr(vp, grid);
    ctx.vpp = sample_expr(vp.derivative("x"), grid);
  }
  return Problem{grid, gen, std::move(ctx)};
}

ScalarField sample_f(const RunConfig& c, const GridPtr& grid) {
  return sample_expr(parse_potential(c.params.f), grid);
}

PhiFunction phi_of(const RunConfig& c) { return phi_suite(c.phi.name, c.phi.p); }

struct Output {
  json results;
  std::string csv;  // used when format == csv and the check produces a table
  bool pass = true;
};

Output run_identity(const RunConfig& c) {
  const PhiFunction phi = phi_of(c);
  Problem coarse = build_problem(c, c.geometry.n);
  Problem fine = build_problem(c, refined_node_count(c.geometry.kind, c.geometry.n));
  const double r1 = identity_residual(coarse.ctx, phi, sample_f(c, coarse.grid), c.params.t);
  const double r2 = identity_residual(fine.ctx, phi, sample_f(c, fine.grid), c.params.t);
  const double ratio = r1 / r2;

  Output out;
  out.results["residual"] = r1;
  out.results["residual_refined"] = r2;
  out.results["ratio"] = ratio;
  out.pass = ratio >= c.params.ratio_lo && ratio <= c.params.ratio_hi;
  return out;
}

Output run_decay(const RunConfig& c) {
  Problem pb = build_problem(c, c.geometry.n);
  DecayReport rep = check_decay(pb.gen, phi_of(c), sample_f(c, pb.grid), c.params.K,
                                c.params.m, c.params.times);
  Output out;
  out.csv = rep.to_csv();
  json rows = json::array();
  for (size_t i = 0; i < rep.times.size(); ++i)
    rows.push_back({{"t", rep.times[i]},
                    {"q_measured", rep.measured[i]},
                    {"bound", rep.bound[i]},
                    {"margin", rep.margin[i]}});
  out.results["q0"] = rep.q0;
  out.results["C0"] = rep.c0;
  out.results["rows"] = rows;
  out.pass = c.params.two_sided ? rep.max_abs_margin() <= c.params.margin_tol
                                : rep.min_margin() >= -c.params.margin_tol;
  return out;
}

Output run_cdc(const RunConfig& c) {
  const PhiFunction phi = phi_of(c);
  const auto eval = [&](int n) {
    Problem pb = build_problem(c, n);
    ScalarField f = sample_f(c, pb.grid);
    CdcReport rep = integral_cdc_margin(pb.ctx, phi, f, c.params.K, c.params.m);
    double poin = 0.0;
    if (c.params.with_poincare)
      poin = phi_sobolev_margin(phi, f, pb.gen.measure(), c.params.K);
    return std::make_pair(rep, poin);
  };

  auto [rep, poin] = eval(c.geometry.n);
  if (c.params.extrapolate) {
    auto [rep2, poin2] = eval(refined_node_count(c.geometry.kind, c.geometry.n));
    rep.lhs = richardson2(rep.lhs, rep2.lhs);
    rep.rhs = richardson2(rep.rhs, rep2.rhs);
    rep.margin = richardson2(rep.margin, rep2.margin);
    poin = richardson2(poin, poin2);
  }

  Output out;
  out.results["lhs"] = rep.lhs;
  out.results["rhs"] = rep.rhs;
  out.results["margin"] = rep.margin;
  out.results["boundary_term"] = rep.boundary_term;
  out.pass = c.params.two_sided ? std::abs(rep.margin) <= c.params.margin_tol
                                : rep.margin >= -c.params.margin_tol;
  if (c.params.with_poincare) {
    out.results["poincare_margin"] = poin;
    out.pass = out.pass && (c.params.two_sided ? std::abs(poin) <= c.params.poincare_tol
                                               : poin >= -c.params.poincare_tol);
  }
  return out;
}

Output run_optimal_k(const RunConfig& c) {
  Output out;
  double K;
  if (c.params.extrapolate) {
    K = optimal_variance_k_extrapolated(
        [&](int n) { return build_problem(c, n).gen; }, c.geometry.n, c.geometry.kind);
  } else {
    K = optimal_variance_k(build_problem(c, c.geometry.n).gen);
  }
  out.results["K"] = K;
  out.results["extrapolated"] = c.params.extrapolate;
  return out;
}

Output run_ground_state(const RunConfig& c) {
  PotentialExpr Uexpr = parse_potential(c.potential);
  PotentialExpr Mexpr = parse_potential(c.params.modulus);
  const auto U = [&](double x) { return Uexpr.eval(x); };
  const auto M = [&](double x) { return Mexpr.eval(x); };
  GroundStateSystem sys(U, c.geometry.domain[0], c.geometry.domain[1], c.geometry.n);
  const PhiFunction phi = phi_of(c);

  std::vector<ScalarField> fs;
  json labels = json::array();
  if (c.params.random_f > 0) {
    std::mt19937_64 rng(c.params.seed);
    for (int i = 0; i < c.params.random_f; ++i) {
      fs.push_back(random_band_limited(sys.interior_grid(), rng, 3, 0.4, 1.0));
      labels.push_back("random#" + std::to_string(i));
    }
  } else {
    fs.push_back(sample_expr(parse_potential(c.params.f), sys.interior_grid()));
    labels.push_back(c.params.f);
  }

  Output out;
  json runs = json::array();
  double rate = 0.0;
  for (size_t i = 0; i < fs.size(); ++i) {
    DecayReport rep = check_schrodinger_decay(sys, M, phi, fs[i], c.params.times);
    rate = 2.0 * rep.K;
    json rows = json::array();
    for (size_t j = 0; j < rep.times.size(); ++j)
      rows.push_back({{"t", rep.times[j]},
                      {"q_measured", rep.measured[j]},
                      {"bound", rep.bound[j]},
                      {"margin", rep.margin[j]}});
    runs.push_back({{"f", labels[i]}, {"min_margin", rep.min_margin()}, {"rows", rows}});
    out.pass = out.pass && rep.min_margin() >= -c.params.margin_tol;
    if (fs.size() == 1) out.csv = rep.to_csv();
  }
  out.results["rate"] = rate;
  out.results["runs"] = runs;
  return out;
}

Output run_gap(const RunConfig& c) {
  PotentialExpr Uexpr = parse_potential(c.potential);
  const auto U = [&](double x) { return Uexpr.eval(x); };
  const double a = c.geometry.domain[0], b = c.geometry.domain[1];
  const double threshold = 3.0 * M_PI * M_PI / ((b - a) * (b - a));
  const double margin = fundamental_gap_margin(U, a, b, c.geometry.n);
  Spectrum sp = dirichlet_eigs(U, a, b, 2, c.geometry.n, /*refine_eigenvalues=*/true);

  Output out;
  out.results["gap"] = margin + threshold;
  out.results["threshold"] = threshold;
  out.results["margin"] = margin;
  out.results["eigenvalues"] = std::vector<double>{sp.eigenvalues[0], sp.eigenvalues[1]};
  out.pass = std::abs(margin) <= c.params.gap_rel_tol * threshold ||
             margin >= -c.params.margin_tol;

  if (c.params.random_convex_suite > 0) {
    std::mt19937_64 rng(c.params.seed);
    double suite_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < c.params.random_convex_suite; ++i) {
      auto Ui = random_convex_potential(rng, a, b);
      suite_min = std::min(suite_min, fundamental_gap_margin(Ui, a, b, 1024));
    }
    out.results["suite_min_margin"] = suite_min;
    out.pass = out.pass && suite_min >= -c.params.margin_tol;
  }
  return out;
}

Output run_counterexample(const RunConfig& c) {
  Output out;
  const double value = counterexample_integral(c.params.alpha, c.params.R, c.geometry.n);
  out.results["value"] = value;
  out.results["alpha"] = c.params.alpha;
  if (c.params.bisect) {
    const double star = counterexample_sign_change(c.params.alpha_lo, c.params.alpha_hi);
    out.results["alpha_star"] = star;
  }
  out.pass = value < 0.0;
  return out;
}

Output run_concave_family(const RunConfig& c) {
  ConcaveFamilyCertificate cert = concave_family_certificate(c.params.R, c.geometry.n);
  Output out;
  out.results["delta"] = cert.delta;
  out.results["osc"] = cert.osc;
  out.results["K_lower"] = cert.k_lower;
  out.results["K_numeric"] = cert.k_numeric;
  out.pass = cert.k_numeric > 0.0 && cert.k_numeric >= cert.k_lower;
  if (c.params.R_alt > 0.0) {
    ConcaveFamilyCertificate alt = concave_family_certificate(c.params.R_alt, c.geometry.n);
    const double stability = std::abs(alt.k_numeric - cert.k_numeric) / cert.k_numeric;
    out.results["K_numeric_alt"] = alt.k_numeric;
    out.results["stability"] = stability;
    out.pass = out.pass && stability <= c.params.stability_tol;
  }
  return out;
}

Output dispatch(const RunConfig& c) {
  if (c.check == "identity") return run_identity(c);
  if (c.check == "decay") return run_decay(c);
  if (c.check == "cdc") return run_cdc(c);
  if (c.check == "optimal-k") return run_optimal_k(c);
  if (c.check == "ground-state") return run_ground_state(c);
  if (c.check == "gap") return run_gap(c);
  if (c.check == "counterexample") return run_counterexample(c);
  if (c.check == "example14") return run_concave_family(c);
  throw std::invalid_argument("no runnable check selected");
}

}  // namespace

int run_command(int argc, const char* const* argv) {
  CLI::App app{"weighted-diffusion entropy/curvature checks"};
  app.require_subcommand(1);

  std::optional<std::string> config_path, out_path, format, kind, potential, phi_name,
      f_expr, m_str;
  std::optional<int> n, ny;
  std::optional<double> p_val, K, alpha, R, t, dt, tol;
  std::optional<std::uint64_t> seed;
  std::vector<double> domain, times;

  for (const std::string& name : kChecks) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed);
    sub->add_option("--n", n);
    sub->add_option("--ny", ny);
    sub->add_option("--kind", kind);
    sub->add_option("--domain", domain)->delimiter(',')->expected(2);
    sub->add_option("--potential", potential);
    sub->add_option("--phi", phi_name);
    sub->add_option("--p", p_val);
    sub->add_option("--K", K);
    sub->add_option("--m", m_str);
    sub->add_option("--times", times)->delimiter(',');
    sub->add_option("--alpha", alpha);
    sub->add_option("--R", R);
    sub->add_option("--f", f_expr);
    sub->add_option("--t", t);
    sub->add_option("--dt", dt);
    sub->add_option("--tol", tol);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg;
    if (config_path) {
      std::ifstream in(*config_path);
      if (!in) throw std::invalid_argument("cannot open config '" + *config_path + "'");
      json j = json::parse(in);
      cfg = parse_config(j);
    }
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub != "report") {
      cfg.check = sub;
    } else if (cfg.check.empty() || cfg.check == "report") {
      throw std::invalid_argument("report: config must name a concrete check");
    }

    if (kind) cfg.geometry.kind = grid_kind_from_string(*kind);
    if (n) cfg.geometry.n = *n;
    if (ny) cfg.geometry.ny = *ny;
    if (!domain.empty()) cfg.geometry.domain = domain;
    if (potential) cfg.potential = *potential;
    if (phi_name) cfg.phi.name = *phi_name;
    if (p_val) cfg.phi.p = *p_val;
    if (K) cfg.params.K = *K;
    if (m_str)
      cfg.params.m = (*m_str == "inf") ? std::numeric_limits<double>::infinity()
                                       : std::stod(*m_str);
    if (!times.empty()) cfg.params.times = times;
    if (alpha) cfg.params.alpha = *alpha;
    if (R) cfg.params.R = *R;
    if (seed) cfg.params.seed = *seed;
    if (f_expr) cfg.params.f = *f_expr;
    if (t) cfg.params.t = *t;
    if (dt) cfg.params.dt = *dt;
    if (tol) cfg.params.margin_tol = *tol;

    fill_defaults(cfg);

    Output out = dispatch(cfg);

    const bool want_csv =
        format ? (*format == "csv") : !out.csv.empty();
    std::string payload;
    if (want_csv && !out.csv.empty()) {
      payload = out.csv;
    } else {
      json envelope;
      envelope["check"] = cfg.check;
      envelope["config"] = config_to_json(cfg);
      envelope["results"] = out.results;
      envelope["pass"] = out.pass;
      payload = envelope.dump(2);
      payload += '\n';
    }

    if (out_path) {
      std::ofstream os(*out_path, std::ios::binary);
      if (!os) throw std::invalid_argument("cannot open output '" + *out_path + "'");
      os << payload;
    } else {
      std::cout << payload;
    }
    return out.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace phient
