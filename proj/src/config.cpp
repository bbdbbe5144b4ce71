#include "phient/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phient {

using json = nlohmann::ordered_json;

const std::vector<std::string> kChecks = {
    "identity", "decay", "cdc", "optimal-k", "ground-state",
    "gap", "counterexample", "example14", "report"};

GridKind grid_kind_from_string(const std::string& s) {
  if (s == "circle") return GridKind::circle;
  if (s == "interval_neumann") return GridKind::interval_neumann;
  if (s == "interval_dirichlet") return GridKind::interval_dirichlet;
  if (s == "torus2d") return GridKind::torus2d;
  throw std::invalid_argument("config: unknown grid kind '" + s + "'");
}

std::string grid_kind_to_string(GridKind k) {
  switch (k) {
    case GridKind::circle: return "circle";
    case GridKind::interval_neumann: return "interval_neumann";
    case GridKind::interval_dirichlet: return "interval_dirichlet";
    default: return "torus2d";
  }
}

namespace {

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
}

double parse_m(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("config: m must be a number or \"inf\"");
  }
  return v.get<double>();
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  reject_unknown(j, {"geometry", "potential", "phi", "check", "params"}, "top level");

  RunConfig c;
  if (j.contains("geometry")) {
    const json& g = j.at("geometry");
    reject_unknown(g, {"kind", "n", "ny", "domain"}, "geometry");
    if (g.contains("kind")) c.geometry.kind = grid_kind_from_string(g.at("kind").get<std::string>());
    if (g.contains("n")) c.geometry.n = g.at("n").get<int>();
    if (g.contains("ny")) c.geometry.ny = g.at("ny").get<int>();
    if (g.contains("domain")) {
      c.geometry.domain = g.at("domain").get<std::vector<double>>();
      if (c.geometry.domain.size() != 2)
        throw std::invalid_argument("config: geometry.domain must have two entries");
    }
  }
  if (j.contains("potential")) c.potential = j.at("potential").get<std::string>();
  if (j.contains("phi")) {
    const json& p = j.at("phi");
    reject_unknown(p, {"name", "p"}, "phi");
    if (p.contains("name")) c.phi.name = p.at("name").get<std::string>();
    if (p.contains("p")) c.phi.p = p.at("p").get<double>();
  }
  if (j.contains("check")) {
    c.check = j.at("check").get<std::string>();
    if (std::find(kChecks.begin(), kChecks.end(), c.check) == kChecks.end())
      throw std::invalid_argument("config: unknown check '" + c.check + "'");
  }
  if (j.contains("params")) {
    const json& p = j.at("params");
    reject_unknown(p,
                   {"K", "m", "times", "alpha", "R", "R_alt", "seed", "t", "dt", "f",
                    "modulus", "margin_tol", "two_sided", "extrapolate", "with_poincare",
                    "poincare_tol", "gap_rel_tol", "random_convex_suite", "random_f",
                    "bisect", "alpha_lo", "alpha_hi", "stability_tol", "ratio_lo",
                    "ratio_hi"},
                   "params");
    RunParams& r = c.params;
    if (p.contains("K")) r.K = p.at("K").get<double>();
    if (p.contains("m")) r.m = parse_m(p.at("m"));
    if (p.contains("times")) r.times = p.at("times").get<std::vector<double>>();
    if (p.contains("alpha")) r.alpha = p.at("alpha").get<double>();
    if (p.contains("R")) r.R = p.at("R").get<double>();
    if (p.contains("R_alt")) r.R_alt = p.at("R_alt").get<double>();
    if (p.contains("seed")) r.seed = p.at("seed").get<std::uint64_t>();
    if (p.contains("t")) r.t = p.at("t").get<double>();
    if (p.contains("dt")) r.dt = p.at("dt").get<double>();
    if (p.contains("f")) r.f = p.at("f").get<std::string>();
    if (p.contains("modulus")) r.modulus = p.at("modulus").get<std::string>();
    if (p.contains("margin_tol")) r.margin_tol = p.at("margin_tol").get<double>();
    if (p.contains("two_sided")) r.two_sided = p.at("two_sided").get<bool>();
    if (p.contains("extrapolate")) r.extrapolate = p.at("extrapolate").get<bool>();
    if (p.contains("with_poincare")) r.with_poincare = p.at("with_poincare").get<bool>();
    if (p.contains("poincare_tol")) r.poincare_tol = p.at("poincare_tol").get<double>();
    if (p.contains("gap_rel_tol")) r.gap_rel_tol = p.at("gap_rel_tol").get<double>();
    if (p.contains("random_convex_suite"))
      r.random_convex_suite = p.at("random_convex_suite").get<int>();
    if (p.contains("random_f")) r.random_f = p.at("random_f").get<int>();
    if (p.contains("bisect")) r.bisect = p.at("bisect").get<bool>();
    if (p.contains("alpha_lo")) r.alpha_lo = p.at("alpha_lo").get<double>();
    if (p.contains("alpha_hi")) r.alpha_hi = p.at("alpha_hi").get<double>();
    if (p.contains("stability_tol")) r.stability_tol = p.at("stability_tol").get<double>();
    if (p.contains("ratio_lo")) r.ratio_lo = p.at("ratio_lo").get<double>();
    if (p.contains("ratio_hi")) r.ratio_hi = p.at("ratio_hi").get<double>();
  }
  return c;
}

json config_to_json(const RunConfig& c) {
  json g;
  g["kind"] = grid_kind_to_string(c.geometry.kind);
  g["n"] = c.geometry.n;
  if (c.geometry.kind == GridKind::torus2d) g["ny"] = c.geometry.ny;
  g["domain"] = c.geometry.domain;

  json phi;
  phi["name"] = c.phi.name;
  if (c.phi.name == "power") phi["p"] = c.phi.p;

  const RunParams& r = c.params;
  json p;
  p["K"] = r.K;
  if (std::isinf(r.m)) p["m"] = "inf"; else p["m"] = r.m;
  if (!r.times.empty()) p["times"] = r.times;
  p["alpha"] = r.alpha;
  p["R"] = r.R;
  if (r.R_alt != 0.0) p["R_alt"] = r.R_alt;
  p["seed"] = r.seed;
  p["t"] = r.t;
  p["dt"] = r.dt;
  if (!r.f.empty()) p["f"] = r.f;
  p["modulus"] = r.modulus;
  p["margin_tol"] = r.margin_tol;
  p["two_sided"] = r.two_sided;
  p["extrapolate"] = r.extrapolate;
  p["with_poincare"] = r.with_poincare;
  p["poincare_tol"] = r.poincare_tol;
  p["gap_rel_tol"] = r.gap_rel_tol;
  p["random_convex_suite"] = r.random_convex_suite;
  p["random_f"] = r.random_f;
  p["bisect"] = r.bisect;
  p["alpha_lo"] = r.alpha_lo;
  p["alpha_hi"] = r.alpha_hi;
  p["stability_tol"] = r.stability_tol;
  p["ratio_lo"] = r.ratio_lo;
  p["ratio_hi"] = r.ratio_hi;

  json out;
  out["geometry"] = g;
  out["potential"] = c.potential;
  out["phi"] = phi;
  out["check"] = c.check;
  out["params"] = p;
  return out;
}

}  // namespace phient
