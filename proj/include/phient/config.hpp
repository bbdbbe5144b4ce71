#ifndef PHIENT_CONFIG_HPP
#define PHIENT_CONFIG_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "phient/grid.hpp"

namespace phient {

struct GeometryConfig {
  GridKind kind = GridKind::circle;
  int n = 0;      // 0 = per-check default
  int ny = 0;     // torus2d only
  std::vector<double> domain;  // [a, b]; torus2d: side lengths [Lx, Ly]
};

struct PhiConfig {
  std::string name = "square";
  double p = 1.5;
};

struct RunParams {
  double K = 0.0;
  double m = std::numeric_limits<double>::infinity();
  std::vector<double> times;
  double alpha = 10.0;
  double R = 0.0;      // 0 = per-check default
  double R_alt = 0.0;  // 0 = not requested
  std::uint64_t seed = 0;
  double t = 0.1;
  double dt = 1e-3;
  std::string f;  // test-function expression; empty = per-check default
  std::string modulus = "0";
  double margin_tol = 1e-8;
  bool two_sided = false;
  bool extrapolate = false;
  bool with_poincare = false;
  double poincare_tol = 1e-8;
  double gap_rel_tol = 1e-3;
  int random_convex_suite = 0;
  int random_f = 0;
  bool bisect = false;
  double alpha_lo = 1e-3;
  double alpha_hi = 10.0;
  double stability_tol = 0.01;
  double ratio_lo = 3.2;
  double ratio_hi = 4.8;
};

struct RunConfig {
  GeometryConfig geometry;
  std::string potential = "0";
  PhiConfig phi;
  std::string check;
  RunParams params;
};

extern const std::vector<std::string> kChecks;

/// Strict parse: unknown keys anywhere are rejected; "inf" is accepted for m.
RunConfig parse_config(const nlohmann::ordered_json& j);

/// Resolved-config block; reparses to an equivalent RunConfig.
nlohmann::ordered_json config_to_json(const RunConfig& c);

GridKind grid_kind_from_string(const std::string& s);
std::string grid_kind_to_string(GridKind k);

}  // namespace phient

#endif
