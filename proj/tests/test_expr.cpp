#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "phient/expr.hpp"
#include "phient/measure.hpp"

using namespace phient;

TEST_CASE("arithmetic, precedence, associativity") {
  CHECK(parse_potential("1+2*3").eval(0) == 7.0);
  CHECK(parse_potential("(1+2)*3").eval(0) == 9.0);
  CHECK(parse_potential("2-3-4").eval(0) == -5.0);
  CHECK(parse_potential("12/4/3").eval(0) == 1.0);
  CHECK(parse_potential("2^3^2").eval(0) == 512.0);  // right-associative
  CHECK(parse_potential("-x^2").eval(3.0) == -9.0);
  CHECK(parse_potential("x^-2").eval(2.0) == 0.25);
  CHECK(parse_potential("2e-3 + 1E2").eval(0) == doctest::Approx(100.002).epsilon(1e-15));
  CHECK(parse_potential("abs(-3.5)").eval(0) == 3.5);
  CHECK(parse_potential("sin(x)^2+cos(x)^2").eval(0.7) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("symbolic derivatives of the quadratic potential") {
  PotentialExpr v = parse_potential("-0.5*x^2");
  PotentialExpr v1 = v.derivative("x");
  PotentialExpr v2 = v1.derivative("x");
  for (double x : {-2.0, 0.0, 1.3}) {
    CHECK(v1.eval(x) == doctest::Approx(-x).epsilon(1e-15));
    CHECK(v2.eval(x) == doctest::Approx(-1.0).epsilon(1e-15));
  }
}

TEST_CASE("symbolic derivatives match central differences") {
  const std::vector<std::string> exprs = {
      "cos(x)", "exp(0.3*x)*sin(x)", "x*log(x+3)", "1/(2+sin(x))",
      "x^3-2*x^2+0.5", "exp(-0.5*x^2)", "(1+x^2)^1.5", "sin(cos(x)+x/2)"};
  const double eps = 1e-6;
  for (const std::string& src : exprs) {
    PotentialExpr e = parse_potential(src);
    PotentialExpr d = e.derivative("x");
    for (double x : {-1.1, 0.2, 0.9, 2.4}) {
      const double fd = (e.eval(x + eps) - e.eval(x - eps)) / (2 * eps);
      CHECK(d.eval(x) == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("cos derivative is minus sine") {
  PotentialExpr d = parse_potential("cos(x)").derivative("x");
  CHECK(d.eval(0.3) == doctest::Approx(-std::sin(0.3)).epsilon(1e-15));
}

TEST_CASE("abs differentiates through sign") {
  PotentialExpr d = parse_potential("abs(x)").derivative("x");
  CHECK(d.eval(2.0) == 1.0);
  CHECK(d.eval(-2.0) == -1.0);
}

TEST_CASE("two-variable expressions") {
  PotentialExpr e = parse_potential("sin(x)*cos(y)");
  CHECK(e.uses("y"));
  CHECK(!parse_potential("sin(x)").uses("y"));
  CHECK(e.eval(M_PI / 2, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  PotentialExpr dy = e.derivative("y");
  CHECK(dy.eval(M_PI / 2, M_PI / 2) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("print/parse round trip is stable") {
  const std::vector<std::string> exprs = {
      "-0.5*x^2", "cos(x)", "2-3-4", "2^3^2", "1/(2+sin(x))",
      "exp(-(x-1)^2)*sin(3*x)", "x^-2", "abs(x)-sign(x)"};
  for (const std::string& src : exprs) {
    PotentialExpr e = parse_potential(src);
    const std::string once = e.to_string();
    const std::string twice = PotentialExpr::parse(once).to_string();
    CHECK(once == twice);
    // value preserved too
    for (double x : {0.3, 1.7})
      CHECK(e.eval(x) == doctest::Approx(PotentialExpr::parse(once).eval(x)).epsilon(1e-15));
  }
}

TEST_CASE("derivatives keep the round trip stable") {
  PotentialExpr d = parse_potential("exp(0.3*x)*sin(x)").derivative("x");
  const std::string s = d.to_string();
  CHECK(PotentialExpr::parse(s).to_string() == s);
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_WITH_AS(parse_potential("foo(x)"), "unknown function 'foo' at offset 0",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_potential("x+bar"), "unknown identifier 'bar' at offset 2",
                       ParseError);
  CHECK_THROWS_AS(parse_potential(""), ParseError);
  CHECK_THROWS_AS(parse_potential("  "), ParseError);
  CHECK_THROWS_AS(parse_potential("1+"), ParseError);
  CHECK_THROWS_AS(parse_potential("(1+2"), ParseError);
  CHECK_THROWS_AS(parse_potential("1+2)"), ParseError);
  CHECK_THROWS_AS(parse_potential("1 $ 2"), ParseError);
  try {
    parse_potential("2*@");
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
  }
}

TEST_CASE("evaluation domain faults") {
  CHECK_THROWS_AS(parse_potential("1/x").eval(0.0), EvalError);
  CHECK_THROWS_AS(parse_potential("log(x)").eval(-1.0), EvalError);
  CHECK_THROWS_AS(parse_potential("x^0.5").eval(-4.0), EvalError);
  CHECK_THROWS_AS(parse_potential("x^-1").eval(0.0), EvalError);
}

TEST_CASE("grid sampling reports the failing coordinate") {
  GridPtr g = make_grid(GridKind::interval_neumann, 9, -1.0, 1.0);
  PotentialExpr e = parse_potential("log(x)");
  try {
    sample_expr(e, g);
    CHECK(false);
  } catch (const EvalError& err) {
    CHECK(std::string(err.what()).find("at x=") != std::string::npos);
  }

  // y rejected on 1-D grids
  CHECK_THROWS_AS(sample_expr(parse_potential("y"), g), std::invalid_argument);

  GridPtr torus = make_grid_torus(8, 8, 1.0, 1.0);
  ScalarField f = sample_expr(parse_potential("x+2*y"), torus);
  CHECK(f.values[torus->index(2, 3)] ==
        doctest::Approx(torus->x[2] + 2.0 * torus->y[3]).epsilon(1e-15));
}
