#ifndef PHIENT_EXPR_HPP
#define PHIENT_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "phient/field.hpp"

namespace phient {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset(offset) {}
  size_t offset;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arithmetic expression over x (and y on 2-D grids): numbers, + - * / ^,
/// unary minus, sin cos exp log abs sign, parentheses.  Supports exact
/// symbolic differentiation; evaluation reports domain faults.
class PotentialExpr {
 public:
  struct Node;

  static PotentialExpr parse(std::string_view src);

  double eval(double x, double y = 0.0) const;
  PotentialExpr derivative(const std::string& var) const;
  std::string to_string() const;
  bool uses(const std::string& var) const;

 private:
  explicit PotentialExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

PotentialExpr parse_potential(std::string_view src);

/// Sample on the grid; domain faults are reported with the node coordinate.
ScalarField sample_expr(const PotentialExpr& e, const GridPtr& grid);

}  // namespace phient

#endif
