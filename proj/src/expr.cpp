#include "phient/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>

namespace phient {

struct PotentialExpr::Node {
  enum class Kind { number, var, add, sub, mul, div, pow, neg, call };
  Kind kind;
  double num = 0.0;
  std::string name;  // variable or function name
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = PotentialExpr::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

NodePtr number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->num = v;
  return n;
}

NodePtr variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::var;
  n->name = std::move(name);
  return n;
}

NodePtr binary(Kind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr call(std::string fn, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::call;
  n->name = std::move(fn);
  n->a = std::move(a);
  return n;
}

bool is_num(const NodePtr& n, double v) {
  return n->kind == Kind::number && n->num == v;
}

// Folding constructors keep differentiated trees readable.
NodePtr mk_neg(NodePtr a) {
  if (a->kind == Kind::number) return number(-a->num);
  if (a->kind == Kind::neg) return a->a;
  auto n = std::make_shared<Node>();
  n->kind = Kind::neg;
  n->a = std::move(a);
  return n;
}

NodePtr mk_add(NodePtr a, NodePtr b) {
  if (is_num(a, 0.0)) return b;
  if (is_num(b, 0.0)) return a;
  if (a->kind == Kind::number && b->kind == Kind::number) return number(a->num + b->num);
  return binary(Kind::add, std::move(a), std::move(b));
}

NodePtr mk_sub(NodePtr a, NodePtr b) {
  if (is_num(b, 0.0)) return a;
  if (is_num(a, 0.0)) return mk_neg(std::move(b));
  if (a->kind == Kind::number && b->kind == Kind::number) return number(a->num - b->num);
  return binary(Kind::sub, std::move(a), std::move(b));
}

NodePtr mk_mul(NodePtr a, NodePtr b) {
  if (is_num(a, 0.0) || is_num(b, 0.0)) return number(0.0);
  if (is_num(a, 1.0)) return b;
  if (is_num(b, 1.0)) return a;
  if (a->kind == Kind::number && b->kind == Kind::number) return number(a->num * b->num);
  return binary(Kind::mul, std::move(a), std::move(b));
}

NodePtr mk_div(NodePtr a, NodePtr b) {
  if (is_num(a, 0.0)) return number(0.0);
  if (is_num(b, 1.0)) return a;
  return binary(Kind::div, std::move(a), std::move(b));
}

NodePtr mk_pow(NodePtr a, NodePtr b) {
  if (is_num(b, 0.0)) return number(1.0);
  if (is_num(b, 1.0)) return a;
  return binary(Kind::pow, std::move(a), std::move(b));
}

const char* const kFunctions[] = {"sin", "cos", "exp", "log", "abs", "sign"};

bool known_function(const std::string& s) {
  for (const char* f : kFunctions)
    if (s == f) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr run() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", 0);
    NodePtr e = expr();
    skip_ws();
    if (pos_ < src_.size())
      throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
    return e;
  }

 private:
  std::string_view src_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (eat('+')) e = binary(Kind::add, e, term());
      else if (eat('-')) e = binary(Kind::sub, e, term());
      else return e;
    }
  }

  NodePtr term() {
    NodePtr e = unary();
    for (;;) {
      if (eat('*')) e = binary(Kind::mul, e, unary());
      else if (eat('/')) e = binary(Kind::div, e, unary());
      else return e;
    }
  }

  NodePtr unary() {
    if (eat('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Kind::neg;
      n->a = unary();
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return binary(Kind::pow, base, unary());  // right-associative
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    const std::string tok(src_.substr(start, pos_ - start));
    try {
      return number(std::stod(tok));
    } catch (const std::exception&) {
      throw ParseError("malformed number '" + tok + "'", start);
    }
  }

  NodePtr parse_ident() {
    const size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_'))
      ++pos_;
    const std::string name(src_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      if (!known_function(name))
        throw ParseError("unknown function '" + name + "'", start);
      ++pos_;
      NodePtr arg = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return call(name, std::move(arg));
    }
    if (name == "x" || name == "y") return variable(name);
    throw ParseError("unknown identifier '" + name + "'", start);
  }
};

double eval_node(const Node& n, double x, double y) {
  switch (n.kind) {
    case Kind::number: return n.num;
    case Kind::var: return n.name == "x" ? x : y;
    case Kind::add: return eval_node(*n.a, x, y) + eval_node(*n.b, x, y);
    case Kind::sub: return eval_node(*n.a, x, y) - eval_node(*n.b, x, y);
    case Kind::mul: return eval_node(*n.a, x, y) * eval_node(*n.b, x, y);
    case Kind::div: {
      const double d = eval_node(*n.b, x, y);
      if (d == 0.0) throw EvalError("division by zero");
      return eval_node(*n.a, x, y) / d;
    }
    case Kind::pow: {
      const double base = eval_node(*n.a, x, y);
      const double ex = eval_node(*n.b, x, y);
      if (base < 0.0 && ex != std::floor(ex))
        throw EvalError("negative base with non-integer exponent");
      if (base == 0.0 && ex < 0.0) throw EvalError("zero raised to a negative power");
      return std::pow(base, ex);
    }
    case Kind::neg: return -eval_node(*n.a, x, y);
    case Kind::call: {
      const double v = eval_node(*n.a, x, y);
      if (n.name == "sin") return std::sin(v);
      if (n.name == "cos") return std::cos(v);
      if (n.name == "exp") return std::exp(v);
      if (n.name == "log") {
        if (v <= 0.0) throw EvalError("log of non-positive argument");
        return std::log(v);
      }
      if (n.name == "abs") return std::abs(v);
      return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);  // sign
    }
  }
  throw EvalError("corrupt expression node");
}

NodePtr diff_node(const NodePtr& n, const std::string& var) {
  switch (n->kind) {
    case Kind::number: return number(0.0);
    case Kind::var: return number(n->name == var ? 1.0 : 0.0);
    case Kind::add: return mk_add(diff_node(n->a, var), diff_node(n->b, var));
    case Kind::sub: return mk_sub(diff_node(n->a, var), diff_node(n->b, var));
    case Kind::mul:
      return mk_add(mk_mul(diff_node(n->a, var), n->b), mk_mul(n->a, diff_node(n->b, var)));
    case Kind::div:
      return mk_div(mk_sub(mk_mul(diff_node(n->a, var), n->b),
                           mk_mul(n->a, diff_node(n->b, var))),
                    mk_pow(n->b, number(2.0)));
    case Kind::pow: {
      if (n->b->kind == Kind::number) {
        const double c = n->b->num;
        return mk_mul(mk_mul(number(c), mk_pow(n->a, number(c - 1.0))), diff_node(n->a, var));
      }
      // u^v = exp(v log u)
      NodePtr inner = mk_add(mk_mul(diff_node(n->b, var), call("log", n->a)),
                             mk_div(mk_mul(n->b, diff_node(n->a, var)), n->a));
      return mk_mul(mk_pow(n->a, n->b), inner);
    }
    case Kind::neg: return mk_neg(diff_node(n->a, var));
    case Kind::call: {
      NodePtr du = diff_node(n->a, var);
      if (n->name == "sin") return mk_mul(call("cos", n->a), du);
      if (n->name == "cos") return mk_neg(mk_mul(call("sin", n->a), du));
      if (n->name == "exp") return mk_mul(call("exp", n->a), du);
      if (n->name == "log") return mk_div(du, n->a);
      if (n->name == "abs") return mk_mul(call("sign", n->a), du);
      return number(0.0);  // sign' = 0 away from the kink
    }
  }
  return number(0.0);
}

int precedence(Kind k) {
  switch (k) {
    case Kind::add:
    case Kind::sub: return 1;
    case Kind::mul:
    case Kind::div: return 2;
    case Kind::neg: return 3;
    case Kind::pow: return 4;
    default: return 5;
  }
}

void print_node(const Node& n, int parent, std::string& out) {
  const int self = precedence(n.kind);
  const bool parens = self < parent;
  if (parens) out += '(';
  switch (n.kind) {
    case Kind::number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.num);
      out += buf;
      break;
    }
    case Kind::var: out += n.name; break;
    case Kind::add:
      print_node(*n.a, self, out);
      out += '+';
      print_node(*n.b, self + 1, out);
      break;
    case Kind::sub:
      print_node(*n.a, self, out);
      out += '-';
      print_node(*n.b, self + 1, out);
      break;
    case Kind::mul:
      print_node(*n.a, self, out);
      out += '*';
      print_node(*n.b, self + 1, out);
      break;
    case Kind::div:
      print_node(*n.a, self, out);
      out += '/';
      print_node(*n.b, self + 1, out);
      break;
    case Kind::pow:
      print_node(*n.a, self + 1, out);
      out += '^';
      print_node(*n.b, self, out);  // right-associative
      break;
    case Kind::neg:
      out += '-';
      print_node(*n.a, self, out);
      break;
    case Kind::call:
      out += n.name;
      out += '(';
      print_node(*n.a, 0, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

bool uses_node(const Node& n, const std::string& var) {
  if (n.kind == Kind::var) return n.name == var;
  return (n.a && uses_node(*n.a, var)) || (n.b && uses_node(*n.b, var));
}

}  // namespace

PotentialExpr PotentialExpr::parse(std::string_view src) {
  return PotentialExpr(Parser(src).run());
}

double PotentialExpr::eval(double x, double y) const { return eval_node(*root_, x, y); }

PotentialExpr PotentialExpr::derivative(const std::string& var) const {
  return PotentialExpr(diff_node(root_, var));
}

std::string PotentialExpr::to_string() const {
  std::string out;
  print_node(*root_, 0, out);
  return out;
}

bool PotentialExpr::uses(const std::string& var) const { return uses_node(*root_, var); }

PotentialExpr parse_potential(std::string_view src) { return PotentialExpr::parse(src); }

ScalarField sample_expr(const PotentialExpr& e, const GridPtr& grid) {
  if (e.uses("y") && grid->kind != GridKind::torus2d)
    throw std::invalid_argument("expression uses 'y' but the grid is one-dimensional");
  Eigen::VectorXd v(grid->node_count());
  for (int j = 0; j < grid->ny; ++j)
    for (int i = 0; i < grid->nx; ++i) {
      const double x = grid->x[i];
      const double y = grid->kind == GridKind::torus2d ? grid->y[j] : 0.0;
      try {
        v[grid->index(i, j)] = e.eval(x, y);
      } catch (const EvalError& err) {
        std::string msg = std::string(err.what()) + " at x=" + std::to_string(x);
        if (grid->kind == GridKind::torus2d) msg += ", y=" + std::to_string(y);
        throw EvalError(msg);
      }
    }
  return ScalarField(grid, std::move(v));
}

}  // namespace phient
