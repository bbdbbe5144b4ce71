#include "phient/phi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace phient {

PhiFunction PhiFunction::xlogx() { return PhiFunction(Family::xlogx, 0.0); }
PhiFunction PhiFunction::square() { return PhiFunction(Family::square, 0.0); }

PhiFunction PhiFunction::power(double p) {
  if (!(p > 1.0 && p <= 2.0))
    throw std::invalid_argument("PhiFunction::power: p must lie in (1, 2]");
  return PhiFunction(Family::power, p);
}

std::string PhiFunction::name() const {
  switch (family_) {
    case Family::xlogx: return "xlogx";
    case Family::square: return "square";
    default: return "power";
  }
}

double PhiFunction::value(double x) const {
  switch (family_) {
    case Family::xlogx: return x * std::log(x);
    case Family::square: return x * x;
    default: return (std::pow(x, p_) - x) / (p_ * (p_ - 1.0));
  }
}

double PhiFunction::d1(double x) const {
  switch (family_) {
    case Family::xlogx: return std::log(x) + 1.0;
    case Family::square: return 2.0 * x;
    default: return (p_ * std::pow(x, p_ - 1.0) - 1.0) / (p_ * (p_ - 1.0));
  }
}

double PhiFunction::d2(double x) const {
  switch (family_) {
    case Family::xlogx: return 1.0 / x;
    case Family::square: return 2.0;
    default: return std::pow(x, p_ - 2.0);
  }
}

double PhiFunction::d3(double x) const {
  switch (family_) {
    case Family::xlogx: return -1.0 / (x * x);
    case Family::square: return 0.0;
    default: return (p_ - 2.0) * std::pow(x, p_ - 3.0);
  }
}

double PhiFunction::d4(double x) const {
  switch (family_) {
    case Family::xlogx: return 2.0 / (x * x * x);
    case Family::square: return 0.0;
    default: return (p_ - 2.0) * (p_ - 3.0) * std::pow(x, p_ - 4.0);
  }
}

double PhiFunction::inv_d2_second(double x) const {
  switch (family_) {
    case Family::xlogx: return 0.0;   // 1/Phi'' = x
    case Family::square: return 0.0;  // 1/Phi'' = 1/2
    default: return (2.0 - p_) * (1.0 - p_) * std::pow(x, -p_);
  }
}

double PhiFunction::domain_min() const {
  return family_ == Family::square ? -std::numeric_limits<double>::infinity() : 0.0;
}

bool PhiFunction::admissible(const ScalarField& f, double margin) const {
  if (family_ == Family::square) return true;
  return f.values.minCoeff() >= margin;
}

void PhiFunction::require_admissible(const ScalarField& f, double margin) const {
  if (!admissible(f, margin))
    throw std::domain_error("field leaves the domain of Phi (min value " +
                            std::to_string(f.values.minCoeff()) + ")");
}

ScalarField PhiFunction::map(const ScalarField& f,
                             double (PhiFunction::*fn)(double) const) const {
  Eigen::VectorXd v(f.values.size());
  for (int i = 0; i < v.size(); ++i) v[i] = (this->*fn)(f.values[i]);
  return ScalarField(f.grid, std::move(v));
}

PhiFunction phi_suite(const std::string& name, double p) {
  if (name == "xlogx") return PhiFunction::xlogx();
  if (name == "square") return PhiFunction::square();
  if (name == "power") return PhiFunction::power(p);
  throw std::invalid_argument("phi_suite: unknown family '" + name + "'");
}

}  // namespace phient
