#ifndef CARNOT_EXPR_HPP
#define CARNOT_EXPR_HPP

#include "carnot/jet.hpp"
#include "carnot/poly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace carnot {

/// Expression tree for smooth test functions: rational constants, coordinate
/// variables, +, *, integer powers, sin, cos, exp. Purely polynomial trees
/// stay in exact arithmetic end to end.
class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  enum class Kind { Const, Var, Add, Mul, Pow, Sin, Cos, Exp };

  static ExprPtr constant(Rational c);
  static ExprPtr variable(int index);
  static ExprPtr add(ExprPtr a, ExprPtr b);
  static ExprPtr mul(ExprPtr a, ExprPtr b);
  static ExprPtr pow(ExprPtr base, int k);
  static ExprPtr sin(ExprPtr a);
  static ExprPtr cos(ExprPtr a);
  static ExprPtr exp(ExprPtr a);

  Kind kind() const { return kind_; }
  const Rational& value() const { return value_; }
  int var() const { return var_; }
  int exponent() const { return exponent_; }
  const ExprPtr& left() const { return a_; }
  const ExprPtr& right() const { return b_; }

  bool is_polynomial() const;

  double eval(const std::vector<double>& point) const;

  /// Exact conversion; throws BadInput on transcendental nodes.
  Poly to_polynomial(const VarSetPtr& vars) const;

  JetD jet(const VarSetPtr& vars, const std::vector<double>& center,
           int order) const;

  std::string str(const VarSet& vars) const;

 private:
  Kind kind_;
  Rational value_;
  int var_ = -1;
  int exponent_ = 0;
  ExprPtr a_, b_;
};

/// Infix parser for the CLI surface syntax: `+ - * / ^`, `sin cos exp`,
/// rational and decimal literals, variables by coordinate name. Division is
/// restricted to constant divisors.
ExprPtr parse_expression(const std::string& text, const VarSet& vars);

}  // namespace carnot

#endif
