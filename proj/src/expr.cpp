#include "carnot/expr.hpp"

#include <cctype>
#include <cmath>

namespace carnot {

namespace {
ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

ExprPtr Expr::constant(Rational c) {
  Expr e;
  e.kind_ = Kind::Const;
  e.value_ = std::move(c);
  return make(std::move(e));
}

ExprPtr Expr::variable(int index) {
  Expr e;
  e.kind_ = Kind::Var;
  e.var_ = index;
  return make(std::move(e));
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind_ = Kind::Add;
  e.a_ = std::move(a);
  e.b_ = std::move(b);
  return make(std::move(e));
}

ExprPtr Expr::mul(ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind_ = Kind::Mul;
  e.a_ = std::move(a);
  e.b_ = std::move(b);
  return make(std::move(e));
}

ExprPtr Expr::pow(ExprPtr base, int k) {
  if (k < 0) throw Error(ErrorCode::ParseError, "negative exponent");
  Expr e;
  e.kind_ = Kind::Pow;
  e.a_ = std::move(base);
  e.exponent_ = k;
  return make(std::move(e));
}

ExprPtr Expr::sin(ExprPtr a) {
  Expr e;
  e.kind_ = Kind::Sin;
  e.a_ = std::move(a);
  return make(std::move(e));
}

ExprPtr Expr::cos(ExprPtr a) {
  Expr e;
  e.kind_ = Kind::Cos;
  e.a_ = std::move(a);
  return make(std::move(e));
}

ExprPtr Expr::exp(ExprPtr a) {
  Expr e;
  e.kind_ = Kind::Exp;
  e.a_ = std::move(a);
  return make(std::move(e));
}

bool Expr::is_polynomial() const {
  switch (kind_) {
    case Kind::Const:
    case Kind::Var:
      return true;
    case Kind::Add:
    case Kind::Mul:
      return a_->is_polynomial() && b_->is_polynomial();
    case Kind::Pow:
      return a_->is_polynomial();
    default:
      return false;
  }
}

double Expr::eval(const std::vector<double>& point) const {
  switch (kind_) {
    case Kind::Const: return to_double(value_);
    case Kind::Var: return point.at(static_cast<size_t>(var_));
    case Kind::Add: return a_->eval(point) + b_->eval(point);
    case Kind::Mul: return a_->eval(point) * b_->eval(point);
    case Kind::Pow: return std::pow(a_->eval(point), exponent_);
    case Kind::Sin: return std::sin(a_->eval(point));
    case Kind::Cos: return std::cos(a_->eval(point));
    case Kind::Exp: return std::exp(a_->eval(point));
  }
  return 0;
}

Poly Expr::to_polynomial(const VarSetPtr& vars) const {
  switch (kind_) {
    case Kind::Const: return Poly::constant(vars, value_);
    case Kind::Var: return Poly::variable(vars, var_);
    case Kind::Add: return a_->to_polynomial(vars) + b_->to_polynomial(vars);
    case Kind::Mul: return a_->to_polynomial(vars) * b_->to_polynomial(vars);
    case Kind::Pow: return a_->to_polynomial(vars).pow(exponent_);
    default:
      throw Error(ErrorCode::BadInput, "expression is not polynomial");
  }
}

namespace {

// composes an analytic series with a jet: f(u) = f(u0) + f'(u0) N + ... where
// N is the nilpotent part of u
JetD analytic_jet(const JetD& u, double f0, const std::vector<double>& derivs) {
  JetD n = u;
  n.add_term(Exponents(static_cast<size_t>(u.vars()->size()), 0), -u.value());
  JetD out = JetD::constant(u.vars(), u.center(), u.order(), f0);
  JetD npow = JetD::constant(u.vars(), u.center(), u.order(), 1.0);
  double fact = 1.0;
  for (int k = 1; k <= u.order(); ++k) {
    npow = npow * n;
    fact *= k;
    out = out + npow.scaled(derivs[static_cast<size_t>(k - 1)] / fact);
  }
  return out;
}

}  // namespace

JetD Expr::jet(const VarSetPtr& vars, const std::vector<double>& center,
               int order) const {
  switch (kind_) {
    case Kind::Const:
      return JetD::constant(vars, center, order, to_double(value_));
    case Kind::Var:
      return JetD::coordinate(vars, center, order, var_);
    case Kind::Add:
      return a_->jet(vars, center, order) + b_->jet(vars, center, order);
    case Kind::Mul:
      return a_->jet(vars, center, order) * b_->jet(vars, center, order);
    case Kind::Pow:
      return a_->jet(vars, center, order).pow(exponent_);
    case Kind::Sin: {
      JetD u = a_->jet(vars, center, order);
      double u0 = u.value();
      std::vector<double> d;
      for (int k = 1; k <= order; ++k) {
        switch (k % 4) {
          case 0: d.push_back(std::sin(u0)); break;
          case 1: d.push_back(std::cos(u0)); break;
          case 2: d.push_back(-std::sin(u0)); break;
          default: d.push_back(-std::cos(u0)); break;
        }
      }
      return analytic_jet(u, std::sin(u0), d);
    }
    case Kind::Cos: {
      JetD u = a_->jet(vars, center, order);
      double u0 = u.value();
      std::vector<double> d;
      for (int k = 1; k <= order; ++k) {
        switch (k % 4) {
          case 0: d.push_back(std::cos(u0)); break;
          case 1: d.push_back(-std::sin(u0)); break;
          case 2: d.push_back(-std::cos(u0)); break;
          default: d.push_back(std::sin(u0)); break;
        }
      }
      return analytic_jet(u, std::cos(u0), d);
    }
    case Kind::Exp: {
      JetD u = a_->jet(vars, center, order);
      double e0 = std::exp(u.value());
      return analytic_jet(u, e0, std::vector<double>(static_cast<size_t>(order), e0));
    }
  }
  throw Error(ErrorCode::BadInput, "unreachable expression kind");
}

std::string Expr::str(const VarSet& vars) const {
  switch (kind_) {
    case Kind::Const: return to_string(value_);
    case Kind::Var: return vars.names[static_cast<size_t>(var_)];
    case Kind::Add: return "(" + a_->str(vars) + " + " + b_->str(vars) + ")";
    case Kind::Mul: return "(" + a_->str(vars) + "*" + b_->str(vars) + ")";
    case Kind::Pow: return a_->str(vars) + "^" + std::to_string(exponent_);
    case Kind::Sin: return "sin(" + a_->str(vars) + ")";
    case Kind::Cos: return "cos(" + a_->str(vars) + ")";
    case Kind::Exp: return "exp(" + a_->str(vars) + ")";
  }
  return "?";
}

namespace {

struct Parser {
  const std::string& text;
  const VarSet& vars;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& why) {
    throw Error(ErrorCode::ParseError,
                why + " at position " + std::to_string(pos) + " in \"" + text + "\"");
  }

  ExprPtr parse_sum() {
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    ExprPtr acc = parse_product();
    if (neg) acc = Expr::mul(Expr::constant(rat(-1)), acc);
    while (true) {
      if (eat('+'))
        acc = Expr::add(acc, parse_product());
      else if (eat('-'))
        acc = Expr::add(acc, Expr::mul(Expr::constant(rat(-1)), parse_product()));
      else
        break;
    }
    return acc;
  }

  ExprPtr parse_product() {
    ExprPtr acc = parse_power();
    while (true) {
      if (eat('*')) {
        acc = Expr::mul(acc, parse_power());
      } else if (eat('/')) {
        ExprPtr d = parse_power();
        if (d->kind() != Expr::Kind::Const || d->value() == 0)
          fail("division only by nonzero constants");
        acc = Expr::mul(acc, Expr::constant(Rational(1) / d->value()));
      } else {
        break;
      }
    }
    return acc;
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (eat('^')) {
      skip_ws();
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (start == pos) fail("expected integer exponent");
      return Expr::pow(base, std::stoi(text.substr(start, pos - start)));
    }
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      ExprPtr inner = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
        ++pos;
      return Expr::constant(parse_rational(text.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      if (name == "sin" || name == "cos" || name == "exp") {
        if (!eat('(')) fail("expected '(' after " + name);
        ExprPtr inner = parse_sum();
        if (!eat(')')) fail("expected ')'");
        if (name == "sin") return Expr::sin(inner);
        if (name == "cos") return Expr::cos(inner);
        return Expr::exp(inner);
      }
      int idx = vars.index_of(name);
      if (idx < 0) fail("unknown variable '" + name + "'");
      return Expr::variable(idx);
    }
    fail("unexpected character");
  }
};

}  // namespace

ExprPtr parse_expression(const std::string& text, const VarSet& vars) {
  Parser p{text, vars};
  ExprPtr e = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

}  // namespace carnot
