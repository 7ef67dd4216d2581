#ifndef CARNOT_POLY_HPP
#define CARNOT_POLY_HPP

#include "carnot/errors.hpp"
#include "carnot/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace carnot {

/// Ordered variable universe with positive integer weights.
struct VarSet {
  std::vector<std::string> names;
  std::vector<int> weights;

  int size() const { return static_cast<int>(names.size()); }
  bool operator==(const VarSet& o) const {
    return names == o.names && weights == o.weights;
  }
  int index_of(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
  }
};

using VarSetPtr = std::shared_ptr<const VarSet>;

inline VarSetPtr make_vars(std::vector<std::string> names,
                           std::vector<int> weights) {
  if (names.size() != weights.size())
    throw Error(ErrorCode::DimensionMismatch, "variable/weight counts differ");
  VarSet v;
  v.names = std::move(names);
  v.weights = std::move(weights);
  return std::make_shared<const VarSet>(std::move(v));
}

using Exponents = std::vector<int>;

inline int weighted_degree(const Exponents& e, const VarSet& vars) {
  int d = 0;
  for (size_t i = 0; i < e.size(); ++i) d += e[i] * vars.weights[i];
  return d;
}

inline int total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

/// Graded-lexicographic term order: weighted degree first, then the exponent
/// vector itself. Fixed once so every printed polynomial is canonical.
struct GradedLexLess {
  const VarSet* vars = nullptr;
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = weighted_degree(a, *vars);
    int db = weighted_degree(b, *vars);
    if (da != db) return da < db;
    return a < b;
  }
};

template <class T>
T scalar_cast(const Rational& r);
template <>
inline Rational scalar_cast<Rational>(const Rational& r) { return r; }
template <>
inline double scalar_cast<double>(const Rational& r) { return to_double(r); }

std::string format_coeff(const Rational& c);
std::string format_coeff(double c);

/// Sparse multivariate polynomial over a weighted variable set. Coefficient
/// ring S is Rational for all symbolic work, double for sampled data.
/// Zero coefficients are never stored; term order is graded-lex.
template <class S>
class Polynomial {
 public:
  using TermMap = std::map<Exponents, S, GradedLexLess>;

  explicit Polynomial(VarSetPtr vars)
      : vars_(std::move(vars)), terms_(GradedLexLess{vars_.get()}) {}

  static Polynomial constant(VarSetPtr vars, const S& c) {
    Polynomial p(std::move(vars));
    if (!(c == S(0))) p.terms_.emplace(Exponents(static_cast<size_t>(p.nvars()), 0), c);
    return p;
  }

  static Polynomial variable(VarSetPtr vars, int index) {
    Polynomial p(std::move(vars));
    Exponents e(static_cast<size_t>(p.nvars()), 0);
    e[static_cast<size_t>(index)] = 1;
    p.terms_.emplace(std::move(e), S(1));
    return p;
  }

  static Polynomial monomial(VarSetPtr vars, Exponents e, const S& c) {
    Polynomial p(std::move(vars));
    if (!(c == S(0))) p.terms_.emplace(std::move(e), c);
    return p;
  }

  const VarSetPtr& vars() const { return vars_; }
  int nvars() const { return vars_->size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  S constant_term() const {
    Exponents zero(static_cast<size_t>(nvars()), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? S(0) : it->second;
  }

  S coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? S(0) : it->second;
  }

  /// Largest weighted degree among stored terms; -1 for the zero polynomial.
  int wdeg() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, weighted_degree(e, *vars_));
    return d;
  }

  void add_term(const Exponents& e, const S& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!(c == S(0))) terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (it->second == S(0)) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, S(0) - c);
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, S(0) - c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial out(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea);
        for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  Polynomial operator*(const Rational& c) const {
    Polynomial out(vars_);
    S cc = scalar_cast<S>(c);
    if (cc == S(0)) return out;
    for (const auto& [e, coef] : terms_) out.terms_.emplace(e, coef * cc);
    return out;
  }

  Polynomial scaled(const S& c) const {
    Polynomial out(vars_);
    if (c == S(0)) return out;
    for (const auto& [e, coef] : terms_) out.terms_.emplace(e, coef * c);
    return out;
  }

  Polynomial pow(int k) const {
    if (k < 0) throw Error(ErrorCode::BadInput, "negative power");
    Polynomial out = constant(vars_, S(1));
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1) out = out * base;
      base = (k >>= 1) ? base * base : base;
    }
    return out;
  }

  Polynomial derivative(int var) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
      int k = e[static_cast<size_t>(var)];
      if (k == 0) continue;
      Exponents d(e);
      --d[static_cast<size_t>(var)];
      out.add_term(d, c * S(k));
    }
    return out;
  }

  /// Exact composition: variable i is replaced by images[i], all over the
  /// images' (common) variable set.
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    if (static_cast<int>(images.size()) != nvars())
      throw Error(ErrorCode::DimensionMismatch, "substitution map incomplete");
    VarSetPtr target = images.empty() ? vars_ : images[0].vars();
    Polynomial out(target);
    // memoized powers per variable
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](size_t i, int k) -> const Polynomial& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(target, S(1)));
      while (static_cast<int>(cache.size()) <= k)
        cache.push_back(cache.back() * images[i]);
      return cache[static_cast<size_t>(k)];
    };
    for (const auto& [e, c] : terms_) {
      Polynomial term = constant(target, c);
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) term = term * power(i, e[i]);
      out += term;
    }
    return out;
  }

  /// Keeps terms of weighted degree <= k.
  Polynomial truncate_wdeg(int k) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_)
      if (weighted_degree(e, *vars_) <= k) out.terms_.emplace(e, c);
    return out;
  }

  /// Keeps terms of total (unweighted) degree <= k.
  Polynomial truncate_total(int k) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) <= k) out.terms_.emplace(e, c);
    return out;
  }

  /// Drops coefficients with |c| <= tol (numeric cleanup).
  Polynomial pruned(double tol) const {
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_)
      if (std::abs(to_double_value(c)) > tol) out.terms_.emplace(e, c);
    return out;
  }

  template <class T>
  T eval(const std::vector<T>& point) const {
    if (static_cast<int>(point.size()) != nvars())
      throw Error(ErrorCode::DimensionMismatch, "evaluation point size");
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T term = scalar_cast_value<T>(c);
      for (size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) term = term * point[i];
      acc = acc + term;
    }
    return acc;
  }

  bool operator==(const Polynomial& o) const {
    return *vars_ == *o.vars_ &&
           std::equal(terms_.begin(), terms_.end(), o.terms_.begin(),
                      o.terms_.end(),
                      [](const auto& a, const auto& b) {
                        return a.first == b.first && a.second == b.second;
                      });
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Canonical text form, ascending graded-lex, rationals as "p/q".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      std::string mono = monomial_str(e);
      bool neg = is_negative(c);
      S mag = neg ? S(0) - c : c;
      std::string cs = format_coeff(mag);
      std::string body;
      if (mono.empty())
        body = cs;
      else if (mag == S(1))
        body = mono;
      else
        body = cs + "*" + mono;
      if (first) {
        out += neg ? "-" + body : body;
        first = false;
      } else {
        out += neg ? " - " + body : " + " + body;
      }
    }
    return out;
  }

 private:
  template <class T>
  static T scalar_cast_value(const S& c) {
    if constexpr (std::is_same_v<T, S>)
      return c;
    else
      return static_cast<T>(to_double_value(c));
  }
  static double to_double_value(const Rational& r) { return to_double(r); }
  static double to_double_value(double d) { return d; }
  static bool is_negative(const Rational& c) { return c < 0; }
  static bool is_negative(double c) { return c < 0; }

  std::string monomial_str(const Exponents& e) const {
    std::string out;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += vars_->names[i];
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
  }

  void check_same(const Polynomial& o) const {
    if (!(*vars_ == *o.vars_))
      throw Error(ErrorCode::DimensionMismatch,
                  "polynomials over different variable universes");
  }

  VarSetPtr vars_;
  TermMap terms_;
};

using Poly = Polynomial<Rational>;
using PolyD = Polynomial<double>;

inline PolyD to_double_poly(const Poly& p) {
  PolyD out(p.vars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, to_double(c));
  return out;
}

/// Enumerates exponent vectors of weighted degree <= k, graded-lex ascending.
std::vector<Exponents> monomials_up_to_wdeg(const VarSet& vars, int k);

}  // namespace carnot

#endif
