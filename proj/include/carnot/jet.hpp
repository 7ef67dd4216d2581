#ifndef CARNOT_JET_HPP
#define CARNOT_JET_HPP

#include "carnot/poly.hpp"

#include <vector>

namespace carnot {

/// Truncated Taylor data of a function at a point: coefficients of the shifted
/// monomials (x - center)^e for all total (unweighted) orders <= order.
/// Arithmetic is the truncated ring structure; differentiation drops the order
/// by one.
template <class S>
class Jet {
 public:
  Jet(VarSetPtr vars, std::vector<S> center, int order)
      : vars_(std::move(vars)), center_(std::move(center)), order_(order) {
    if (order_ < 0) throw Error(ErrorCode::BadInput, "negative jet order");
    if (static_cast<int>(center_.size()) != vars_->size())
      throw Error(ErrorCode::DimensionMismatch, "jet center size");
  }

  static Jet constant(VarSetPtr vars, const std::vector<S>& center, int order,
                      const S& c) {
    Jet j(vars, center, order);
    if (!(c == S(0))) j.terms_.emplace(Exponents(j.center_.size(), 0), c);
    return j;
  }

  /// Jet of the coordinate function x_i: value center[i], slope 1.
  static Jet coordinate(VarSetPtr vars, const std::vector<S>& center, int order,
                        int i) {
    Jet j = constant(vars, center, order, center[static_cast<size_t>(i)]);
    if (order >= 1) {
      Exponents e(j.center_.size(), 0);
      e[static_cast<size_t>(i)] = 1;
      j.terms_.emplace(std::move(e), S(1));
    }
    return j;
  }

  const VarSetPtr& vars() const { return vars_; }
  const std::vector<S>& center() const { return center_; }
  int order() const { return order_; }
  const std::map<Exponents, S>& terms() const { return terms_; }

  /// Value of the underlying function at the center.
  S value() const {
    auto it = terms_.find(Exponents(center_.size(), 0));
    return it == terms_.end() ? S(0) : it->second;
  }

  S coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const Exponents& e, const S& c) {
    if (total_degree(e) > order_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!(c == S(0))) terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (it->second == S(0)) terms_.erase(it);
    }
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    Jet out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend Jet operator-(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    Jet out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, S(0) - c);
    return out;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    Jet out(a.vars_, a.center_, a.order_);
    for (const auto& [ea, ca] : a.terms_) {
      if (total_degree(ea) > a.order_) continue;
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea);
        for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  Jet scaled(const S& c) const {
    Jet out(vars_, center_, order_);
    if (c == S(0)) return out;
    for (const auto& [e, coef] : terms_) out.terms_.emplace(e, coef * c);
    return out;
  }

  /// d/dx_i; the result is one order lower.
  Jet derivative(int var) const {
    if (order_ == 0)
      throw Error(ErrorCode::OrderExhausted, "cannot differentiate order-0 jet");
    Jet out(vars_, center_, order_ - 1);
    for (const auto& [e, c] : terms_) {
      int k = e[static_cast<size_t>(var)];
      if (k == 0) continue;
      Exponents d(e);
      --d[static_cast<size_t>(var)];
      out.add_term(d, c * S(k));
    }
    return out;
  }

  Jet truncated(int new_order) const {
    Jet out(vars_, center_, new_order);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
  }

  /// Integer power with truncation.
  Jet pow(int k) const {
    Jet out = constant(vars_, center_, order_, S(1));
    for (int i = 0; i < k; ++i) out = out * (*this);
    return out;
  }

 private:
  void check_compatible(const Jet& o) const {
    if (!(*vars_ == *o.vars_) || order_ != o.order_ || !(center_ == o.center_))
      throw Error(ErrorCode::DimensionMismatch, "incompatible jets");
  }

  VarSetPtr vars_;
  std::vector<S> center_;
  int order_;
  std::map<Exponents, S> terms_;
};

/// Jet of a polynomial at a center: expand p(center + xi) and truncate.
template <class S>
Jet<S> jet_of_polynomial(const Polynomial<S>& p, const std::vector<S>& center,
                         int order) {
  Jet<S> out(p.vars(), center, order);
  const int n = p.nvars();
  // shifted coordinate jets, then plug into the monomials
  std::vector<Jet<S>> coord;
  coord.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    coord.push_back(Jet<S>::coordinate(p.vars(), center, order, i));
  for (const auto& [e, c] : p.terms()) {
    Jet<S> term = Jet<S>::constant(p.vars(), center, order, c);
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) term = term * coord[i];
    for (const auto& [ee, cc] : term.terms()) out.add_term(ee, cc);
  }
  return out;
}

using JetD = Jet<double>;
using JetQ = Jet<Rational>;

}  // namespace carnot

#endif
