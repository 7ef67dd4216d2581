#ifndef CARNOT_FIELD_HPP
#define CARNOT_FIELD_HPP

#include "carnot/jet.hpp"
#include "carnot/poly.hpp"

#include <string>
#include <vector>

namespace carnot {

enum class Invariance { none, left, right, projected };

/// First-order derivation with exact polynomial coefficients,
/// X = sum_i p_i(coords) d/dcoord_i.
struct VectorField {
  VarSetPtr vars;
  std::vector<Poly> comp;
  Invariance invariance = Invariance::none;
  int hom_degree = -1;  // homogeneous degree under dilations, -1 if untagged
  std::string name;

  bool is_zero() const {
    for (const auto& p : comp)
      if (!p.is_zero()) return false;
    return true;
  }

  /// X f for polynomial f, exact.
  Poly apply(const Poly& f) const {
    Poly out(vars);
    for (size_t i = 0; i < comp.size(); ++i) {
      if (comp[i].is_zero()) continue;
      out += comp[i] * f.derivative(static_cast<int>(i));
    }
    return out;
  }

  /// X applied to truncated jet data; the result is one order lower.
  JetD apply(const JetD& j) const {
    if (j.order() == 0)
      throw Error(ErrorCode::OrderExhausted, "field applied to order-0 jet");
    const int r = j.order() - 1;
    JetD out(j.vars(), j.center(), r);
    for (size_t i = 0; i < comp.size(); ++i) {
      if (comp[i].is_zero()) continue;
      JetD ci = jet_of_polynomial(to_double_poly(comp[i]), j.center(), r);
      JetD dji = j.derivative(static_cast<int>(i));
      JetD prod = ci * dji;
      for (const auto& [e, c] : prod.terms()) out.add_term(e, c);
    }
    return out;
  }

  /// [X, Y] as vector fields: sum_i (X q_i - Y p_i) d/dx_i.
  VectorField commutator(const VectorField& other) const {
    VectorField out{vars, {}, Invariance::none, -1, ""};
    out.comp.reserve(comp.size());
    for (size_t i = 0; i < comp.size(); ++i)
      out.comp.push_back(apply(other.comp[i]) - other.apply(comp[i]));
    return out;
  }

  std::string str() const {
    std::string out;
    for (size_t i = 0; i < comp.size(); ++i) {
      const Poly& p = comp[i];
      if (p.is_zero()) continue;
      std::string d = "d/d" + vars->names[i];
      std::string body;
      bool lead_minus = false;
      if (p.is_constant() && p.constant_term() == 1) {
        body = d;
      } else if (p.is_constant() && p.constant_term() == -1) {
        body = d;
        lead_minus = true;
      } else if (p.terms().size() == 1) {
        std::string ps = p.str();
        if (!ps.empty() && ps[0] == '-') {
          lead_minus = true;
          ps = ps.substr(1);
        }
        body = ps + " " + d;
      } else {
        body = "(" + p.str() + ") " + d;
      }
      if (out.empty())
        out += lead_minus ? "-" + body : body;
      else
        out += lead_minus ? " - " + body : " + " + body;
    }
    return out.empty() ? "0" : out;
  }
};

}  // namespace carnot

#endif
