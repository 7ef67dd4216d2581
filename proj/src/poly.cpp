#include "carnot/poly.hpp"

#include <functional>

namespace carnot {

std::string format_coeff(const Rational& c) {
  if (is_integer(c)) return to_string(c);
  return "(" + to_string(c) + ")";
}

std::string format_coeff(double c) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", c);
  return buf;
}

std::vector<Exponents> monomials_up_to_wdeg(const VarSet& vars, int k) {
  std::vector<Exponents> out;
  Exponents e(static_cast<size_t>(vars.size()), 0);
  // depth-first enumeration; sorted into canonical order afterwards
  std::function<void(int, int)> rec = [&](int var, int budget) {
    if (var == vars.size()) {
      out.push_back(e);
      return;
    }
    int w = vars.weights[static_cast<size_t>(var)];
    for (int p = 0; p * w <= budget; ++p) {
      e[static_cast<size_t>(var)] = p;
      rec(var + 1, budget - p * w);
    }
    e[static_cast<size_t>(var)] = 0;
  };
  rec(0, k);
  std::sort(out.begin(), out.end(), GradedLexLess{&vars});
  return out;
}

}  // namespace carnot
