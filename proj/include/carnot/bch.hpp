#ifndef CARNOT_BCH_HPP
#define CARNOT_BCH_HPP

#include "carnot/algebra.hpp"

#include <cstdint>
#include <vector>

namespace carnot {

/// One summand of the truncated Dynkin series: coefficient times the
/// right-nested commutator of a word over the two arguments (0 = first,
/// 1 = second). Words of length 1 stand for the bare argument.
struct BchTerm {
  std::vector<uint8_t> word;
  Rational coeff;
};

/// Dynkin commutator series truncated at the given order, with coefficients
/// accumulated per word and identically-vanishing words dropped. Cached.
/// Orders above the cap are rejected (term count grows combinatorially);
/// the cap defaults to 8 and can be raised for larger-step experiments.
inline constexpr int kDefaultBchOrderCap = 8;
int bch_order_cap();
void set_bch_order_cap(int cap);
const std::vector<BchTerm>& bch_terms(int order);

/// z with exp(u)exp(v) = exp(z), exact over any commutative coefficient ring.
/// The series is truncated at the algebra's step; higher terms vanish by
/// nilpotency.
template <class S>
std::vector<S> bch(const StratifiedAlgebra& g, const std::vector<S>& u,
                   const std::vector<S>& v) {
  const int n = g.dim();
  S zero = zero_like(u.at(0));
  std::vector<S> z(static_cast<size_t>(n), zero);
  for (int i = 0; i < n; ++i) z[i] = u[i] + v[i];
  for (const auto& term : bch_terms(g.step())) {
    if (term.word.size() < 2) continue;
    const auto& last = term.word.back() ? v : u;
    std::vector<S> nested = last;
    for (int pos = static_cast<int>(term.word.size()) - 2; pos >= 0; --pos)
      nested = bracket(g, term.word[pos] ? v : u, nested);
    for (int i = 0; i < n; ++i) z[i] = z[i] + nested[i] * term.coeff;
  }
  return z;
}

RatVec bch(const StratifiedAlgebra& g, const RatVec& u, const RatVec& v);

}  // namespace carnot

#endif
