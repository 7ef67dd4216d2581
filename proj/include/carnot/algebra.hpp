#ifndef CARNOT_ALGEBRA_HPP
#define CARNOT_ALGEBRA_HPP

#include "carnot/errors.hpp"
#include "carnot/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace carnot {

/// Raw description of a graded Lie algebra, as parsed from input. Brackets may
/// be given in one orientation only; the antisymmetric closure is automatic.
struct AlgebraInput {
  std::vector<std::string> names;
  std::vector<int> weights;
  struct Bracket {
    int left, right;                              // basis indices
    std::vector<std::pair<int, Rational>> terms;  // [left,right] = sum c_k e_k
  };
  std::vector<Bracket> brackets;
};

/// A validated stratified nilpotent Lie algebra over a fixed weighted basis.
/// Immutable after construction; operations on elements are free functions.
class StratifiedAlgebra {
 public:
  /// Checks antisymmetry closure, grading, Jacobi, and layer generation.
  /// Throws Error on violation.
  static StratifiedAlgebra validate(const AlgebraInput& raw);

  int dim() const { return dim_; }
  int step() const { return step_; }
  int weight(int i) const { return weights_[i]; }
  const std::vector<int>& weights() const { return weights_; }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  /// Sparse row of structure constants: [e_i, e_j] = sum_k c e_k.
  const std::vector<std::pair<int, Rational>>& bracket_row(int i, int j) const {
    return table_[i][j];
  }

  /// Indices of basis vectors in layer w, ascending.
  std::vector<int> layer(int w) const;

  /// Same algebra with basis reordered so that new slot s holds old basis
  /// vector order[s].
  StratifiedAlgebra permuted(const std::vector<int>& order) const;

  bool operator==(const StratifiedAlgebra& other) const;

 private:
  StratifiedAlgebra() = default;

  int dim_ = 0;
  int step_ = 0;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  // table_[i][j] = list of (k, c_{ij}^k), antisymmetrically closed
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> table_;
};

template <class S>
S zero_like(const S& proto) {
  return proto * Rational(0);
}

inline double zero_like(const double&) { return 0.0; }
inline Rational zero_like(const Rational&) { return Rational(0); }

/// [a, b] expanded bilinearly through the structure constants. Works over any
/// commutative coefficient ring S (rationals, doubles, polynomials).
template <class S>
std::vector<S> bracket(const StratifiedAlgebra& g, const std::vector<S>& a,
                       const std::vector<S>& b) {
  const int n = g.dim();
  S zero = zero_like(a.empty() ? b.at(0) : a[0]);
  std::vector<S> out(static_cast<size_t>(n), zero);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& row = g.bracket_row(i, j);
      if (row.empty()) continue;
      S prod = a[i] * b[j];
      for (const auto& [k, c] : row) out[k] = out[k] + prod * c;
    }
  }
  return out;
}

/// delta_lambda on the algebra: coefficient of a layer-w vector scales by
/// lambda^w. S may be a polynomial ring, making lambda formal.
template <class S>
std::vector<S> dilate(const StratifiedAlgebra& g, const std::vector<S>& a,
                      const S& lambda) {
  std::vector<S> out = a;
  for (int i = 0; i < g.dim(); ++i) {
    S p = lambda;
    for (int k = 1; k < g.weight(i); ++k) p = p * lambda;
    out[i] = a[i] * p;
  }
  return out;
}

RatVec bracket(const StratifiedAlgebra& g, const RatVec& a, const RatVec& b);
RatVec dilate(const StratifiedAlgebra& g, const RatVec& a, const Rational& lambda);

}  // namespace carnot

#endif
