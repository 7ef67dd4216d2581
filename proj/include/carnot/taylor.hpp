#ifndef CARNOT_TAYLOR_HPP
#define CARNOT_TAYLOR_HPP

#include "carnot/expr.hpp"
#include "carnot/linsolve.hpp"
#include "carnot/quotient.hpp"
#include "carnot/word.hpp"

#include <optional>

namespace carnot {

struct TaylorOptions {
  /// Constraint words on G range over the full adapted basis by default;
  /// horizontal-only word sets are available for comparison.
  bool horizontal_words_only = false;
  /// Additionally solve the intrinsic system on M and compare.
  bool cross_check = false;
  double numeric_tol = 1e-9;
};

template <class S>
struct TaylorResult {
  Polynomial<S> polynomial;  // on M for quotient solves, on G otherwise
  RatVec center;
  int degree = 0;
  enum class Space { G, M };
  Space space = Space::G;

  // audit trail of the linear solve
  int constraint_count = 0;
  int unknown_count = 0;
  int rank = 0;

  // quotient solves: the Taylor polynomial on G before restriction
  std::optional<Polynomial<S>> lifted;

  // intrinsic cross-check results (cross_check mode)
  bool cross_checked = false;
  bool cross_rank_full = false;
  bool cross_match = false;
  int cross_rank = 0;
  int cross_unknowns = 0;

  TaylorResult() : polynomial(make_vars({}, {})) {}
  explicit TaylorResult(Polynomial<S> p) : polynomial(std::move(p)) {}
};

/// Exact value of X^I m at the given center for every word/monomial pair;
/// rows follow `words`, columns follow `monomials`.
RatMat constraint_matrix(const std::vector<VectorField>& frame,
                         const std::vector<Word>& words,
                         const std::vector<Exponents>& monomials,
                         const VarSetPtr& vars, const RatVec& center);

/// McLaurin polynomial of homogeneous degree k on G: the unique polynomial of
/// weighted degree <= k with X^I P(0) = X^I f(0) for all words d(I) <= k.
/// Overdetermination is resolved by an exact consistency check.
TaylorResult<Rational> mclaurin_on_G(const CarnotGroup& G, const Poly& f, int k,
                                     const TaylorOptions& opts = {});
TaylorResult<double> mclaurin_on_G(const CarnotGroup& G, const JetD& f_jet, int k,
                                   const TaylorOptions& opts = {});

/// Taylor polynomial at g0 via translation to the identity and back.
TaylorResult<Rational> taylor_on_G(const CarnotGroup& G, const Poly& f,
                                   const RatVec& g0, int k,
                                   const TaylorOptions& opts = {});
TaylorResult<double> taylor_on_G(const CarnotGroup& G, const ExprPtr& f,
                                 const RatVec& g0, int k,
                                 const TaylorOptions& opts = {});

/// Intrinsic Taylor polynomial on M: lift, solve on G at iota(q), verify the
/// result does not depend on the subgroup coordinates, restrict to the slice.
/// cross_check additionally solves the intrinsic horizontal system at q and
/// compares (rank deficiencies there are reported, not fatal).
TaylorResult<Rational> taylor_on_M(const QuotientModel& M, const Poly& f,
                                   const RatVec& q, int k,
                                   const TaylorOptions& opts = {});
TaylorResult<double> taylor_on_M(const QuotientModel& M, const ExprPtr& f,
                                 const RatVec& q, int k,
                                 const TaylorOptions& opts = {});

struct RepIndependenceReport {
  bool ok = true;
  int trials = 0;
  RatVec offending_h;  // H-coordinates of the first mismatch, if any
};

/// Recomputes the G-side Taylor polynomial at h * iota(q) for random rational
/// h in H and checks exact equality.
RepIndependenceReport representative_independence_check(const QuotientModel& M,
                                                        const Poly& f,
                                                        const RatVec& q, int k,
                                                        int trials,
                                                        uint64_t seed);

struct HInvarianceReport {
  bool ok = true;
  int generator = -1;   // offending subalgebra slot
  std::string residual; // canonical form of the nonzero result
};

/// Applies the right-invariant fields of the subalgebra generators to a
/// polynomial on G; all results must vanish identically.
HInvarianceReport h_invariance_check(const QuotientModel& M, const Poly& p_on_G);

}  // namespace carnot

#endif
