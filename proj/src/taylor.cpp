#include "carnot/taylor.hpp"

#include "carnot/rng.hpp"

#include <functional>
#include <map>

namespace carnot {

namespace {

// Applies X^I to a payload for every word, reusing the suffix X^{I[1:]}:
// words arrive sorted by length, so each suffix is already in the cache.
template <class P, class Apply>
std::vector<P> word_values(const std::vector<Word>& words, const P& base,
                           Apply&& apply) {
  std::map<std::vector<int>, P> cache;
  std::vector<P> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    if (w.letters.empty()) {
      cache.emplace(w.letters, base);
      out.push_back(base);
      continue;
    }
    std::vector<int> suffix(w.letters.begin() + 1, w.letters.end());
    const P& tail = cache.at(suffix);
    P value = apply(w.letters.front(), tail);
    out.push_back(value);
    cache.emplace(w.letters, std::move(value));
  }
  return out;
}

Poly monomial_poly(const VarSetPtr& vars, const Exponents& e) {
  return Poly::monomial(vars, e, Rational(1));
}

std::vector<Rational> to_vec(const RatVec& v) {
  return std::vector<Rational>(v.data(), v.data() + v.size());
}

}  // namespace

RatMat constraint_matrix(const std::vector<VectorField>& frame,
                         const std::vector<Word>& words,
                         const std::vector<Exponents>& monomials,
                         const VarSetPtr& vars, const RatVec& center) {
  RatMat a(static_cast<int>(words.size()), static_cast<int>(monomials.size()));
  std::vector<Rational> point = to_vec(center);
  for (size_t col = 0; col < monomials.size(); ++col) {
    Poly m = monomial_poly(vars, monomials[col]);
    auto values = word_values(words, m, [&](int letter, const Poly& p) {
      return frame[static_cast<size_t>(letter)].apply(p);
    });
    for (size_t row = 0; row < words.size(); ++row)
      a(static_cast<int>(row), static_cast<int>(col)) =
          values[row].eval<Rational>(point);
  }
  return a;
}

namespace {

struct GSystem {
  std::vector<Word> words;
  std::vector<Exponents> monomials;
  RatMat a;
};

GSystem g_system(const CarnotGroup& G, int k, bool horizontal_only) {
  GSystem sys;
  std::vector<int> weights = G.algebra().weights();
  sys.words = enumerate_words(weights, k, horizontal_only);
  sys.monomials = monomials_up_to_wdeg(*G.coords(), k);
  RatVec zero = RatVec::Constant(G.dim(), Rational(0));
  sys.a = constraint_matrix(G.left_frame(), sys.words, sys.monomials, G.coords(), zero);
  return sys;
}

template <class S>
Polynomial<S> assemble(const VarSetPtr& vars,
                       const std::vector<Exponents>& monomials,
                       const std::vector<S>& coeffs) {
  Polynomial<S> p(vars);
  for (size_t i = 0; i < monomials.size(); ++i) p.add_term(monomials[i], coeffs[i]);
  return p;
}

}  // namespace

TaylorResult<Rational> mclaurin_on_G(const CarnotGroup& G, const Poly& f, int k,
                                     const TaylorOptions& opts) {
  GSystem sys = g_system(G, k, opts.horizontal_words_only);
  std::vector<Rational> zero(static_cast<size_t>(G.dim()), Rational(0));
  auto derivs = word_values(sys.words, f, [&](int letter, const Poly& p) {
    return G.left_field(letter).apply(p);
  });
  RatVec b(static_cast<int>(sys.words.size()));
  for (size_t i = 0; i < sys.words.size(); ++i)
    b[static_cast<int>(i)] = derivs[i].eval<Rational>(zero);

  auto solved = solve_exact(sys.a, b);
  if (!solved.consistent)
    throw Error(ErrorCode::Inconsistent, "word-redundant Taylor system inconsistent");
  if (!solved.unique)
    throw Error(ErrorCode::RankDeficient,
                "Taylor system rank " + std::to_string(solved.rank) + " < " +
                    std::to_string(sys.monomials.size()) + " unknowns");

  TaylorResult<Rational> res(assemble<Rational>(
      G.coords(), sys.monomials,
      std::vector<Rational>(solved.solution.data(),
                            solved.solution.data() + solved.solution.size())));
  res.center = RatVec::Constant(G.dim(), Rational(0));
  res.degree = k;
  res.constraint_count = static_cast<int>(sys.words.size());
  res.unknown_count = static_cast<int>(sys.monomials.size());
  res.rank = solved.rank;
  return res;
}

TaylorResult<double> mclaurin_on_G(const CarnotGroup& G, const JetD& f_jet, int k,
                                   const TaylorOptions& opts) {
  if (f_jet.order() < k)
    throw Error(ErrorCode::BadInput, "jet order below Taylor degree");
  GSystem sys = g_system(G, k, opts.horizontal_words_only);
  auto derivs = word_values(sys.words, f_jet, [&](int letter, const JetD& j) {
    return G.left_field(letter).apply(j);
  });
  Eigen::VectorXd b(static_cast<int>(sys.words.size()));
  for (size_t i = 0; i < sys.words.size(); ++i)
    b[static_cast<int>(i)] = derivs[i].value();

  int exact_rank = rref(sys.a).rank;
  if (exact_rank < static_cast<int>(sys.monomials.size()))
    throw Error(ErrorCode::RankDeficient,
                "Taylor system rank " + std::to_string(exact_rank) + " < " +
                    std::to_string(sys.monomials.size()) + " unknowns");
  auto solved = solve_numeric(sys.a, b, opts.numeric_tol);
  if (!solved.consistent)
    throw Error(ErrorCode::Inconsistent,
                "numeric Taylor system residual " + std::to_string(solved.residual));

  std::vector<double> coeffs(solved.solution.data(),
                             solved.solution.data() + solved.solution.size());
  TaylorResult<double> res(assemble<double>(G.coords(), sys.monomials, coeffs));
  res.center = RatVec::Constant(G.dim(), Rational(0));
  res.degree = k;
  res.constraint_count = static_cast<int>(sys.words.size());
  res.unknown_count = static_cast<int>(sys.monomials.size());
  res.rank = exact_rank;
  return res;
}

TaylorResult<Rational> taylor_on_G(const CarnotGroup& G, const Poly& f,
                                   const RatVec& g0, int k,
                                   const TaylorOptions& opts) {
  auto translation = G.left_translation(g0);        // coords of g0 * u
  Poly shifted = f.substitute(translation);         // f o L_{g0}
  TaylorResult<Rational> at0 = mclaurin_on_G(G, shifted, k, opts);
  RatVec g0inv(g0.size());
  {
    auto inv = G.inverse(to_vec(g0));
    for (int i = 0; i < g0.size(); ++i) g0inv[i] = inv[static_cast<size_t>(i)];
  }
  auto back = G.left_translation(g0inv);            // coords of g0^{-1} * u
  TaylorResult<Rational> res(at0.polynomial.substitute(back));
  res.center = g0;
  res.degree = k;
  res.constraint_count = at0.constraint_count;
  res.unknown_count = at0.unknown_count;
  res.rank = at0.rank;
  return res;
}

namespace {

// jet at the identity of f o L_{g0}: compose the jet of f at g0 with the
// zero-constant polynomial map psi(u) = coords(g0 * u) - g0
JetD translated_jet(const CarnotGroup& G, const ExprPtr& f, const RatVec& g0,
                    int order) {
  auto g0d = G.to_doubles(g0);
  JetD at_g0 = f->jet(G.coords(), g0d, order);
  auto translation = G.left_translation(g0);
  std::vector<double> zero(static_cast<size_t>(G.dim()), 0.0);
  std::vector<JetD> psi;
  for (int i = 0; i < G.dim(); ++i) {
    PolyD t = to_double_poly(translation[static_cast<size_t>(i)]);
    JetD ji = jet_of_polynomial(t, zero, order);
    ji.add_term(Exponents(static_cast<size_t>(G.dim()), 0), -g0d[static_cast<size_t>(i)]);
    psi.push_back(std::move(ji));
  }
  JetD out(G.coords(), zero, order);
  for (const auto& [e, c] : at_g0.terms()) {
    JetD term = JetD::constant(G.coords(), zero, order, c);
    for (size_t i = 0; i < e.size(); ++i)
      for (int p = 0; p < e[i]; ++p) term = term * psi[i];
    for (const auto& [ee, cc] : term.terms()) out.add_term(ee, cc);
  }
  return out;
}

}  // namespace

TaylorResult<double> taylor_on_G(const CarnotGroup& G, const ExprPtr& f,
                                 const RatVec& g0, int k,
                                 const TaylorOptions& opts) {
  JetD j0 = translated_jet(G, f, g0, k);
  TaylorResult<double> at0 = mclaurin_on_G(G, j0, k, opts);
  RatVec g0inv(g0.size());
  {
    auto inv = G.inverse(to_vec(g0));
    for (int i = 0; i < g0.size(); ++i) g0inv[i] = inv[static_cast<size_t>(i)];
  }
  auto back = G.left_translation(g0inv);
  std::vector<PolyD> backd;
  backd.reserve(back.size());
  for (const auto& p : back) backd.push_back(to_double_poly(p));
  TaylorResult<double> res(at0.polynomial.substitute(backd));
  res.center = g0;
  res.degree = k;
  res.constraint_count = at0.constraint_count;
  res.unknown_count = at0.unknown_count;
  res.rank = at0.rank;
  return res;
}

namespace {

template <class S>
bool depends_on_subgroup_coords(const Polynomial<S>& p_on_G, int ell) {
  for (const auto& [e, c] : p_on_G.terms()) {
    (void)c;
    for (int i = 0; i < ell; ++i)
      if (e[static_cast<size_t>(i)] > 0) return true;
  }
  return false;
}

// Intrinsic horizontal system at q on M for the cross-check: words over the
// horizontal projected frame, monomials of wdeg <= k on the slice.
struct IntrinsicSystem {
  std::vector<Word> words;
  std::vector<Exponents> monomials;
  std::vector<VectorField> frame;
  RatMat a;
};

IntrinsicSystem intrinsic_system(const QuotientModel& M, const RatVec& q, int k) {
  IntrinsicSystem sys;
  for (int slot : M.horizontal()) sys.frame.push_back(M.projected_field(slot));
  std::vector<int> weights(static_cast<size_t>(sys.frame.size()), 1);
  sys.words = enumerate_words(weights, k, false);
  sys.monomials = monomials_up_to_wdeg(*M.slice(), k);
  sys.a = constraint_matrix(sys.frame, sys.words, sys.monomials, M.slice(), q);
  return sys;
}

}  // namespace

TaylorResult<Rational> taylor_on_M(const QuotientModel& M, const Poly& f,
                                   const RatVec& q, int k,
                                   const TaylorOptions& opts) {
  Poly lifted_f = M.lift(f);
  RatVec g0 = M.include(q);
  TaylorResult<Rational> on_g = taylor_on_G(M.group(), lifted_f, g0, k, opts);
  if (depends_on_subgroup_coords(on_g.polynomial, M.ell()))
    throw Error(ErrorCode::LiftNotInvariant,
                "lifted Taylor polynomial depends on subgroup coordinates: " +
                    on_g.polynomial.str());

  TaylorResult<Rational> res(M.restrict_to_slice(on_g.polynomial));
  res.center = q;
  res.degree = k;
  res.space = TaylorResult<Rational>::Space::M;
  res.constraint_count = on_g.constraint_count;
  res.unknown_count = on_g.unknown_count;
  res.rank = on_g.rank;
  res.lifted = on_g.polynomial;

  if (opts.cross_check) {
    IntrinsicSystem sys = intrinsic_system(M, q, k);
    std::vector<Rational> point = to_vec(q);
    auto derivs = word_values(sys.words, f, [&](int letter, const Poly& p) {
      return sys.frame[static_cast<size_t>(letter)].apply(p);
    });
    RatVec b(static_cast<int>(sys.words.size()));
    for (size_t i = 0; i < sys.words.size(); ++i)
      b[static_cast<int>(i)] = derivs[i].eval<Rational>(point);
    auto solved = solve_exact(sys.a, b);
    res.cross_checked = true;
    res.cross_rank = solved.rank;
    res.cross_unknowns = static_cast<int>(sys.monomials.size());
    res.cross_rank_full = solved.unique;
    if (solved.unique) {
      Poly intrinsic = assemble<Rational>(
          M.slice(), sys.monomials,
          std::vector<Rational>(solved.solution.data(),
                                solved.solution.data() + solved.solution.size()));
      res.cross_match = intrinsic == res.polynomial;
      if (!res.cross_match)
        throw Error(ErrorCode::Mismatch,
                    "intrinsic solve disagrees with lift-restrict: " +
                        intrinsic.str() + " vs " + res.polynomial.str());
    }
  }
  return res;
}

TaylorResult<double> taylor_on_M(const QuotientModel& M, const ExprPtr& f,
                                 const RatVec& q, int k,
                                 const TaylorOptions& opts) {
  // lift of an expression: reindex slice variables into the x-block of G
  // coordinates; variable index j on M becomes ell + j on G
  std::function<ExprPtr(const ExprPtr&)> relabel = [&](const ExprPtr& e) -> ExprPtr {
    switch (e->kind()) {
      case Expr::Kind::Const: return e;
      case Expr::Kind::Var: return Expr::variable(M.ell() + e->var());
      case Expr::Kind::Add: return Expr::add(relabel(e->left()), relabel(e->right()));
      case Expr::Kind::Mul: return Expr::mul(relabel(e->left()), relabel(e->right()));
      case Expr::Kind::Pow: return Expr::pow(relabel(e->left()), e->exponent());
      case Expr::Kind::Sin: return Expr::sin(relabel(e->left()));
      case Expr::Kind::Cos: return Expr::cos(relabel(e->left()));
      case Expr::Kind::Exp: return Expr::exp(relabel(e->left()));
    }
    throw Error(ErrorCode::BadInput, "unreachable");
  };
  ExprPtr lifted_f = relabel(f);
  RatVec g0 = M.include(q);
  TaylorResult<double> on_g = taylor_on_G(M.group(), lifted_f, g0, k, opts);

  double top = 0.0;
  for (const auto& [e, c] : on_g.polynomial.terms()) {
    (void)e;
    top = std::max(top, std::abs(c));
  }
  PolyD cleaned = on_g.polynomial.pruned(opts.numeric_tol * std::max(1.0, top));
  if (depends_on_subgroup_coords(cleaned, M.ell()))
    throw Error(ErrorCode::LiftNotInvariant,
                "lifted Taylor polynomial depends on subgroup coordinates: " +
                    cleaned.str());

  TaylorResult<double> res(M.restrict_to_slice(cleaned));
  res.center = q;
  res.degree = k;
  res.space = TaylorResult<double>::Space::M;
  res.constraint_count = on_g.constraint_count;
  res.unknown_count = on_g.unknown_count;
  res.rank = on_g.rank;
  res.lifted = on_g.polynomial;
  return res;
}

RepIndependenceReport representative_independence_check(const QuotientModel& M,
                                                        const Poly& f,
                                                        const RatVec& q, int k,
                                                        int trials,
                                                        uint64_t seed) {
  RepIndependenceReport report;
  report.trials = trials;
  if (M.ell() == 0) return report;

  Poly lifted_f = M.lift(f);
  RatVec g0 = M.include(q);
  TaylorResult<Rational> reference = taylor_on_G(M.group(), lifted_f, g0, k);

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    RatVec h = RatVec::Constant(M.group().dim(), Rational(0));
    for (int i = 0; i < M.ell(); ++i) h[i] = rng.small_rational();
    RatVec g1(M.group().dim());
    {
      auto prod = M.group().multiply(to_vec(h), to_vec(g0));
      for (int i = 0; i < g1.size(); ++i) g1[i] = prod[static_cast<size_t>(i)];
    }
    TaylorResult<Rational> moved = taylor_on_G(M.group(), lifted_f, g1, k);
    if (moved.polynomial != reference.polynomial) {
      report.ok = false;
      report.offending_h = h;
      return report;
    }
  }
  return report;
}

HInvarianceReport h_invariance_check(const QuotientModel& M, const Poly& p_on_G) {
  HInvarianceReport report;
  for (int i = 0; i < M.ell(); ++i) {
    Poly residual = M.group().right_field(i).apply(p_on_G);
    if (!residual.is_zero()) {
      report.ok = false;
      report.generator = i;
      report.residual = residual.str();
      return report;
    }
  }
  return report;
}

}  // namespace carnot
