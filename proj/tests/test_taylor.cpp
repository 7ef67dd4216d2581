#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/catalog.hpp"
#include "carnot/expr.hpp"
#include "carnot/rng.hpp"
#include "carnot/taylor.hpp"

using namespace carnot;

namespace {

Poly parse_poly(const std::string& text, const VarSetPtr& vars) {
  return parse_expression(text, *vars)->to_polynomial(vars);
}

Poly random_poly(const VarSetPtr& vars, Rng& rng, int max_deg, int terms) {
  Poly p(vars);
  for (int t = 0; t < terms; ++t) {
    Exponents e(static_cast<size_t>(vars->size()), 0);
    for (auto& x : e) x = static_cast<int>(rng.next() % static_cast<uint64_t>(max_deg + 1));
    p.add_term(e, rng.small_rational());
  }
  return p;
}

RatVec rat_point(std::initializer_list<Rational> vals) {
  RatVec v(static_cast<int>(vals.size()));
  int i = 0;
  for (const auto& x : vals) v[i++] = x;
  return v;
}

// independent oracle: solve the defining equations X^I P(g0) = X^I f(g0)
// directly at g0 without translating to the identity
Poly direct_constraint_solve(const CarnotGroup& G, const Poly& f, const RatVec& g0,
                             int k) {
  auto words = enumerate_words(G.algebra().weights(), k, false);
  auto monos = monomials_up_to_wdeg(*G.coords(), k);
  RatMat a = constraint_matrix(G.left_frame(), words, monos, G.coords(), g0);
  std::vector<Rational> point(g0.data(), g0.data() + g0.size());
  RatVec b(static_cast<int>(words.size()));
  for (size_t i = 0; i < words.size(); ++i) {
    Poly df = f;
    for (auto it = words[i].letters.rbegin(); it != words[i].letters.rend(); ++it)
      df = G.left_field(*it).apply(df);
    b[static_cast<int>(i)] = df.eval<Rational>(point);
  }
  auto solved = solve_exact(a, b);
  REQUIRE(solved.unique);
  Poly out(G.coords());
  for (size_t i = 0; i < monos.size(); ++i)
    out.add_term(monos[i], solved.solution[static_cast<int>(i)]);
  return out;
}

}  // namespace

TEST_CASE("word enumeration") {
  SUBCASE("k = 0 leaves only the empty word") {
    auto words = enumerate_words({1, 1}, 0);
    REQUIRE(words.size() == 1);
    CHECK(words[0].letters.empty());
    CHECK(words[0].degree == 0);
  }
  SUBCASE("two horizontal letters, k = 2: seven words") {
    auto words = enumerate_words({1, 1}, 2);
    REQUIRE(words.size() == 7);
    CHECK(words[1].letters == std::vector<int>{0});
    CHECK(words[2].letters == std::vector<int>{1});
    CHECK(words[3].letters == std::vector<int>{0, 0});
    CHECK(words[6].letters == std::vector<int>{1, 1});
  }
  SUBCASE("weights (1,1,2), k = 2: the weight-2 singleton joins") {
    auto words = enumerate_words({1, 1, 2}, 2);
    CHECK(words.size() == 8);
    int singletons = 0;
    for (const auto& w : words)
      if (w.length() == 1) ++singletons;
    CHECK(singletons == 3);
  }
  SUBCASE("horizontal words have degree equal to length") {
    auto words = enumerate_words({1, 2, 1}, 3, true);
    for (const auto& w : words) {
      CHECK(w.horizontal);
      CHECK(w.degree == w.length());
      for (int letter : w.letters) CHECK(letter != 1);
    }
  }
}

TEST_CASE("McLaurin reproduces polynomials of low weighted degree") {
  Rng rng(101);
  for (const auto& entry : catalog()) {
    const auto& G = entry.model->group();
    for (int k = 1; k <= 3; ++k) {
      Poly f = random_poly(G.coords(), rng, 2, 5).truncate_wdeg(k);
      auto result = mclaurin_on_G(G, f, k);
      CHECK(result.polynomial == f);
      CHECK(result.rank == result.unknown_count);
    }
  }
}

TEST_CASE("degree-2 McLaurin on the step-4 filiform matches the worked formula") {
  // P~ = F(0) + X1 F(0) x1 + Y1 F(0) y1 + X1^2 F(0)/2 x1^2 + Y1^2 F(0)/2 y1^2
  //      + Y1 X1 F(0) x1 y1 + (X1 Y1 - Y1 X1) F(0) y2
  const auto& G = catalog_model("filiform3").group();
  auto vars = G.coords();
  const auto& Y1 = G.left_field(0);
  const auto& X1 = G.left_field(3);
  std::vector<Rational> zero(static_cast<size_t>(G.dim()), Rational(0));

  auto formula = [&](const Poly& F) {
    auto at0 = [&](const Poly& p) { return p.eval<Rational>(zero); };
    Poly x1 = Poly::variable(vars, 3), y1 = Poly::variable(vars, 0),
         y2 = Poly::variable(vars, 1);
    Poly out = Poly::constant(vars, at0(F));
    out += x1 * at0(X1.apply(F));
    out += y1 * at0(Y1.apply(F));
    out += x1 * x1 * (at0(X1.apply(X1.apply(F))) / 2);
    out += y1 * y1 * (at0(Y1.apply(Y1.apply(F))) / 2);
    out += x1 * y1 * at0(Y1.apply(X1.apply(F)));
    out += y2 * (at0(X1.apply(Y1.apply(F))) - at0(Y1.apply(X1.apply(F))));
    return out;
  };

  // the map jet -> P~ is linear, so checking every monomial of Euclidean
  // degree <= 2 plus a few random quartics pins the whole coefficient structure
  std::vector<Poly> tests;
  for (int i = 0; i < G.dim(); ++i) {
    tests.push_back(Poly::variable(vars, i));
    for (int j = i; j < G.dim(); ++j)
      tests.push_back(Poly::variable(vars, i) * Poly::variable(vars, j));
  }
  tests.push_back(Poly::constant(vars, rat(1)));
  Rng rng(103);
  for (int t = 0; t < 5; ++t) tests.push_back(random_poly(vars, rng, 4, 6));

  int monomial_count = 0;
  for (const auto& F : tests) {
    auto result = mclaurin_on_G(G, F, 2);
    CHECK(result.polynomial == formula(F));
    monomial_count = result.unknown_count;
  }
  CHECK(monomial_count == 7);  // 1, x1, y1, x1^2, y1^2, x1 y1, y2
}

TEST_CASE("degree-2 Grushin McLaurin has the three-term form") {
  // P = f(0) + X1 f(0) x1 + X1^2 f(0)/2 x1^2 on M
  const auto& M = catalog_model("filiform3");
  auto slice = M.slice();
  const auto& X1 = M.projected_field(3);
  RatVec zero = rat_point({Rational(0), Rational(0)});
  std::vector<Rational> zv = {Rational(0), Rational(0)};

  Rng rng(107);
  for (int t = 0; t < 10; ++t) {
    Poly f = random_poly(slice, rng, 3, 5);
    auto result = taylor_on_M(M, f, zero, 2, {.cross_check = true});
    Poly x1 = Poly::variable(slice, 0);
    Poly want = Poly::constant(slice, f.eval<Rational>(zv));
    want += x1 * X1.apply(f).eval<Rational>(zv);
    want += x1 * x1 * (X1.apply(X1.apply(f)).eval<Rational>(zv) / 2);
    CHECK(result.polynomial == want);
    CHECK(result.cross_rank_full);
    CHECK(result.cross_match);
  }
}

TEST_CASE("worked mixed-coordinate example: support and vanishing lifted terms") {
  const auto& M = catalog_model("filiform4-2nd");
  auto slice = M.slice();
  // a generic function of (x1, x2); for these the lifted polynomial provably
  // has no x3 terms at any center
  Poly f = parse_poly("(1 + x1 + x2)^4 + 2*x1*x2^2", slice);
  for (const RatVec& q : {rat_point({Rational(0), Rational(0), Rational(0)}),
                          rat_point({rat(1, 2), rat(-1, 3), rat(2)})}) {
    auto result = taylor_on_M(M, f, q, 3, {.cross_check = true});

    // support: exactly the ten monomials listed in the worked example
    std::vector<Poly> expect_monos = {
        parse_poly("1", slice),     parse_poly("x1", slice),
        parse_poly("x2", slice),    parse_poly("x1*x2", slice),
        parse_poly("x1^2", slice),  parse_poly("x2^2", slice),
        parse_poly("x1^2*x2", slice), parse_poly("x1*x2^2", slice),
        parse_poly("x1^3", slice),  parse_poly("x2^3", slice)};
    CHECK(result.polynomial.terms().size() == 10);
    for (const auto& [e, c] : result.polynomial.terms()) {
      (void)c;
      CHECK(e[2] == 0);  // no x4 exponent
    }

    // lifted polynomial: zero coefficients on x3, x1 x3, x2 x3
    const Poly& lifted = *result.lifted;
    auto coords = M.group().coords();
    // slots are (x3; x1, x2, x4)
    CHECK(lifted.coefficient({1, 0, 0, 0}) == 0);
    CHECK(lifted.coefficient({1, 1, 0, 0}) == 0);
    CHECK(lifted.coefficient({1, 0, 1, 0}) == 0);
    CHECK(result.cross_rank_full);
    CHECK(result.cross_match);
  }
}

TEST_CASE("taylor at a general center agrees with the direct constraint solve") {
  const auto& G = catalog_model("heisenberg").group();
  Rng rng(109);
  for (int t = 0; t < 8; ++t) {
    Poly f = random_poly(G.coords(), rng, 3, 5);
    RatVec g0 = rat_point({rat(1), rat(0), rat(0)});
    if (t % 2) g0 = rat_point({rng.small_rational(), rng.small_rational(), rng.small_rational()});
    for (int k = 1; k <= 2; ++k) {
      auto via_translation = taylor_on_G(G, f, g0, k);
      Poly via_direct = direct_constraint_solve(G, f, g0, k);
      CHECK(via_translation.polynomial == via_direct);
    }
  }
}

TEST_CASE("taylor at the identity equals the McLaurin polynomial") {
  const auto& G = catalog_model("crq6").group();
  Rng rng(113);
  Poly f = random_poly(G.coords(), rng, 2, 6);
  RatVec zero = RatVec::Constant(G.dim(), Rational(0));
  CHECK(taylor_on_G(G, f, zero, 2).polynomial == mclaurin_on_G(G, f, 2).polynomial);
}

TEST_CASE("projector: idempotence, linearity, degree truncation") {
  Rng rng(127);
  for (const auto& entry : catalog()) {
    const auto& M = *entry.model;
    RatVec q = RatVec::Constant(M.m(), Rational(0));
    for (int k = 1; k <= 3; ++k) {
      Poly f = random_poly(M.slice(), rng, 3, 5);
      Poly g = random_poly(M.slice(), rng, 3, 5);
      auto pf = taylor_on_M(M, f, q, k);
      auto pg = taylor_on_M(M, g, q, k);

      // no monomial of weighted degree above k
      CHECK(pf.polynomial.wdeg() <= k);

      // idempotence
      auto pp = taylor_on_M(M, pf.polynomial, q, k);
      CHECK(pp.polynomial == pf.polynomial);

      // linearity with rational weights
      Rational alpha = rat(3, 2), beta = rat(-2, 5);
      auto combo = taylor_on_M(M, f * alpha + g * beta, q, k);
      CHECK(combo.polynomial == pf.polynomial * alpha + pg.polynomial * beta);
    }
  }
}

TEST_CASE("no x2 term below its weight on the Grushin quotient") {
  const auto& M = catalog_model("filiform3");
  Rng rng(131);
  RatVec q = RatVec::Constant(2, Rational(0));
  for (int k = 1; k <= 3; ++k) {
    Poly f = random_poly(M.slice(), rng, 3, 6);
    auto result = taylor_on_M(M, f, q, k);
    for (const auto& [e, c] : result.polynomial.terms()) {
      (void)c;
      CHECK(e[1] == 0);  // weight(x2) = 4 > k
    }
  }
}

TEST_CASE("representative independence over random subgroup elements") {
  Rng rng(137);
  for (const auto& entry : catalog()) {
    const auto& M = *entry.model;
    RatVec q = RatVec::Constant(M.m(), Rational(0));
    Poly f = random_poly(M.slice(), rng, 3, 5);
    for (int k = 1; k <= 3; ++k) {
      auto report = representative_independence_check(M, f, q, k, 10, 42);
      CHECK(report.ok);
    }
  }
}

TEST_CASE("H-invariance of lifted Taylor polynomials") {
  Rng rng(139);
  for (const auto& entry : catalog()) {
    const auto& M = *entry.model;
    if (M.ell() == 0) continue;
    RatVec q = RatVec::Constant(M.m(), Rational(0));
    Poly f = random_poly(M.slice(), rng, 3, 5);
    for (int k = 1; k <= 3; ++k) {
      auto result = taylor_on_M(M, f, q, k);
      auto report = h_invariance_check(M, *result.lifted);
      CHECK(report.ok);
    }
  }
}

TEST_CASE("h_invariance_check flags y1 on the filiform group") {
  const auto& M = catalog_model("filiform2");
  Poly y1 = Poly::variable(M.group().coords(), 0);
  auto report = h_invariance_check(M, y1);
  CHECK_FALSE(report.ok);
  CHECK(report.generator == 0);
  CHECK(report.residual == "1");

  Poly c = Poly::constant(M.group().coords(), rat(5));
  CHECK(h_invariance_check(M, c).ok);
}

TEST_CASE("compatibility failure: non-normal subgroup at a generic center") {
  // the unique degree-1 Taylor polynomial of the invariant lift of x1*x2 at
  // q = (1,0) on the Grushin quotient is y1/6, which is not H-invariant;
  // the solver reports this instead of silently restricting
  const auto& M = catalog_model("filiform3");
  Poly f = parse_poly("x1*x2", M.slice());
  RatVec q = rat_point({rat(1), rat(0)});
  CHECK_THROWS_WITH_AS(taylor_on_M(M, f, q, 1),
                       doctest::Contains("LiftNotInvariant"), Error);

  // on the degenerate locus x1 = 0 the same function is fine
  RatVec axis = rat_point({rat(0), rat(1)});
  CHECK(taylor_on_M(M, f, axis, 1).polynomial == parse_poly("x1", M.slice()));
}

TEST_CASE("horizontal-only word systems make no difference on catalog groups") {
  const auto& G = catalog_model("filiform4-2nd").group();
  Rng rng(149);
  Poly f = random_poly(G.coords(), rng, 3, 5);
  RatVec zero = RatVec::Constant(G.dim(), Rational(0));
  auto full = taylor_on_G(G, f, zero, 3, {});
  auto hor = taylor_on_G(G, f, zero, 3, {.horizontal_words_only = true});
  CHECK(full.polynomial == hor.polynomial);
  CHECK(hor.rank == hor.unknown_count);
}

TEST_CASE("rank-deficiency of the intrinsic system is reported, not fatal") {
  // heisenberg-q projects to the abelian plane: the x-frame cannot see any
  // y-direction, but the quotient has no higher-weight slice coordinate, so
  // the intrinsic system on M stays full rank; check the report fields exist
  const auto& M = catalog_model("heisenberg-q");
  Poly f = parse_poly("x1^2 + x2", M.slice());
  RatVec q = RatVec::Constant(2, Rational(0));
  auto result = taylor_on_M(M, f, q, 2, {.cross_check = true});
  CHECK(result.cross_checked);
  CHECK(result.cross_rank_full);
  CHECK(result.cross_match);
}

TEST_CASE("numeric path agrees with the exact path on polynomial data") {
  const auto& M = catalog_model("filiform4-2nd");
  RatVec q = rat_point({rat(0), rat(0), rat(1)});
  std::string text = "1 + x1*x2 - x4 + x1^3";
  Poly f = parse_poly(text, M.slice());
  ExprPtr fe = Expr::mul(Expr::constant(rat(1)), parse_expression(text, *M.slice()));
  // route the expression through the jet/QR path by wrapping it with exp(0)
  ExprPtr transcendental = Expr::mul(fe, Expr::exp(Expr::constant(rat(0))));
  auto exact = taylor_on_M(M, f, q, 3);
  auto numeric = taylor_on_M(M, transcendental, q, 3);
  for (const auto& [e, c] : exact.polynomial.terms()) {
    double got = numeric.polynomial.coefficient(e);
    CHECK(got == doctest::Approx(to_double(c)).epsilon(1e-9));
  }
}
