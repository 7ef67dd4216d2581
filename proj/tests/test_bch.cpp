#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/bch.hpp"
#include "carnot/catalog.hpp"
#include "carnot/poly.hpp"
#include "carnot/rng.hpp"

using namespace carnot;

namespace {

// Independent oracle: the closed-form series through order 4,
//   z = u + v + 1/2 [u,v] + 1/12 ([u,[u,v]] + [v,[v,u]]) - 1/24 [v,[u,[u,v]]],
// written from the textbook coefficients rather than the Dynkin enumeration.
RatVec bch4_oracle(const StratifiedAlgebra& g, const RatVec& u, const RatVec& v) {
  REQUIRE(g.step() <= 4);
  RatVec uv = bracket(g, u, v);
  RatVec uuv = bracket(g, u, uv);
  RatVec vvu = bracket(g, v, bracket(g, v, u));
  RatVec vuuv = bracket(g, v, uuv);
  return u + v + uv * rat(1, 2) + (uuv + vvu) * rat(1, 12) - vuuv * rat(1, 24);
}

RatVec random_element(const StratifiedAlgebra& g, Rng& rng) {
  RatVec v(g.dim());
  for (int i = 0; i < g.dim(); ++i) v[i] = rng.small_rational();
  return v;
}

}  // namespace

TEST_CASE("bch matches the closed-form series on every catalog algebra") {
  Rng rng(2024);
  for (const auto& entry : catalog()) {
    const auto& g = entry.model->group().algebra();
    REQUIRE(g.step() <= 4);
    for (int t = 0; t < 50; ++t) {
      RatVec u = random_element(g, rng);
      RatVec v = random_element(g, rng);
      RatVec z = bch(g, u, v);
      RatVec expect = bch4_oracle(g, u, v);
      for (int i = 0; i < g.dim(); ++i) CHECK(z[i] == expect[i]);
    }
  }
}

TEST_CASE("Heisenberg closed form: bch(a e1, b e2) = a e1 + b e2 + ab/2 e3") {
  const auto& g = catalog_model("heisenberg").group().algebra();
  Rational a = rat(3, 2), b = rat(-5, 3);
  RatVec u = RatVec::Constant(3, rat(0)), v = RatVec::Constant(3, rat(0));
  u[0] = a;
  v[1] = b;
  RatVec z = bch(g, u, v);
  CHECK(z[0] == a);
  CHECK(z[1] == b);
  CHECK(z[2] == a * b / 2);
}

TEST_CASE("step-3 filiform: bch(v1, w1) carries the 1/12 double bracket") {
  // catalog filiform2 in adapted order (w1, w2, v1, v2)
  const auto& g = catalog_model("filiform2").group().algebra();
  RatVec v1 = RatVec::Constant(4, rat(0)), w1 = RatVec::Constant(4, rat(0));
  v1[2] = 1;
  w1[0] = 1;
  RatVec z = bch(g, v1, w1);
  CHECK(z[0] == rat(1));        // w1
  CHECK(z[1] == rat(1, 2));     // w2 from [v1,w1]/2
  CHECK(z[2] == rat(1));        // v1
  CHECK(z[3] == rat(1, 12));    // v2 = [v1,[v1,w1]]/12
}

TEST_CASE("bch group identities") {
  Rng rng(99);
  for (const auto& entry : catalog()) {
    const auto& g = entry.model->group().algebra();
    RatVec zero = RatVec::Constant(g.dim(), rat(0));
    for (int t = 0; t < 10; ++t) {
      RatVec u = random_element(g, rng);
      RatVec z1 = bch(g, u, zero);
      RatVec z2 = bch(g, zero, u);
      RatVec z3 = bch(g, u, RatVec(-u));
      for (int i = 0; i < g.dim(); ++i) {
        CHECK(z1[i] == u[i]);
        CHECK(z2[i] == u[i]);
        CHECK(z3[i] == rat(0));
      }
    }
  }
}

TEST_CASE("bch associativity on random rational triples") {
  Rng rng(7);
  for (const auto& entry : catalog()) {
    const auto& g = entry.model->group().algebra();
    for (int t = 0; t < 25; ++t) {
      RatVec a = random_element(g, rng);
      RatVec b = random_element(g, rng);
      RatVec c = random_element(g, rng);
      RatVec left = bch(g, bch(g, a, b), c);
      RatVec right = bch(g, a, bch(g, b, c));
      for (int i = 0; i < g.dim(); ++i) CHECK(left[i] == right[i]);
    }
  }
}

TEST_CASE("dilation is a bch automorphism for rational lambda") {
  Rng rng(11);
  for (const auto& entry : catalog()) {
    const auto& g = entry.model->group().algebra();
    for (Rational lambda : {rat(2), rat(1, 3), rat(-5, 4)}) {
      RatVec u = random_element(g, rng);
      RatVec v = random_element(g, rng);
      RatVec lhs = dilate(g, bch(g, u, v), lambda);
      RatVec rhs = bch(g, dilate(g, u, lambda), dilate(g, v, lambda));
      for (int i = 0; i < g.dim(); ++i) CHECK(lhs[i] == rhs[i]);
    }
  }
}

TEST_CASE("dilation automorphism holds with a formal lambda") {
  const auto& g = catalog_model("filiform2").group().algebra();
  auto vars = make_vars({"l"}, {1});
  Poly lambda = Poly::variable(vars, 0);

  Rng rng(5);
  std::vector<Poly> u, v;
  for (int i = 0; i < g.dim(); ++i) {
    u.push_back(Poly::constant(vars, rng.small_rational()));
    v.push_back(Poly::constant(vars, rng.small_rational()));
  }
  auto dil = [&](const std::vector<Poly>& a) {
    std::vector<Poly> out(a);
    for (int i = 0; i < g.dim(); ++i)
      out[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] * lambda.pow(g.weight(i));
    return out;
  };
  auto lhs = dil(bch(g, u, v));
  auto rhs = bch(g, dil(u), dil(v));
  for (int i = 0; i < g.dim(); ++i)
    CHECK(lhs[static_cast<size_t>(i)] == rhs[static_cast<size_t>(i)]);
}

TEST_CASE("weight-graded triangularity of bch") {
  // the weight-w output component only depends on input components of
  // weight <= w: zeroing higher-weight slots must not change it
  Rng rng(13);
  for (const auto& entry : catalog()) {
    const auto& g = entry.model->group().algebra();
    RatVec u = random_element(g, rng);
    RatVec v = random_element(g, rng);
    RatVec full = bch(g, u, v);
    for (int w = 1; w <= g.step(); ++w) {
      RatVec ut = u, vt = v;
      for (int i = 0; i < g.dim(); ++i)
        if (g.weight(i) > w) {
          ut[i] = 0;
          vt[i] = 0;
        }
      RatVec cut = bch(g, ut, vt);
      for (int i = 0; i < g.dim(); ++i)
        if (g.weight(i) == w) CHECK(cut[i] == full[i]);
    }
  }
}

TEST_CASE("bch rejects orders beyond the cap, and the cap is adjustable") {
  CHECK_THROWS_AS(bch_terms(kDefaultBchOrderCap + 1), Error);
  CHECK_NOTHROW(bch_terms(kDefaultBchOrderCap));

  set_bch_order_cap(4);
  CHECK_THROWS_AS(bch_terms(5), Error);
  set_bch_order_cap(kDefaultBchOrderCap);
  CHECK_NOTHROW(bch_terms(5));
  CHECK_THROWS_AS(set_bch_order_cap(0), Error);
  CHECK(bch_order_cap() == kDefaultBchOrderCap);
}
