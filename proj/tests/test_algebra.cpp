#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carnot/algebra.hpp"
#include "carnot/rng.hpp"

using namespace carnot;

namespace {

AlgebraInput heisenberg() {
  AlgebraInput in;
  in.names = {"e1", "e2", "e3"};
  in.weights = {1, 1, 2};
  in.brackets.push_back({0, 1, {{2, rat(1)}}});
  return in;
}

AlgebraInput filiform(int ell) {
  AlgebraInput in;
  for (int j = 1; j <= ell; ++j) {
    in.names.push_back("w" + std::to_string(j));
    in.weights.push_back(j);
  }
  in.names.push_back("v1");
  in.weights.push_back(1);
  in.names.push_back("v2");
  in.weights.push_back(ell + 1);
  const int v1 = ell, v2 = ell + 1;
  for (int j = 0; j + 1 < ell; ++j)
    in.brackets.push_back({v1, j, {{j + 1, rat(1)}}});
  in.brackets.push_back({v1, ell - 1, {{v2, rat(1)}}});
  return in;
}

RatVec basis_vec(int n, int i) {
  RatVec v = RatVec::Constant(n, rat(0));
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("Heisenberg validates as the smallest nonabelian stratified algebra") {
  auto g = StratifiedAlgebra::validate(heisenberg());
  CHECK(g.dim() == 3);
  CHECK(g.step() == 2);
  CHECK(g.layer(1) == std::vector<int>{0, 1});
  CHECK(g.layer(2) == std::vector<int>{2});
}

TEST_CASE("filiform family validates with step ell+1") {
  for (int ell : {1, 2, 3}) {
    auto g = StratifiedAlgebra::validate(filiform(ell));
    CHECK(g.dim() == ell + 2);
    CHECK(g.step() == ell + 1);
  }
}

TEST_CASE("antisymmetric closure from a single orientation") {
  auto g = StratifiedAlgebra::validate(heisenberg());
  auto e1 = basis_vec(3, 0), e2 = basis_vec(3, 1);
  RatVec b12 = bracket(g, e1, e2);
  RatVec b21 = bracket(g, e2, e1);
  CHECK(b12[2] == rat(1));
  CHECK(b21[2] == rat(-1));
}

TEST_CASE("bracket of an element with itself vanishes") {
  auto g = StratifiedAlgebra::validate(heisenberg());
  RatVec a(3);
  a << rat(2), rat(-3, 2), rat(5);
  RatVec z = bracket(g, a, a);
  for (int i = 0; i < 3; ++i) CHECK(z[i] == rat(0));
}

TEST_CASE("bracket is bilinear and antisymmetric") {
  auto g = StratifiedAlgebra::validate(filiform(3));
  Rng rng(19);
  auto rand_elem = [&]() {
    RatVec v(g.dim());
    for (int i = 0; i < g.dim(); ++i) v[i] = rng.small_rational();
    return v;
  };
  for (int t = 0; t < 20; ++t) {
    RatVec a = rand_elem(), b = rand_elem(), c = rand_elem();
    Rational s = rng.small_rational();
    RatVec lhs = bracket(g, RatVec(a * s + b), c);
    RatVec rhs = bracket(g, a, c) * s + bracket(g, b, c);
    RatVec anti = bracket(g, c, a) + bracket(g, a, c);
    for (int i = 0; i < g.dim(); ++i) {
      CHECK(lhs[i] == rhs[i]);
      CHECK(anti[i] == rat(0));
    }
  }
}

TEST_CASE("crq6 bracket table: [w2,v1] = [w3,v2] = 8 v3") {
  AlgebraInput in;
  in.names = {"v1", "v2", "v3", "w1", "w2", "w3"};
  in.weights = {1, 1, 4, 2, 3, 3};
  in.brackets.push_back({1, 0, {{3, rat(1)}}});   // [v2,v1] = w1
  in.brackets.push_back({3, 0, {{4, rat(1)}}});   // [w1,v1] = w2
  in.brackets.push_back({3, 1, {{5, rat(1)}}});   // [w1,v2] = w3
  in.brackets.push_back({4, 0, {{2, rat(8)}}});   // [w2,v1] = 8 v3
  in.brackets.push_back({5, 1, {{2, rat(8)}}});   // [w3,v2] = 8 v3
  auto g = StratifiedAlgebra::validate(in);
  RatVec w2 = basis_vec(6, 4), w3 = basis_vec(6, 5);
  RatVec v1 = basis_vec(6, 0), v2 = basis_vec(6, 1);
  CHECK(bracket(g, w2, v1)[2] == rat(8));
  CHECK(bracket(g, w3, v2)[2] == rat(8));
}

TEST_CASE("Jacobi violation is reported with its location") {
  // [e1,e2]=e4, [e1,e4]=e5, and an extra bracket [e3,e4]=e5 make the cyclic
  // sum over (e1,e2,e3) pick up a bare -e5 term
  AlgebraInput in;
  in.names = {"e1", "e2", "e3", "e4", "e5"};
  in.weights = {1, 1, 1, 2, 3};
  in.brackets.push_back({0, 1, {{3, rat(1)}}});
  in.brackets.push_back({0, 3, {{4, rat(1)}}});
  in.brackets.push_back({2, 3, {{4, rat(1)}}});
  CHECK_THROWS_WITH_AS(StratifiedAlgebra::validate(in),
                       doctest::Contains("JacobiViolation"), Error);
}

TEST_CASE("grading violations are rejected") {
  AlgebraInput in;
  in.names = {"e1", "e2", "e3"};
  in.weights = {1, 1, 2};
  in.brackets.push_back({0, 1, {{0, rat(1)}}});  // weight 2 target required
  CHECK_THROWS_WITH_AS(StratifiedAlgebra::validate(in),
                       doctest::Contains("GradingViolation"), Error);
}

TEST_CASE("non-generated layers are rejected") {
  AlgebraInput in;
  in.names = {"e1", "e2"};
  in.weights = {1, 2};
  CHECK_THROWS_WITH_AS(StratifiedAlgebra::validate(in),
                       doctest::Contains("NotStratified"), Error);
}

TEST_CASE("weights list must match the basis") {
  AlgebraInput in;
  in.names = {"e1", "e2"};
  in.weights = {1};
  CHECK_THROWS_WITH_AS(StratifiedAlgebra::validate(in),
                       doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("dilation scales by layer weight") {
  auto g = StratifiedAlgebra::validate(heisenberg());
  RatVec e3 = basis_vec(3, 2);
  CHECK(dilate(g, e3, rat(2))[2] == rat(4));
  RatVec e1 = basis_vec(3, 0);
  CHECK(dilate(g, e1, rat(7))[0] == rat(7));
}

TEST_CASE("basis permutation preserves the bracket table") {
  auto g = StratifiedAlgebra::validate(heisenberg());
  auto p = g.permuted({2, 0, 1});  // e3 first
  CHECK(p.weight(0) == 2);
  CHECK(p.name(0) == "e3");
  RatVec a = basis_vec(3, 1), b = basis_vec(3, 2);  // e1, e2 in new slots
  CHECK(bracket(p, a, b)[0] == rat(1));
}
