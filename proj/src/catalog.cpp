#include "carnot/catalog.hpp"

#include <mutex>

namespace carnot {

namespace {

AlgebraInput heisenberg_input() {
  AlgebraInput in;
  in.names = {"e1", "e2", "e3"};
  in.weights = {1, 1, 2};
  in.brackets.push_back({0, 1, {{2, Rational(1)}}});
  return in;
}

CatalogEntry make_heisenberg() {
  auto alg = StratifiedAlgebra::validate(heisenberg_input());
  SubgroupSpec spec;  // trivial subgroup, M = G
  auto model = std::make_shared<QuotientModel>(build_quotient(alg, spec));
  return {"heisenberg", "Heisenberg group, trivial subgroup (M = G)", model,
          {"x1", "x3", "x1*x3"}};
}

CatalogEntry make_heisenberg_q() {
  auto alg = StratifiedAlgebra::validate(heisenberg_input());
  SubgroupSpec spec;
  spec.generators = {2};  // the center e3
  auto model = std::make_shared<QuotientModel>(build_quotient(alg, spec));
  return {"heisenberg-q", "Heisenberg group modulo its center", model,
          {"x1", "x2", "x1*x2"}};
}

CatalogEntry make_filiform(int ell) {
  AlgebraInput in;
  // basis w_1..w_ell, v1, v2 with [v1, w_j] = w_{j+1} (j < ell), [v1, w_ell] = v2
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
    in.brackets.push_back({v1, j, {{j + 1, Rational(1)}}});
  in.brackets.push_back({v1, ell - 1, {{v2, Rational(1)}}});

  auto alg = StratifiedAlgebra::validate(in);
  SubgroupSpec spec;
  for (int j = 0; j < ell; ++j) spec.generators.push_back(j);
  auto model = std::make_shared<QuotientModel>(build_quotient(alg, spec));
  return {"filiform" + std::to_string(ell),
          "filiform group of step " + std::to_string(ell + 1) +
              ", Grushin quotient of order " + std::to_string(ell),
          model,
          {"x1", "x2", "x1*x2"}};
}

CatalogEntry make_crq6() {
  AlgebraInput in;
  in.names = {"v1", "v2", "v3", "w1", "w2", "w3"};
  in.weights = {1, 1, 4, 2, 3, 3};
  const int v1 = 0, v2 = 1, v3 = 2, w1 = 3, w2 = 4, w3 = 5;
  in.brackets.push_back({v2, v1, {{w1, Rational(1)}}});
  in.brackets.push_back({w1, v1, {{w2, Rational(1)}}});
  in.brackets.push_back({w1, v2, {{w3, Rational(1)}}});
  in.brackets.push_back({w2, v1, {{v3, Rational(8)}}});
  in.brackets.push_back({w3, v2, {{v3, Rational(8)}}});

  auto alg = StratifiedAlgebra::validate(in);
  SubgroupSpec spec;
  spec.generators = {w1, w2, w3};
  auto model = std::make_shared<QuotientModel>(build_quotient(alg, spec));
  return {"crq6", "six-dimensional group over the CR quotient of step 4", model,
          {"x1", "x3", "x1*x2"}};
}

CatalogEntry make_filiform4_2nd() {
  AlgebraInput in;
  in.names = {"e1", "e2", "e3", "e4"};
  in.weights = {1, 1, 2, 3};
  in.brackets.push_back({0, 1, {{2, Rational(1)}}});
  in.brackets.push_back({0, 2, {{3, Rational(1)}}});

  auto alg = StratifiedAlgebra::validate(in);
  SubgroupSpec spec;
  spec.generators = {2};  // H = exp(span e3)
  // mixed coordinates (x3; x1, x2, x4): the subgroup coordinate keeps the
  // basis numbering instead of the default y-name
  auto model = std::make_shared<QuotientModel>(
      build_quotient(alg, spec, {"x3", "x1", "x2", "x4"}, {"X3", "X1", "X2", "X4"}));
  return {"filiform4-2nd",
          "4-dimensional filiform group in mixed second-kind coordinates, H = exp(e3)",
          model,
          {"x1", "x4", "x1*x2"}};
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;
  entries.push_back(make_heisenberg());
  entries.push_back(make_heisenberg_q());
  entries.push_back(make_filiform(1));
  entries.push_back(make_filiform(2));
  entries.push_back(make_filiform(3));
  entries.push_back(make_crq6());
  entries.push_back(make_filiform4_2nd());
  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static std::mutex mu;
  static std::vector<CatalogEntry> entries;
  std::lock_guard<std::mutex> lock(mu);
  if (entries.empty()) entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  std::string known;
  for (const auto& e : catalog()) {
    if (!known.empty()) known += ", ";
    known += e.name;
  }
  throw Error(ErrorCode::BadInput, "unknown group '" + name + "' (known: " + known + ")");
}

const QuotientModel& catalog_model(const std::string& name) {
  return *catalog_entry(name).model;
}

}  // namespace carnot
