#include "carnot/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace carnot {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AntisymmetryViolation: return "AntisymmetryViolation";
    case ErrorCode::JacobiViolation: return "JacobiViolation";
    case ErrorCode::GradingViolation: return "GradingViolation";
    case ErrorCode::NotStratified: return "NotStratified";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::NotASubalgebra: return "NotASubalgebra";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::TrivialQuotient: return "TrivialQuotient";
    case ErrorCode::OrderExhausted: return "OrderExhausted";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::LiftNotInvariant: return "LiftNotInvariant";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::LiftFailed: return "LiftFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Error";
}

namespace {

// Exact rank of a small dense rational matrix by Gaussian elimination.
int rational_rank(std::vector<std::vector<Rational>> m) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    Rational inv = Rational(1) / m[rank][c];
    for (int cc = c; cc < cols; ++cc) m[rank][cc] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

StratifiedAlgebra StratifiedAlgebra::validate(const AlgebraInput& raw) {
  const int n = static_cast<int>(raw.names.size());
  if (n <= 0)
    throw Error(ErrorCode::DimensionMismatch, "empty basis");
  if (static_cast<int>(raw.weights.size()) != n)
    throw Error(ErrorCode::DimensionMismatch,
                "weights list has length " + std::to_string(raw.weights.size()) +
                    ", basis has " + std::to_string(n));
  for (int i = 0; i < n; ++i)
    if (raw.weights[i] < 1)
      throw Error(ErrorCode::BadInput,
                  "weight of " + raw.names[i] + " must be a positive integer");

  StratifiedAlgebra g;
  g.dim_ = n;
  g.names_ = raw.names;
  g.weights_ = raw.weights;
  g.step_ = *std::max_element(raw.weights.begin(), raw.weights.end());
  g.table_.assign(n, std::vector<std::vector<std::pair<int, Rational>>>(n));

  // Antisymmetric closure: each oriented pair may be specified once.
  std::set<std::pair<int, int>> seen;
  auto put = [&](int i, int j, const std::vector<std::pair<int, Rational>>& rhs) {
    std::map<int, Rational> acc;
    for (const auto& [k, c] : rhs) acc[k] += c;
    std::vector<std::pair<int, Rational>> row, neg;
    for (const auto& [k, c] : acc) {
      if (c == 0) continue;
      row.emplace_back(k, c);
      neg.emplace_back(k, -c);
    }
    g.table_[i][j] = row;
    g.table_[j][i] = neg;
  };

  for (const auto& br : raw.brackets) {
    if (br.left < 0 || br.left >= n || br.right < 0 || br.right >= n)
      throw Error(ErrorCode::DimensionMismatch, "bracket index out of range");
    for (const auto& [k, c] : br.terms) {
      (void)c;
      if (k < 0 || k >= n)
        throw Error(ErrorCode::DimensionMismatch, "bracket target out of range");
    }
    if (br.left == br.right) {
      for (const auto& [k, c] : br.terms)
        if (c != 0)
          throw Error(ErrorCode::AntisymmetryViolation,
                      "[" + raw.names[br.left] + "," + raw.names[br.left] +
                          "] must vanish (k=" + raw.names[k] + ")");
      continue;
    }
    if (seen.count({br.left, br.right}) || seen.count({br.right, br.left}))
      throw Error(ErrorCode::BadInput,
                  "bracket [" + raw.names[br.left] + "," + raw.names[br.right] +
                      "] specified twice");
    seen.insert({br.left, br.right});
    put(br.left, br.right, br.terms);
  }

  // Grading: c_{ij}^k = 0 unless w_k = w_i + w_j. Nilpotency follows since no
  // weight exceeds the top layer.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, c] : g.table_[i][j]) {
        (void)c;
        if (g.weights_[k] != g.weights_[i] + g.weights_[j])
          throw Error(ErrorCode::GradingViolation,
                      "(i=" + raw.names[i] + ",j=" + raw.names[j] +
                          ",k=" + raw.names[k] + ")");
      }

  // Jacobi: sum over cyclic permutations of [[e_i,e_j],e_k] vanishes.
  auto bracket_basis = [&](int i, int j) { return g.table_[i][j]; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::vector<Rational> acc(static_cast<size_t>(n), Rational(0));
        auto add = [&](int a, int b, int c) {
          for (const auto& [m, cm] : bracket_basis(a, b))
            for (const auto& [l, cl] : bracket_basis(m, c)) acc[l] += cm * cl;
        };
        add(i, j, k);
        add(j, k, i);
        add(k, i, j);
        for (int l = 0; l < n; ++l)
          if (acc[l] != 0)
            throw Error(ErrorCode::JacobiViolation,
                        "(i=" + raw.names[i] + ",j=" + raw.names[j] +
                            ",k=" + raw.names[k] + ",l=" + raw.names[l] + ")");
      }

  // Stratification: layer j+1 must be spanned by [layer j, layer 1].
  for (int w = 1; w < g.step_; ++w) {
    std::vector<int> next = g.layer(w + 1);
    if (next.empty())
      throw Error(ErrorCode::NotStratified,
                  "layer " + std::to_string(w + 1) + " is empty below step " +
                      std::to_string(g.step_));
    std::vector<std::vector<Rational>> mat;
    for (int a : g.layer(w))
      for (int b : g.layer(1)) {
        std::vector<Rational> row(next.size(), Rational(0));
        for (const auto& [k, c] : g.table_[a][b]) {
          auto pos = std::find(next.begin(), next.end(), k);
          row[static_cast<size_t>(pos - next.begin())] = c;
        }
        mat.push_back(std::move(row));
      }
    if (mat.empty() || rational_rank(mat) < static_cast<int>(next.size()))
      throw Error(ErrorCode::NotStratified,
                  "layer " + std::to_string(w + 1) +
                      " not generated by [layer " + std::to_string(w) +
                      ", layer 1]");
  }
  if (g.layer(1).empty())
    throw Error(ErrorCode::NotStratified, "layer 1 is empty");

  return g;
}

std::vector<int> StratifiedAlgebra::layer(int w) const {
  std::vector<int> out;
  for (int i = 0; i < dim_; ++i)
    if (weights_[i] == w) out.push_back(i);
  return out;
}

StratifiedAlgebra StratifiedAlgebra::permuted(const std::vector<int>& order) const {
  if (static_cast<int>(order.size()) != dim_)
    throw Error(ErrorCode::DimensionMismatch, "permutation size mismatch");
  std::vector<int> inv(static_cast<size_t>(dim_), -1);
  for (int s = 0; s < dim_; ++s) inv[static_cast<size_t>(order[s])] = s;

  StratifiedAlgebra g;
  g.dim_ = dim_;
  g.step_ = step_;
  g.names_.resize(static_cast<size_t>(dim_));
  g.weights_.resize(static_cast<size_t>(dim_));
  g.table_.assign(dim_, std::vector<std::vector<std::pair<int, Rational>>>(dim_));
  for (int s = 0; s < dim_; ++s) {
    g.names_[s] = names_[static_cast<size_t>(order[s])];
    g.weights_[s] = weights_[static_cast<size_t>(order[s])];
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      auto& row = g.table_[inv[static_cast<size_t>(i)]][inv[static_cast<size_t>(j)]];
      for (const auto& [k, c] : table_[i][j])
        row.emplace_back(inv[static_cast<size_t>(k)], c);
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  return g;
}

bool StratifiedAlgebra::operator==(const StratifiedAlgebra& other) const {
  if (dim_ != other.dim_ || weights_ != other.weights_) return false;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (table_[i][j] != other.table_[i][j]) return false;
  return true;
}

RatVec bracket(const StratifiedAlgebra& g, const RatVec& a, const RatVec& b) {
  const int n = g.dim();
  RatVec out = RatVec::Constant(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      for (const auto& [k, c] : g.bracket_row(i, j)) out[k] += a[i] * b[j] * c;
    }
  }
  return out;
}

RatVec dilate(const StratifiedAlgebra& g, const RatVec& a, const Rational& lambda) {
  RatVec out = a;
  for (int i = 0; i < g.dim(); ++i) out[i] *= rat_pow(lambda, g.weight(i));
  return out;
}

}  // namespace carnot
