#include "carnot/linsolve.hpp"

#include <Eigen/Dense>

namespace carnot {

Rref rref(RatMat a) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  Rref out;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (a(i, c) != 0) { pivot = i; break; }
    if (pivot < 0) continue;
    a.row(r).swap(a.row(pivot));
    Rational inv = Rational(1) / a(r, c);
    for (int j = c; j < cols; ++j) a(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(a);
  return out;
}

ExactSolveResult solve_exact(const RatMat& a, const RatVec& b) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  RatMat aug(rows, cols + 1);
  aug.leftCols(cols) = a;
  aug.col(cols) = b;
  Rref rr = rref(std::move(aug));

  ExactSolveResult res;
  res.consistent = true;
  for (int c : rr.pivot_cols)
    if (c == cols) res.consistent = false;  // pivot in the RHS column
  int rank_a = static_cast<int>(rr.pivot_cols.size()) - (res.consistent ? 0 : 1);
  res.rank = rank_a;
  res.unique = res.consistent && rank_a == cols;
  if (res.unique) {
    res.solution = RatVec::Constant(cols, Rational(0));
    for (int r = 0; r < rank_a; ++r)
      res.solution[rr.pivot_cols[static_cast<size_t>(r)]] = rr.reduced(r, cols);
  }
  return res;
}

std::vector<RatVec> nullspace(const RatMat& a) {
  const int cols = static_cast<int>(a.cols());
  Rref rr = rref(a);
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (int c : rr.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;

  std::vector<RatVec> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    RatVec v = RatVec::Constant(cols, Rational(0));
    v[free] = 1;
    for (size_t r = 0; r < rr.pivot_cols.size(); ++r)
      v[rr.pivot_cols[r]] = -rr.reduced(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

NumericSolveResult solve_numeric(const RatMat& a, const Eigen::VectorXd& b,
                                 double tol) {
  Eigen::MatrixXd ad(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) ad(i, j) = to_double(a(i, j));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ad);
  NumericSolveResult res;
  res.solution = qr.solve(b);
  res.residual = (ad * res.solution - b).cwiseAbs().maxCoeff();
  res.consistent = res.residual <= tol * (1.0 + b.cwiseAbs().maxCoeff());
  return res;
}

}  // namespace carnot
