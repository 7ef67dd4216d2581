#ifndef CARNOT_LINSOLVE_HPP
#define CARNOT_LINSOLVE_HPP

#include "carnot/rational.hpp"

#include <vector>

namespace carnot {

/// Reduced row echelon form of a rational matrix, computed exactly.
struct Rref {
  RatMat reduced;
  std::vector<int> pivot_cols;
  int rank = 0;
};

Rref rref(RatMat a);

/// Exact solve of an overdetermined consistent system. unique means the
/// solution space is a single point (rank equals the column count);
/// consistent means the right-hand side lies in the column span.
struct ExactSolveResult {
  bool consistent = false;
  bool unique = false;
  int rank = 0;
  RatVec solution;
};

ExactSolveResult solve_exact(const RatMat& a, const RatVec& b);

/// Canonical rational basis of the null space (one vector per free column,
/// free coordinate set to 1), in ascending free-column order.
std::vector<RatVec> nullspace(const RatMat& a);

/// Binary64 solve of the same kind of system via column-pivoted QR. The
/// residual must stay within tol * (1 + |b|_inf); rank is taken from exact
/// arithmetic by the caller.
struct NumericSolveResult {
  bool consistent = false;
  Eigen::VectorXd solution;
  double residual = 0.0;
};

NumericSolveResult solve_numeric(const RatMat& a, const Eigen::VectorXd& b,
                                 double tol);

}  // namespace carnot

#endif
