#ifndef CARNOT_QUOTIENT_HPP
#define CARNOT_QUOTIENT_HPP

#include "carnot/expr.hpp"
#include "carnot/group.hpp"

#include <memory>
#include <string>
#include <vector>

namespace carnot {

/// Homogeneous subgroup data: the subalgebra spanned by a subset of basis
/// vectors. Every generator is a dilation eigenvector, so delta_lambda(H) = H.
struct SubgroupSpec {
  std::vector<int> generators;  // basis indices spanning the subalgebra
};

struct OrbitConfig {
  int budget_per_start = 2000;
  double abs_tol = 1e-9;
  double agree_rel_tol = 1e-6;
  std::vector<std::vector<double>> extra_starts;  // optional warm starts in H-coordinates
};

struct OrbitDistanceResult {
  double value = 0.0;
  std::vector<double> minimizer;  // H-coordinates y*
  bool converged = true;
  long evaluations = 0;
};

/// The quotient model M = H\G realized on the slice {y = 0}: projected frame,
/// inclusion/projection, and the proxy quotient distance obtained by
/// minimizing the group distance over the H-orbit.
class QuotientModel {
 public:
  QuotientModel(std::shared_ptr<const CarnotGroup> G);

  const CarnotGroup& group() const { return *G_; }
  std::shared_ptr<const CarnotGroup> group_ptr() const { return G_; }
  int ell() const { return G_->ell(); }
  int m() const { return G_->m(); }

  /// Slice coordinates x_1..x_m with the weights of the complement block.
  const VarSetPtr& slice() const { return slice_; }

  /// Projection of the left-invariant field of basis slot b: drop the
  /// subgroup components, set y = 0. Zero operators are kept and flagged.
  const VectorField& projected_field(int b) const { return projected_[static_cast<size_t>(b)]; }
  const std::vector<VectorField>& projected_frame() const { return projected_; }
  const std::vector<int>& zero_projected() const { return zero_projected_; }

  /// Slot indices of weight-1 fields: the horizontal frame alphabet on M.
  const std::vector<int>& horizontal() const { return G_->horizontal(); }

  /// True when [g, h] stays inside h, i.e. H is a normal subgroup. Left
  /// H-invariance survives Taylor expansion at every center exactly in this
  /// case; otherwise only dilation-fixed centers are safe.
  bool subgroup_is_normal() const;

  /// Pi(y,x) = x in second-kind coordinates.
  template <class S>
  std::vector<S> project(const std::vector<S>& g) const {
    return std::vector<S>(g.begin() + ell(), g.end());
  }
  RatVec project(const RatVec& g) const;

  /// iota(x) = (0, x).
  template <class S>
  std::vector<S> include(const std::vector<S>& p) const {
    std::vector<S> g(static_cast<size_t>(G_->dim()), S(0));
    for (int j = 0; j < m(); ++j) g[static_cast<size_t>(ell() + j)] = p[static_cast<size_t>(j)];
    return g;
  }
  RatVec include(const RatVec& p) const;

  /// Lift of a function on M: f~ = f o Pi, i.e. the same polynomial read in
  /// the x-block of G coordinates.
  Poly lift(const Poly& f_on_M) const;
  PolyD lift(const PolyD& f_on_M) const;
  /// Restriction to the slice; requires (and checks nothing about) the input.
  Poly restrict_to_slice(const Poly& f_on_G) const;
  PolyD restrict_to_slice(const PolyD& f_on_G) const;

  /// Proxy quotient distance: minimize y |-> d(iota(p), exp(sum y_i w_i) iota(q))
  /// by deterministic multi-start pattern search. The result is an upper bound
  /// on the proxy infimum; h = e is always one of the starts.
  OrbitDistanceResult orbit_distance(const std::vector<double>& p,
                                     const std::vector<double>& q,
                                     const OrbitConfig& cfg = {}) const;

  /// A lift g of p with Pi(g) = p realizing (approximately) the orbit
  /// infimum against iota(q).
  std::vector<double> lift_point(const std::vector<double>& p,
                                 const std::vector<double>& q,
                                 const OrbitConfig& cfg = {}) const;

  /// Same lift built from an already-minimized orbit result.
  std::vector<double> lift_from(const std::vector<double>& p,
                                const OrbitDistanceResult& orbit) const;

  /// Second-kind point exp(sum y_i w_i), i.e. (y, 0).
  std::vector<double> h_point(const std::vector<double>& y) const;

 private:
  std::shared_ptr<const CarnotGroup> G_;
  VarSetPtr slice_;
  std::vector<VectorField> projected_;
  std::vector<int> zero_projected_;
};

/// Validates the subgroup (subalgebra closure over basis generators) and
/// builds the quotient model with the adapted ordering: generators first,
/// complement second. Throws NotASubalgebra / TrivialQuotient.
QuotientModel build_quotient(const StratifiedAlgebra& alg, const SubgroupSpec& spec,
                             std::vector<std::string> coord_names = {},
                             std::vector<std::string> field_names = {});

}  // namespace carnot

#endif
