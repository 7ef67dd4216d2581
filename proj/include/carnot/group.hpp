#ifndef CARNOT_GROUP_HPP
#define CARNOT_GROUP_HPP

#include "carnot/algebra.hpp"
#include "carnot/bch.hpp"
#include "carnot/field.hpp"
#include "carnot/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace carnot {

/// A point of G. Coordinates of the second kind
/// (y_1..y_ell, x_1..x_m) are the canonical representation; first-kind
/// coordinates are the exponential coordinates of exp on the algebra.
struct GroupPoint {
  enum class Kind { first, second };
  Kind kind = Kind::second;
  RatVec coords;
};

/// The Carnot group G realized in exponential coordinates of the second kind
/// over an adapted basis split: the subalgebra block (slots 0..ell-1, the
/// w_i's) followed by the complement block (slots ell.., the v_j's). Every
/// basis vector is a dilation eigenvector, so the second-kind coordinate map
/// is polynomially invertible, triangular by weight.
///
/// All coordinate maps (group law, inverse, both exponential charts) are
/// precomputed once as exact polynomial maps; point operations evaluate them
/// over Rational or double.
class CarnotGroup {
 public:
  /// alg must already be in adapted order; ell is the subalgebra block size.
  CarnotGroup(StratifiedAlgebra alg, int ell,
              std::vector<std::string> coord_names = {},
              std::vector<std::string> field_names = {});

  int dim() const { return alg_.dim(); }
  int step() const { return alg_.step(); }
  int ell() const { return ell_; }
  int m() const { return alg_.dim() - ell_; }

  const StratifiedAlgebra& algebra() const { return alg_; }
  const VarSetPtr& coords() const { return coords_; }
  const std::string& coord_name(int i) const { return coords_->names[static_cast<size_t>(i)]; }
  const std::string& field_name(int i) const { return field_names_[static_cast<size_t>(i)]; }

  const std::vector<Poly>& first_of_second() const { return first_of_second_; }
  const std::vector<Poly>& second_of_first() const { return second_of_first_; }
  const std::vector<Poly>& product_map() const { return product_; }
  const std::vector<Poly>& inverse_map() const { return inverse_; }

  const VectorField& left_field(int b) const { return left_frame_[static_cast<size_t>(b)]; }
  const VectorField& right_field(int b) const { return right_frame_[static_cast<size_t>(b)]; }
  const std::vector<VectorField>& left_frame() const { return left_frame_; }
  const std::vector<VectorField>& right_frame() const { return right_frame_; }

  /// Slot indices of weight-1 basis vectors (the horizontal frame alphabet).
  const std::vector<int>& horizontal() const { return horizontal_; }

  template <class S>
  std::vector<S> to_first(const std::vector<S>& p) const {
    return eval_map(first_of_second_, p);
  }
  template <class S>
  std::vector<S> to_second(const std::vector<S>& xi) const {
    return eval_map(second_of_first_, xi);
  }
  template <class S>
  std::vector<S> multiply(const std::vector<S>& a, const std::vector<S>& b) const {
    std::vector<S> ab(a);
    ab.insert(ab.end(), b.begin(), b.end());
    return eval_map(product_, ab);
  }
  template <class S>
  std::vector<S> inverse(const std::vector<S>& p) const {
    return eval_map(inverse_, p);
  }
  /// Group dilation delta_lambda in either chart; lambda must be positive.
  template <class S, class L>
  std::vector<S> dilate_point(const std::vector<S>& p, const L& lambda) const {
    if (!(lambda > L(0)))
      throw Error(ErrorCode::BadInput, "dilation parameter must be positive");
    std::vector<S> out(p);
    for (int i = 0; i < dim(); ++i) {
      S f = S(1);
      for (int k = 0; k < alg_.weight(i); ++k) f = f * S(lambda);
      out[static_cast<size_t>(i)] = p[static_cast<size_t>(i)] * f;
    }
    return out;
  }

  GroupPoint to_first_kind(const GroupPoint& p) const;
  GroupPoint to_second_kind(const GroupPoint& p) const;

  /// max_i |xi_i|^(1/w_i) over first-kind coordinates: a homogeneous
  /// quasi-norm standing in for the Carnot-Caratheodory distance from the
  /// identity; 1-homogeneous under dilations, exact for dyadic lambda.
  double quasi_norm_first(const std::vector<double>& xi) const;
  double quasi_norm(const std::vector<double>& second_kind) const;

  /// Left-invariant proxy distance d(g,h) = N(g^{-1} h).
  double dist(const std::vector<double>& g, const std::vector<double>& h) const;

  /// Coordinates of g0 * u as polynomials in u (exact for rational g0).
  std::vector<Poly> left_translation(const RatVec& g0) const;
  /// Coordinates of u * g0 as polynomials in u.
  std::vector<Poly> right_translation(const RatVec& g0) const;

  std::vector<double> to_doubles(const RatVec& p) const;

 private:
  template <class S>
  std::vector<S> eval_map(const std::vector<Poly>& map,
                          const std::vector<S>& point) const {
    std::vector<S> out;
    out.reserve(map.size());
    for (const auto& p : map) out.push_back(p.template eval<S>(point));
    return out;
  }

  StratifiedAlgebra alg_;
  int ell_;
  VarSetPtr coords_;   // second-kind coordinates
  VarSetPtr zvars_;    // first-kind components, used by second_of_first_
  VarSetPtr pvars_;    // product variables (a..., b...)
  std::vector<std::string> field_names_;
  std::vector<int> horizontal_;

  std::vector<Poly> first_of_second_;  // over coords_
  std::vector<Poly> second_of_first_;  // over zvars_
  std::vector<Poly> product_;          // over pvars_
  std::vector<Poly> inverse_;          // over coords_
  std::vector<VectorField> left_frame_;
  std::vector<VectorField> right_frame_;
};

/// |x|^(1/w) via correctly-rounded roots where possible.
double weighted_root(double x, int w);

}  // namespace carnot

#endif
