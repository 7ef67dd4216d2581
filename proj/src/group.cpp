#include "carnot/group.hpp"

#include <cctype>
#include <cmath>

namespace carnot {

namespace {

std::vector<Poly> block_element(const VarSetPtr& vars, int n, int from, int to,
                                const std::vector<int>& var_index) {
  // algebra element whose slot i carries the coordinate variable of slot i
  // for i in [from,to), zero elsewhere
  std::vector<Poly> e(static_cast<size_t>(n), Poly(vars));
  for (int i = from; i < to; ++i)
    e[static_cast<size_t>(i)] = Poly::variable(vars, var_index[static_cast<size_t>(i)]);
  return e;
}

}  // namespace

CarnotGroup::CarnotGroup(StratifiedAlgebra alg, int ell,
                         std::vector<std::string> coord_names,
                         std::vector<std::string> field_names)
    : alg_(std::move(alg)), ell_(ell) {
  const int n = alg_.dim();
  if (ell_ < 0 || ell_ >= n)
    throw Error(ErrorCode::BadInput, "subalgebra block size out of range");

  if (coord_names.empty()) {
    for (int i = 0; i < ell_; ++i) coord_names.push_back("y" + std::to_string(i + 1));
    for (int j = 0; j < n - ell_; ++j) coord_names.push_back("x" + std::to_string(j + 1));
  }
  if (field_names.empty()) {
    for (const auto& c : coord_names) {
      std::string f = c;
      f[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(f[0])));
      field_names.push_back(f);
    }
  }
  if (static_cast<int>(coord_names.size()) != n ||
      static_cast<int>(field_names.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "coordinate naming size mismatch");
  field_names_ = std::move(field_names);

  coords_ = make_vars(coord_names, alg_.weights());
  std::vector<std::string> znames, pnames;
  std::vector<int> pweights;
  for (int i = 0; i < n; ++i) znames.push_back("z" + std::to_string(i + 1));
  zvars_ = make_vars(znames, alg_.weights());
  for (int i = 0; i < n; ++i) {
    pnames.push_back("a_" + coord_names[static_cast<size_t>(i)]);
    pweights.push_back(alg_.weight(i));
  }
  for (int i = 0; i < n; ++i) {
    pnames.push_back("b_" + coord_names[static_cast<size_t>(i)]);
    pweights.push_back(alg_.weight(i));
  }
  pvars_ = make_vars(pnames, pweights);

  for (int i = 0; i < n; ++i)
    if (alg_.weight(i) == 1) horizontal_.push_back(i);

  // first-kind components of exp(sum y_i w_i) exp(sum x_j v_j)
  std::vector<int> ident(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ident[static_cast<size_t>(i)] = i;
  auto ypart = block_element(coords_, n, 0, ell_, ident);
  auto xpart = block_element(coords_, n, ell_, n, ident);
  first_of_second_ = bch(alg_, ypart, xpart);

  // invert layer by layer: filling a weight-w slot changes the weight-w
  // component linearly and leaves lower weights untouched
  std::vector<Poly> cur(static_cast<size_t>(n), Poly(zvars_));
  for (int w = 1; w <= alg_.step(); ++w) {
    std::vector<Poly> yp(static_cast<size_t>(n), Poly(zvars_));
    std::vector<Poly> xp(static_cast<size_t>(n), Poly(zvars_));
    for (int i = 0; i < ell_; ++i) yp[static_cast<size_t>(i)] = cur[static_cast<size_t>(i)];
    for (int i = ell_; i < n; ++i) xp[static_cast<size_t>(i)] = cur[static_cast<size_t>(i)];
    auto f = bch(alg_, yp, xp);
    for (int i = 0; i < n; ++i)
      if (alg_.weight(i) == w)
        cur[static_cast<size_t>(i)] += Poly::variable(zvars_, i) - f[static_cast<size_t>(i)];
  }
  second_of_first_ = cur;

  for (int i = 0; i < n; ++i) {
    Poly roundtrip = first_of_second_[static_cast<size_t>(i)].substitute(second_of_first_);
    if (roundtrip != Poly::variable(zvars_, i))
      throw Error(ErrorCode::NonInvertible,
                  "second-kind chart failed to invert at slot " + std::to_string(i));
  }

  // group law in second-kind coordinates
  std::vector<Poly> avars, bvars;
  for (int i = 0; i < n; ++i) avars.push_back(Poly::variable(pvars_, i));
  for (int i = 0; i < n; ++i) bvars.push_back(Poly::variable(pvars_, n + i));
  std::vector<Poly> ua, ub;
  for (int i = 0; i < n; ++i) {
    ua.push_back(first_of_second_[static_cast<size_t>(i)].substitute(avars));
    ub.push_back(first_of_second_[static_cast<size_t>(i)].substitute(bvars));
  }
  auto w = bch(alg_, ua, ub);
  for (int i = 0; i < n; ++i)
    product_.push_back(second_of_first_[static_cast<size_t>(i)].substitute(w));

  // inverse: negate first-kind coordinates
  std::vector<Poly> neg;
  for (int i = 0; i < n; ++i) neg.push_back(-first_of_second_[static_cast<size_t>(i)]);
  for (int i = 0; i < n; ++i)
    inverse_.push_back(second_of_first_[static_cast<size_t>(i)].substitute(neg));

  // frames: derivative at t=0 of g*exp(t e_b) (left) and exp(t e_b)*g (right)
  std::vector<std::string> tnames = coord_names;
  std::vector<int> tweights = alg_.weights();
  tnames.push_back("t");
  tweights.push_back(1);
  VarSetPtr tvars = make_vars(tnames, tweights);

  auto linear_in_t = [&](const Poly& p) {
    Poly out(coords_);
    for (const auto& [e, c] : p.terms()) {
      if (e.back() != 1) continue;
      Exponents stripped(e.begin(), e.end() - 1);
      out.add_term(stripped, c);
    }
    return out;
  };

  for (int b = 0; b < n; ++b) {
    std::vector<Poly> sub_left, sub_right;
    for (int i = 0; i < n; ++i) sub_left.push_back(Poly::variable(tvars, i));
    for (int i = 0; i < n; ++i)
      sub_left.push_back(i == b ? Poly::variable(tvars, n) : Poly(tvars));
    for (int i = 0; i < n; ++i)
      sub_right.push_back(i == b ? Poly::variable(tvars, n) : Poly(tvars));
    for (int i = 0; i < n; ++i) sub_right.push_back(Poly::variable(tvars, i));

    VectorField lf{coords_, {}, Invariance::left, alg_.weight(b), field_names_[static_cast<size_t>(b)]};
    VectorField rf{coords_, {}, Invariance::right, alg_.weight(b),
                   field_names_[static_cast<size_t>(b)] + "_r"};
    for (int i = 0; i < n; ++i) {
      lf.comp.push_back(linear_in_t(product_[static_cast<size_t>(i)].substitute(sub_left)));
      rf.comp.push_back(linear_in_t(product_[static_cast<size_t>(i)].substitute(sub_right)));
    }
    left_frame_.push_back(std::move(lf));
    right_frame_.push_back(std::move(rf));
  }
}

GroupPoint CarnotGroup::to_first_kind(const GroupPoint& p) const {
  if (p.kind == GroupPoint::Kind::first) return p;
  std::vector<Rational> in(p.coords.data(), p.coords.data() + p.coords.size());
  auto out = to_first(in);
  GroupPoint q;
  q.kind = GroupPoint::Kind::first;
  q.coords = RatVec(p.coords.size());
  for (int i = 0; i < q.coords.size(); ++i) q.coords[i] = out[static_cast<size_t>(i)];
  return q;
}

GroupPoint CarnotGroup::to_second_kind(const GroupPoint& p) const {
  if (p.kind == GroupPoint::Kind::second) return p;
  std::vector<Rational> in(p.coords.data(), p.coords.data() + p.coords.size());
  auto out = to_second(in);
  GroupPoint q;
  q.kind = GroupPoint::Kind::second;
  q.coords = RatVec(p.coords.size());
  for (int i = 0; i < q.coords.size(); ++i) q.coords[i] = out[static_cast<size_t>(i)];
  return q;
}

double weighted_root(double x, int w) {
  switch (w) {
    case 1: return x;
    case 2: return std::sqrt(x);
    case 3: return std::cbrt(x);
    case 4: return std::sqrt(std::sqrt(x));
    case 6: return std::cbrt(std::sqrt(x));
    case 8: return std::sqrt(std::sqrt(std::sqrt(x)));
    default: return std::pow(x, 1.0 / w);
  }
}

double CarnotGroup::quasi_norm_first(const std::vector<double>& xi) const {
  double best = 0.0;
  for (int i = 0; i < dim(); ++i) {
    double v = weighted_root(std::fabs(xi[static_cast<size_t>(i)]), alg_.weight(i));
    if (v > best) best = v;
  }
  return best;
}

double CarnotGroup::quasi_norm(const std::vector<double>& p) const {
  return quasi_norm_first(to_first(p));
}

double CarnotGroup::dist(const std::vector<double>& g,
                         const std::vector<double>& h) const {
  return quasi_norm(multiply(inverse(g), h));
}

std::vector<Poly> CarnotGroup::left_translation(const RatVec& g0) const {
  const int n = dim();
  std::vector<Poly> sub;
  for (int i = 0; i < n; ++i) sub.push_back(Poly::constant(coords_, g0[i]));
  for (int i = 0; i < n; ++i) sub.push_back(Poly::variable(coords_, i));
  std::vector<Poly> out;
  for (int i = 0; i < n; ++i) out.push_back(product_[static_cast<size_t>(i)].substitute(sub));
  return out;
}

std::vector<Poly> CarnotGroup::right_translation(const RatVec& g0) const {
  const int n = dim();
  std::vector<Poly> sub;
  for (int i = 0; i < n; ++i) sub.push_back(Poly::variable(coords_, i));
  for (int i = 0; i < n; ++i) sub.push_back(Poly::constant(coords_, g0[i]));
  std::vector<Poly> out;
  for (int i = 0; i < n; ++i) out.push_back(product_[static_cast<size_t>(i)].substitute(sub));
  return out;
}

std::vector<double> CarnotGroup::to_doubles(const RatVec& p) const {
  std::vector<double> out(static_cast<size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) out[static_cast<size_t>(i)] = to_double(p[i]);
  return out;
}

}  // namespace carnot
