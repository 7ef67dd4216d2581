#include "carnot/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace carnot {

QuotientModel::QuotientModel(std::shared_ptr<const CarnotGroup> G) : G_(std::move(G)) {
  const int n = G_->dim();
  const int l = G_->ell();

  std::vector<std::string> names;
  std::vector<int> weights;
  for (int j = l; j < n; ++j) {
    names.push_back(G_->coord_name(j));
    weights.push_back(G_->algebra().weight(j));
  }
  slice_ = make_vars(names, weights);

  // Pi_* X~_b: x-components with y = 0
  std::vector<Poly> y_zero;
  for (int i = 0; i < n; ++i) {
    if (i < l)
      y_zero.push_back(Poly(slice_));
    else
      y_zero.push_back(Poly::variable(slice_, i - l));
  }
  for (int b = 0; b < n; ++b) {
    const VectorField& xf = G_->left_field(b);
    VectorField pf{slice_, {}, Invariance::projected, xf.hom_degree, G_->field_name(b)};
    for (int j = l; j < n; ++j)
      pf.comp.push_back(xf.comp[static_cast<size_t>(j)].substitute(y_zero));
    if (pf.is_zero()) zero_projected_.push_back(b);
    projected_.push_back(std::move(pf));
  }
}

RatVec QuotientModel::project(const RatVec& g) const {
  return g.segment(ell(), m());
}

bool QuotientModel::subgroup_is_normal() const {
  const auto& alg = G_->algebra();
  for (int h = 0; h < ell(); ++h)
    for (int i = 0; i < G_->dim(); ++i)
      for (const auto& [k, c] : alg.bracket_row(h, i)) {
        (void)c;
        if (k >= ell()) return false;
      }
  return true;
}

RatVec QuotientModel::include(const RatVec& p) const {
  RatVec g = RatVec::Constant(G_->dim(), Rational(0));
  g.segment(ell(), m()) = p;
  return g;
}

Poly QuotientModel::lift(const Poly& f_on_M) const {
  std::vector<Poly> images;
  for (int j = 0; j < m(); ++j)
    images.push_back(Poly::variable(G_->coords(), ell() + j));
  return f_on_M.substitute(images);
}

PolyD QuotientModel::lift(const PolyD& f_on_M) const {
  std::vector<PolyD> images;
  for (int j = 0; j < m(); ++j)
    images.push_back(PolyD::variable(G_->coords(), ell() + j));
  return f_on_M.substitute(images);
}

Poly QuotientModel::restrict_to_slice(const Poly& f_on_G) const {
  std::vector<Poly> map;
  for (int i = 0; i < G_->dim(); ++i) {
    if (i < ell())
      map.push_back(Poly(slice_));
    else
      map.push_back(Poly::variable(slice_, i - ell()));
  }
  return f_on_G.substitute(map);
}

PolyD QuotientModel::restrict_to_slice(const PolyD& f_on_G) const {
  std::vector<PolyD> map;
  for (int i = 0; i < G_->dim(); ++i) {
    if (i < ell())
      map.push_back(PolyD(slice_));
    else
      map.push_back(PolyD::variable(slice_, i - ell()));
  }
  return f_on_G.substitute(map);
}

std::vector<double> QuotientModel::h_point(const std::vector<double>& y) const {
  std::vector<double> g(static_cast<size_t>(G_->dim()), 0.0);
  for (int i = 0; i < ell(); ++i) g[static_cast<size_t>(i)] = y[static_cast<size_t>(i)];
  return g;
}

namespace {

// Deterministic compass search on a non-smooth objective: probe +-h along each
// axis, accept the best improvement, halve the steps otherwise.
struct PatternSearch {
  long evaluations = 0;

  template <class F>
  std::pair<std::vector<double>, double> run(F&& objective,
                                             std::vector<double> y,
                                             std::vector<double> h,
                                             double tol, int budget) {
    double fy = objective(y);
    ++evaluations;
    int evals = 1;
    while (evals < budget) {
      double best = fy;
      int best_axis = -1;
      double best_step = 0.0;
      for (size_t i = 0; i < y.size(); ++i) {
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> probe = y;
          probe[i] += sgn * h[i];
          double fp = objective(probe);
          ++evals;
          ++evaluations;
          if (fp < best) {
            best = fp;
            best_axis = static_cast<int>(i);
            best_step = sgn * h[i];
          }
          if (evals >= budget) break;
        }
        if (evals >= budget) break;
      }
      if (best_axis >= 0) {
        y[static_cast<size_t>(best_axis)] += best_step;
        fy = best;
      } else {
        double hmax = 0.0;
        for (double hi : h) hmax = std::max(hmax, hi);
        if (hmax < tol) break;
        for (auto& hi : h) hi *= 0.5;
      }
    }
    return {y, fy};
  }
};

}  // namespace

OrbitDistanceResult QuotientModel::orbit_distance(const std::vector<double>& p,
                                                  const std::vector<double>& q,
                                                  const OrbitConfig& cfg) const {
  const int l = ell();
  auto ip = include(p);
  auto iq = include(q);
  OrbitDistanceResult res;
  if (l == 0) {
    res.value = G_->dist(ip, iq);
    res.minimizer = {};
    res.converged = true;
    res.evaluations = 1;
    return res;
  }

  auto objective = [&](const std::vector<double>& y) {
    auto hq = G_->multiply(h_point(y), iq);
    return G_->dist(ip, hq);
  };

  double scale = G_->dist(ip, iq);
  if (scale == 0.0) {
    res.value = 0.0;
    res.minimizer.assign(static_cast<size_t>(l), 0.0);
    res.converged = true;
    res.evaluations = 1;
    return res;
  }

  // starts: y = 0, plus two axis perturbations per H-coordinate scaled
  // homogeneously, plus caller-provided warm starts
  std::vector<std::vector<double>> starts;
  starts.emplace_back(static_cast<size_t>(l), 0.0);
  for (int i = 0; i < l; ++i) {
    double s = std::pow(scale, G_->algebra().weight(i));
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> y(static_cast<size_t>(l), 0.0);
      y[static_cast<size_t>(i)] = sgn * s;
      starts.push_back(std::move(y));
    }
  }
  for (const auto& y : cfg.extra_starts) {
    if (static_cast<int>(y.size()) != l)
      throw Error(ErrorCode::BadInput, "warm start has wrong H-dimension");
    starts.push_back(y);
  }

  PatternSearch search;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_y;
  std::vector<double> locals;
  for (const auto& start : starts) {
    std::vector<double> h(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i)
      h[static_cast<size_t>(i)] = 0.5 * std::pow(scale, G_->algebra().weight(i));
    auto [y, fy] = search.run(objective, start, h, cfg.abs_tol * std::max(1.0, scale),
                              cfg.budget_per_start);
    locals.push_back(fy);
    if (fy < best) {
      best = fy;
      best_y = y;
    }
  }
  bool agree = true;
  for (double fy : locals)
    if (fy - best > cfg.agree_rel_tol * std::max(best, 1e-300)) agree = false;
  res.value = best;
  res.minimizer = best_y;
  res.evaluations = search.evaluations;
  res.converged = agree;
  return res;
}

std::vector<double> QuotientModel::lift_point(const std::vector<double>& p,
                                              const std::vector<double>& q,
                                              const OrbitConfig& cfg) const {
  if (ell() == 0) return include(p);
  return lift_from(p, orbit_distance(p, q, cfg));
}

std::vector<double> QuotientModel::lift_from(const std::vector<double>& p,
                                             const OrbitDistanceResult& orbit) const {
  if (ell() == 0) return include(p);
  // d(iota p, exp(y* w) iota q) = d(exp(-y* w) iota p, iota q); the lift is
  // exp(-y* w) iota(p), whose projection is p again
  std::vector<double> first(static_cast<size_t>(group().dim()), 0.0);
  for (int i = 0; i < ell(); ++i)
    first[static_cast<size_t>(i)] = -orbit.minimizer[static_cast<size_t>(i)];
  auto h = group().to_second(first);
  return group().multiply(h, include(p));
}

QuotientModel build_quotient(const StratifiedAlgebra& alg, const SubgroupSpec& spec,
                             std::vector<std::string> coord_names,
                             std::vector<std::string> field_names) {
  const int n = alg.dim();
  std::vector<int> gens = spec.generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (int g : gens)
    if (g < 0 || g >= n)
      throw Error(ErrorCode::BadInput, "subgroup generator index out of range");

  const int l = static_cast<int>(gens.size());
  if (n - l < 1)
    throw Error(ErrorCode::TrivialQuotient, "complement dimension m = 0");

  std::vector<bool> in_h(static_cast<size_t>(n), false);
  for (int g : gens) in_h[static_cast<size_t>(g)] = true;
  for (int a : gens)
    for (int b : gens)
      for (const auto& [k, c] : alg.bracket_row(a, b)) {
        (void)c;
        if (!in_h[static_cast<size_t>(k)])
          throw Error(ErrorCode::NotASubalgebra,
                      "[" + alg.name(a) + "," + alg.name(b) + "] leaves the span (" +
                          alg.name(k) + ")");
      }

  // adapted ordering: subalgebra block first (spec order respected via the
  // original generator list), complement in basis order
  std::vector<int> order = spec.generators;
  order.erase(std::unique(order.begin(), order.end()), order.end());
  for (int i = 0; i < n; ++i)
    if (!in_h[static_cast<size_t>(i)]) order.push_back(i);

  auto G = std::make_shared<const CarnotGroup>(alg.permuted(order), l,
                                               std::move(coord_names),
                                               std::move(field_names));
  return QuotientModel(G);
}

}  // namespace carnot
