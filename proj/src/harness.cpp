#include "carnot/harness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace carnot {

namespace {

std::vector<double> to_doubles(const RatVec& v) {
  std::vector<double> out(static_cast<size_t>(v.size()));
  for (int i = 0; i < v.size(); ++i) out[static_cast<size_t>(i)] = to_double(v[i]);
  return out;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// least-squares slope of log(remainder) against log(distance)
std::pair<bool, double> loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& [d, r] : pts)
    if (d > 0.0 && r > 0.0) usable.emplace_back(std::log(d), std::log(r));
  if (usable.size() < 2) return {false, 0.0};
  Eigen::MatrixXd a(static_cast<int>(usable.size()), 2);
  Eigen::VectorXd b(static_cast<int>(usable.size()));
  for (size_t i = 0; i < usable.size(); ++i) {
    a(static_cast<int>(i), 0) = 1.0;
    a(static_cast<int>(i), 1) = usable[i].first;
    b(static_cast<int>(i)) = usable[i].second;
  }
  Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
  return {true, coef(1)};
}

struct HorizontalWords {
  std::vector<const VectorField*> fields;  // horizontal projected frame
  std::vector<Word> words;                 // d(I) <= kmax over that alphabet
};

HorizontalWords horizontal_words(const QuotientModel& M, int kmax) {
  HorizontalWords hw;
  for (int slot : M.horizontal()) hw.fields.push_back(&M.projected_field(slot));
  std::vector<int> weights(hw.fields.size(), 1);
  hw.words = enumerate_words(weights, kmax, false);
  return hw;
}

// |X^I f| for every word, from a single jet of f at the point
std::vector<double> word_values_at(const QuotientModel& M, const HorizontalWords& hw,
                                   const ExprPtr& f, const std::vector<double>& point,
                                   int kmax) {
  JetD base = f->jet(M.slice(), point, kmax);
  std::map<std::vector<int>, JetD> cache;
  std::vector<double> out;
  out.reserve(hw.words.size());
  for (const auto& w : hw.words) {
    if (w.letters.empty()) {
      cache.emplace(w.letters, base);
      out.push_back(base.value());
      continue;
    }
    std::vector<int> suffix(w.letters.begin() + 1, w.letters.end());
    const JetD& tail = cache.at(suffix);
    JetD value = hw.fields[static_cast<size_t>(w.letters.front())]->apply(tail);
    out.push_back(value.value());
    cache.emplace(w.letters, std::move(value));
  }
  return out;
}

std::vector<double> y_part(const QuotientModel& M, const std::vector<double>& g) {
  return std::vector<double>(g.begin(), g.begin() + M.ell());
}

}  // namespace

std::vector<double> sample_quasi_ball_first(const CarnotGroup& G, double r, Rng& rng) {
  std::vector<double> xi(static_cast<size_t>(G.dim()));
  for (int i = 0; i < G.dim(); ++i) {
    double s = std::pow(r, G.algebra().weight(i));
    xi[static_cast<size_t>(i)] = rng.uniform(-s, s);
  }
  return xi;
}

std::vector<double> sample_ball_G(const CarnotGroup& G,
                                  const std::vector<double>& g0, double r, Rng& rng) {
  auto xi = sample_quasi_ball_first(G, r, rng);
  return G.multiply(g0, G.to_second(xi));
}

std::vector<double> sample_ball_M(const QuotientModel& M,
                                  const std::vector<double>& q, double r, Rng& rng) {
  auto g = sample_ball_G(M.group(), M.include(q), r, rng);
  return M.project(g);
}

OrbitDistanceResult orbit_distance_witnessed(const QuotientModel& M,
                                             const std::vector<double>& p,
                                             const std::vector<double>& q,
                                             const std::vector<double>& witness_y) {
  OrbitConfig cfg;
  if (!witness_y.empty()) cfg.extra_starts.push_back(witness_y);
  return M.orbit_distance(p, q, cfg);
}

RemainderReport check_mean_value(const QuotientModel& M, const ExprPtr& f,
                                 const RatVec& q, const HarnessConfig& cfg) {
  RemainderReport report;
  report.seed = cfg.seed;
  const CarnotGroup& G = M.group();
  Rng rng(cfg.seed);
  auto qd = to_doubles(q);
  auto g0 = M.include(qd);
  double fq = f->eval(qd);
  auto scales = cfg.effective_scales();
  auto hw = horizontal_words(M, 1);

  std::vector<double> ratios;
  for (int ray = 0; ray < cfg.rays; ++ray) {
    Rng ray_rng = rng.derive(1000 + static_cast<uint64_t>(ray));
    auto xi0 = sample_quasi_ball_first(G, 1.0, ray_rng);
    for (size_t si = 0; si < scales.size(); ++si) {
      double lambda = scales[si];
      std::vector<double> xi(xi0);
      for (int i = 0; i < G.dim(); ++i)
        xi[static_cast<size_t>(i)] *= std::pow(lambda, G.algebra().weight(i));
      auto g = G.multiply(g0, G.to_second(xi));
      auto p = M.project(g);
      std::vector<double> witness = y_part(M, g);
      for (auto& v : witness) v = -v;
      auto orbit = orbit_distance_witnessed(M, p, qd, witness);
      double dist = orbit.value;
      if (dist <= 0.0) continue;

      double numer = std::fabs(f->eval(p) - fq);
      Rng sup_rng = rng.derive(2000 + static_cast<uint64_t>(ray) * 64 + si);
      double sup = 0.0;
      for (int s = 0; s < cfg.sup_samples; ++s) {
        auto pt = sample_ball_M(M, qd, cfg.b * dist, sup_rng);
        auto vals = word_values_at(M, hw, f, pt, 1);
        for (size_t wi = 0; wi < hw.words.size(); ++wi)
          if (hw.words[wi].length() == 1) sup = std::max(sup, std::fabs(vals[wi]));
      }

      RemainderSample sample{lambda, dist, numer, sup};
      report.samples.push_back(sample);
      if (numer == 0.0) {
        ratios.push_back(0.0);
      } else if (sup <= cfg.tolerance * std::max(1.0, numer)) {
        ++report.degenerate_count;
        report.notes.push_back("DegenerateSample: horizontal derivatives vanish on ball at lambda=" +
                               std::to_string(lambda));
      } else {
        ratios.push_back(numer / (dist * sup));
      }
    }
  }

  std::sort(report.samples.begin(), report.samples.end(),
            [](const RemainderSample& a, const RemainderSample& b) {
              return a.lambda > b.lambda;
            });
  if (!ratios.empty()) {
    double mx = *std::max_element(ratios.begin(), ratios.end());
    double med = median_of(ratios);
    report.estimated_constants["c1_max_ratio"] = mx;
    report.estimated_constants["c1_median_ratio"] = med;
    report.pass = mx <= 4.0 * med || mx == 0.0;
  } else {
    report.pass = report.degenerate_count == 0;
    report.notes.push_back("no usable ratios collected");
  }
  return report;
}

RemainderReport check_taylor_remainder(const QuotientModel& M, const ExprPtr& f,
                                       const RatVec& q, int k,
                                       const HarnessConfig& cfg) {
  RemainderReport report;
  report.seed = cfg.seed;
  const CarnotGroup& G = M.group();

  PolyD taylor_eval(M.slice());
  if (f->is_polynomial()) {
    Poly fp = f->to_polynomial(M.slice());
    auto tay = taylor_on_M(M, fp, q, k);
    Poly residual = fp - tay.polynomial;
    if (residual.is_zero()) {
      report.exact_zero = true;
      report.pass = true;
      report.notes.push_back("remainder vanishes symbolically");
      return report;
    }
    taylor_eval = to_double_poly(tay.polynomial);
  } else {
    auto tay = taylor_on_M(M, f, q, k);
    taylor_eval = tay.polynomial;
  }

  Rng rng(cfg.seed);
  auto qd = to_doubles(q);
  auto g0 = M.include(qd);
  auto scales = cfg.effective_scales();
  auto hw = horizontal_words(M, k + 1);
  std::vector<double> values_q;
  if (cfg.estimate_constants) values_q = word_values_at(M, hw, f, qd, k + 1);

  std::vector<std::pair<double, double>> fit_points;
  double ck_prime = 0.0, ck_theorem = 0.0;
  for (int ray = 0; ray < cfg.rays; ++ray) {
    Rng ray_rng = rng.derive(1000 + static_cast<uint64_t>(ray));
    auto xi0 = sample_quasi_ball_first(G, 1.0, ray_rng);
    for (size_t si = 0; si < scales.size(); ++si) {
      double lambda = scales[si];
      std::vector<double> xi(xi0);
      for (int i = 0; i < G.dim(); ++i)
        xi[static_cast<size_t>(i)] *= std::pow(lambda, G.algebra().weight(i));
      auto g = G.multiply(g0, G.to_second(xi));
      auto p = M.project(g);
      std::vector<double> witness = y_part(M, g);
      for (auto& v : witness) v = -v;
      auto orbit = orbit_distance_witnessed(M, p, qd, witness);
      double dist = orbit.value;
      if (dist <= 0.0) continue;

      double remainder = std::fabs(f->eval(p) - taylor_eval.eval<double>(p));
      fit_points.emplace_back(dist, remainder);

      double lagrange_sup = 0.0;
      if (cfg.estimate_constants) {
        Rng sup_rng = rng.derive(3000 + static_cast<uint64_t>(ray) * 64 + si);
        double eta = 0.0;
        for (int s = 0; s < cfg.sup_samples; ++s) {
          auto pt = sample_ball_M(M, qd, std::pow(cfg.b, k + 1) * dist, sup_rng);
          auto vals = word_values_at(M, hw, f, pt, k + 1);
          for (size_t wi = 0; wi < hw.words.size(); ++wi)
            if (hw.words[wi].degree == k + 1)
              lagrange_sup = std::max(lagrange_sup, std::fabs(vals[wi]));
        }
        Rng eta_rng = rng.derive(4000 + static_cast<uint64_t>(ray) * 64 + si);
        for (int s = 0; s < cfg.sup_samples; ++s) {
          auto pt = sample_ball_M(M, qd, std::pow(cfg.b, k) * dist, eta_rng);
          auto vals = word_values_at(M, hw, f, pt, k + 1);
          for (size_t wi = 0; wi < hw.words.size(); ++wi)
            if (hw.words[wi].degree == k)
              eta = std::max(eta, std::fabs(vals[wi] - values_q[wi]));
        }
        if (remainder > 0.0 && lagrange_sup > 0.0)
          ck_prime = std::max(ck_prime,
                              remainder / (std::pow(dist, k + 1) * lagrange_sup));
        if (remainder > 0.0 && eta > 0.0)
          ck_theorem = std::max(ck_theorem, remainder / (std::pow(dist, k) * eta));
      }
      report.samples.push_back({lambda, dist, remainder, lagrange_sup});
    }
  }

  std::sort(report.samples.begin(), report.samples.end(),
            [](const RemainderSample& a, const RemainderSample& b) {
              return a.lambda > b.lambda;
            });
  auto [defined, slope] = loglog_slope(fit_points);
  report.slope_defined = defined;
  report.fitted_slope = slope;
  if (cfg.estimate_constants) {
    report.estimated_constants["Ck_prime_max"] = ck_prime;
    report.estimated_constants["Ck_theorem_max"] = ck_theorem;
  }
  bool all_zero = true;
  for (const auto& [d, r] : fit_points) {
    (void)d;
    if (r != 0.0) all_zero = false;
  }
  if (all_zero && !fit_points.empty()) {
    report.pass = true;
    report.notes.push_back("remainder numerically zero along all rays");
  } else {
    report.pass = defined && slope >= static_cast<double>(k + 1) - 0.2;
  }
  return report;
}

SupTransferReport check_sup_transfer(const QuotientModel& M, const ExprPtr& phi,
                                     const RatVec& q, double radius, int n_samples,
                                     const HarnessConfig& cfg) {
  if (radius <= 0.0) throw Error(ErrorCode::BadInput, "ball radius must be positive");
  SupTransferReport report;
  report.seed = cfg.seed;
  report.samples = n_samples;
  const CarnotGroup& G = M.group();
  Rng rng(cfg.seed);
  auto qd = to_doubles(q);
  auto g0 = M.include(qd);
  const double slack = 1.0 + 1e-6;

  // (a) over B_M(q, r) with certified lifts
  Rng rng_m = rng.derive(1);
  double sup_m = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    auto g = sample_ball_G(G, g0, radius, rng_m);
    auto p = M.project(g);
    std::vector<double> witness = y_part(M, g);
    for (auto& v : witness) v = -v;
    auto orbit = orbit_distance_witnessed(M, p, qd, witness);
    if (orbit.value > radius * slack) {
      ++report.lift_failures;
      report.notes.push_back("LiftFailed: orbit distance " + std::to_string(orbit.value) +
                             " exceeds radius");
      continue;
    }
    // the lift realizes |phi(p)| = |Phi(g_lift)| by H-invariance of the lift
    auto lifted = M.lift_from(p, orbit);
    double phival = std::fabs(phi->eval(p));
    double lift_val = std::fabs(phi->eval(M.project(lifted)));
    if (std::fabs(phival - lift_val) > 1e-12 * std::max(1.0, phival)) {
      report.notes.push_back("lift changed the function value");
      ++report.lift_failures;
    }
    sup_m = std::max(sup_m, phival);
  }

  // (b) over B_G(iota q, r), evaluated through the projection
  Rng rng_g = rng.derive(2);
  double sup_g = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    auto g = sample_ball_G(G, g0, radius, rng_g);
    auto p = M.project(g);
    std::vector<double> witness = y_part(M, g);
    for (auto& v : witness) v = -v;
    auto orbit = orbit_distance_witnessed(M, p, qd, witness);
    if (orbit.value > radius * slack) {
      ++report.lift_failures;
      report.notes.push_back("projection left the quotient ball");
      continue;
    }
    sup_g = std::max(sup_g, std::fabs(phi->eval(p)));
  }

  report.sup_on_M = sup_m;
  report.sup_on_G = sup_g;
  double denom = std::max({sup_m, sup_g, 1e-30});
  report.rel_gap = std::fabs(sup_m - sup_g) / denom;
  report.pass = report.rel_gap <= 0.05 && report.lift_failures == 0;
  return report;
}

ProbeReport probe_analyticity(const QuotientModel& M, const ExprPtr& f,
                              const RatVec& p, double rho,
                              const std::vector<double>& k_grid, int k_max,
                              int n_samples, const HarnessConfig& cfg) {
  if (k_max < 1 || k_max > 6)
    throw Error(ErrorCode::BadInput,
                "probe degree cap must lie in 1..6 (word count growth)");
  if (rho <= 0.0) throw Error(ErrorCode::BadInput, "ball radius must be positive");
  ProbeReport report;
  report.k_grid = k_grid;
  std::sort(report.k_grid.begin(), report.k_grid.end());
  report.k_max = k_max;
  report.rho = rho;
  report.seed = cfg.seed;
  report.notes.push_back(
      "hypothesis read as: for all k <= k_max and all horizontal I with d(I) = k");

  Rng rng(cfg.seed);
  auto pd = to_doubles(p);
  auto hw = horizontal_words(M, k_max);
  report.sup_by_degree.assign(static_cast<size_t>(k_max), 0.0);

  Rng ball_rng = rng.derive(7);
  for (int s = 0; s < n_samples; ++s) {
    auto pt = sample_ball_M(M, pd, rho, ball_rng);
    auto vals = word_values_at(M, hw, f, pt, k_max);
    for (size_t wi = 0; wi < hw.words.size(); ++wi) {
      int d = hw.words[wi].degree;
      if (d >= 1)
        report.sup_by_degree[static_cast<size_t>(d - 1)] =
            std::max(report.sup_by_degree[static_cast<size_t>(d - 1)],
                     std::fabs(vals[wi]));
    }
  }

  for (double K : report.k_grid) {
    bool ok = true;
    double kfact = 1.0;
    for (int k = 1; k <= k_max; ++k) {
      kfact *= k;
      if (report.sup_by_degree[static_cast<size_t>(k - 1)] > std::pow(K, k) * kfact) {
        ok = false;
        break;
      }
    }
    if (ok) {
      report.smallest_K = K;
      break;
    }
  }
  return report;
}

OperatorSpec parse_operator(const std::string& text, const QuotientModel& M) {
  OperatorSpec op;
  op.text = text;
  const CarnotGroup& G = M.group();

  size_t pos = 0;
  auto skip = [&]() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> void {
    throw Error(ErrorCode::ParseError, why + " in operator \"" + text + "\"");
  };

  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) break;
    Rational sign(1);
    if (text[pos] == '+') { ++pos; }
    else if (text[pos] == '-') { sign = -1; ++pos; }
    else if (!first) fail("expected '+' or '-'");
    skip();

    Rational coeff = sign;
    Word word;
    bool saw_factor = false;
    while (true) {
      skip();
      if (pos < text.size() &&
          (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
        size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                text[pos] == '.' || text[pos] == '/'))
          ++pos;
        coeff *= parse_rational(text.substr(start, pos - start));
        saw_factor = true;
      } else if (pos < text.size() &&
                 std::isalpha(static_cast<unsigned char>(text[pos]))) {
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
          ++pos;
        std::string name = text.substr(start, pos - start);
        int slot = -1;
        for (int i = 0; i < G.dim(); ++i)
          if (G.field_name(i) == name) slot = i;
        if (slot < 0) fail("unknown frame field '" + name + "'");
        int power = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          size_t s2 = pos;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
          if (s2 == pos) fail("expected integer power");
          power = std::stoi(text.substr(s2, pos - s2));
        }
        for (int rep = 0; rep < power; ++rep) {
          word.letters.push_back(slot);
          word.degree += G.algebra().weight(slot);
          word.horizontal = word.horizontal && G.algebra().weight(slot) == 1;
        }
        saw_factor = true;
      } else {
        fail("expected coefficient or frame field");
      }
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!saw_factor) fail("empty term");
    op.terms.push_back({coeff, word});
    first = false;
  }

  if (op.terms.empty()) throw Error(ErrorCode::ParseError, "empty operator");
  op.sigma = op.terms.front().word.degree;
  for (const auto& t : op.terms)
    if (t.word.degree != op.sigma)
      throw Error(ErrorCode::BadInput,
                  "operator terms have mixed homogeneous degree (" +
                      std::to_string(t.word.degree) + " vs " +
                      std::to_string(op.sigma) + ")");
  return op;
}

OperatorSpec sublaplacian(const QuotientModel& M) {
  OperatorSpec op;
  std::string text;
  for (int slot : M.horizontal()) {
    Word w;
    w.letters = {slot, slot};
    w.degree = 2;
    w.horizontal = true;
    op.terms.push_back({Rational(1), w});
    if (!text.empty()) text += " + ";
    text += M.group().field_name(slot) + "^2";
  }
  op.sigma = 2;
  op.text = text;
  return op;
}

Poly apply_operator(const OperatorSpec& op, const QuotientModel& M, const Poly& f) {
  Poly out(M.slice());
  for (const auto& term : op.terms) {
    Poly acc = f;
    for (auto it = term.word.letters.rbegin(); it != term.word.letters.rend(); ++it)
      acc = M.projected_field(*it).apply(acc);
    out += acc * term.coeff;
  }
  return out;
}

std::vector<RatVec> default_centers(const QuotientModel& M) {
  std::vector<RatVec> centers;
  centers.push_back(RatVec::Constant(M.m(), Rational(0)));
  if (M.ell() == 0 || M.subgroup_is_normal()) {
    RatVec unit = RatVec::Constant(M.m(), Rational(0));
    unit[0] = 1;
    centers.push_back(unit);
    centers.push_back(RatVec::Constant(M.m(), Rational(1)));
    return centers;
  }
  // Non-normal H: Taylor polynomials of H-invariant lifts stay H-invariant
  // only at centers fixed by the dilations modulo the higher layers; stay on
  // the locus where every weight-1 slice coordinate vanishes.
  RatVec a = RatVec::Constant(M.m(), Rational(0));
  RatVec b = RatVec::Constant(M.m(), Rational(0));
  bool flip = false;
  bool nonzero = false;
  for (int j = 0; j < M.m(); ++j) {
    if (M.slice()->weights[static_cast<size_t>(j)] == 1) continue;
    a[j] = 1;
    b[j] = flip ? rat(-1, 2) : rat(1, 2);
    flip = !flip;
    nonzero = true;
  }
  if (nonzero) {
    centers.push_back(a);
    centers.push_back(b);
  }
  return centers;
}

HarmonicReport check_L_harmonicity(const QuotientModel& M, const OperatorSpec& op,
                                   int n_max, int wdeg_max,
                                   const std::vector<RatVec>& centers) {
  HarmonicReport report;
  auto monos = monomials_up_to_wdeg(*M.slice(), wdeg_max);

  // matrix of L on the monomial basis; rows span the union of the images
  std::vector<Poly> images;
  images.reserve(monos.size());
  std::map<Exponents, int, GradedLexLess> row_index{GradedLexLess{M.slice().get()}};
  for (const auto& e : monos) {
    Poly image = apply_operator(op, M, Poly::monomial(M.slice(), e, Rational(1)));
    for (const auto& [ee, c] : image.terms()) {
      (void)c;
      row_index.emplace(ee, 0);
    }
    images.push_back(std::move(image));
  }
  int r = 0;
  for (auto& [e, idx] : row_index) idx = r++;

  RatMat a = RatMat::Constant(std::max(r, 1), static_cast<int>(monos.size()), Rational(0));
  for (size_t c = 0; c < images.size(); ++c)
    for (const auto& [e, coeff] : images[c].terms())
      a(row_index.at(e), static_cast<int>(c)) = coeff;

  auto kernel = nullspace(a);
  report.kernel_dim = static_cast<int>(kernel.size());

  for (const auto& coeffs : kernel) {
    Poly f(M.slice());
    for (size_t i = 0; i < monos.size(); ++i)
      f.add_term(monos[i], coeffs[static_cast<int>(i)]);
    report.kernel_basis.push_back(f.str());

    if (!apply_operator(op, M, f).is_zero()) {
      report.violations.push_back("kernel element fails L f = 0: " + f.str());
      continue;
    }
    for (int n = 1; n <= n_max; ++n)
      for (const auto& center : centers) {
        auto tay = taylor_on_M(M, f, center, n);
        Poly lp = apply_operator(op, M, tay.polynomial);
        ++report.checks;
        if (!lp.is_zero())
          report.violations.push_back(
              "TheoremViolation: L(P_" + std::to_string(n) + "(f,p)) = " + lp.str() +
              " for f = " + f.str());
      }
  }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace carnot
