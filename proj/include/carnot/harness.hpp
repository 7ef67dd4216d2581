#ifndef CARNOT_HARNESS_HPP
#define CARNOT_HARNESS_HPP

#include "carnot/rng.hpp"
#include "carnot/taylor.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace carnot {

struct HarnessConfig {
  uint64_t seed = 42;
  double b = 2.0;          // ball enlargement factor of the theorems
  int sup_samples = 200;   // points per sampled supremum
  int rays = 3;            // shrinking sample rays
  std::vector<double> scales;  // default 2^0 .. 2^-8
  double tolerance = 1e-9;
  bool estimate_constants = true;

  std::vector<double> effective_scales() const {
    if (!scales.empty()) return scales;
    std::vector<double> s;
    for (int i = 0; i <= 8; ++i) s.push_back(std::pow(2.0, -i));
    return s;
  }
};

/// One shrinking-scale observation: the proxy distance, the measured
/// remainder (or increment), and the sampled sup factor it is tested against.
struct RemainderSample {
  double lambda = 0.0;
  double distance = 0.0;
  double remainder = 0.0;
  double sup_factor = 0.0;
};

struct RemainderReport {
  std::vector<RemainderSample> samples;  // sorted by lambda, descending
  double fitted_slope = 0.0;
  bool slope_defined = false;
  bool exact_zero = false;  // remainder vanishes symbolically
  std::map<std::string, double> estimated_constants;
  bool pass = false;
  uint64_t seed = 0;
  int degenerate_count = 0;
  std::vector<std::string> notes;
};

/// Samples the first-kind box {N(u) <= r}, which is exactly the quasi-norm
/// ball: coordinate i uniform in [-r^{w_i}, r^{w_i}].
std::vector<double> sample_quasi_ball_first(const CarnotGroup& G, double r, Rng& rng);
/// Point of the left ball B(g0, r): g0 * u with N(u) <= r.
std::vector<double> sample_ball_G(const CarnotGroup& G,
                                  const std::vector<double>& g0, double r, Rng& rng);
/// Point of B_M(q, r), sampled through the submetry (project the G-ball).
std::vector<double> sample_ball_M(const QuotientModel& M,
                                  const std::vector<double>& q, double r, Rng& rng);

/// Quotient distance with the warm start derived from a known representative,
/// so the optimizer value never exceeds the witnessed group distance.
OrbitDistanceResult orbit_distance_witnessed(const QuotientModel& M,
                                             const std::vector<double>& p,
                                             const std::vector<double>& q,
                                             const std::vector<double>& witness_y);

/// Mean-value check: along dilation-shrinking rays toward q, the ratio
/// |f(p)-f(q)| / (d(p,q) * sup_j |X_j f| over the enlarged ball) must stay
/// bounded (max <= 4 x median across scales).
RemainderReport check_mean_value(const QuotientModel& M, const ExprPtr& f,
                                 const RatVec& q, const HarnessConfig& cfg);

/// Taylor-remainder check: fitted log-log slope of |f - P_k(f,q)| against the
/// proxy distance must reach k+1 (within 0.2), unless the remainder vanishes
/// identically. Also reports Lagrange- and modulus-form constant candidates.
RemainderReport check_taylor_remainder(const QuotientModel& M, const ExprPtr& f,
                                       const RatVec& q, int k,
                                       const HarnessConfig& cfg);

struct SupTransferReport {
  double sup_on_M = 0.0;
  double sup_on_G = 0.0;
  double rel_gap = 0.0;
  bool pass = false;
  int samples = 0;
  int lift_failures = 0;
  uint64_t seed = 0;
  std::vector<std::string> notes;
};

/// Two-sided sampled version of the sup-transfer lemma for Phi = phi o Pi:
/// suprema over B_M(q,r) (with certified lifts) and over B_G(iota q, r) must
/// agree within 5%.
SupTransferReport check_sup_transfer(const QuotientModel& M, const ExprPtr& phi,
                                     const RatVec& q, double radius, int n_samples,
                                     const HarnessConfig& cfg);

struct ProbeReport {
  std::vector<double> sup_by_degree;  // S_k for k = 1..k_max
  std::vector<double> k_grid;
  std::optional<double> smallest_K;
  int k_max = 0;
  double rho = 0.0;
  uint64_t seed = 0;
  std::vector<std::string> notes;
};

/// Diagnostic analyticity probe: S_k = sampled sup of |X_hor^I f| over the
/// rho-ball for d(I) = k; reports the smallest grid K with S_k <= K^k k!.
ProbeReport probe_analyticity(const QuotientModel& M, const ExprPtr& f,
                              const RatVec& p, double rho,
                              const std::vector<double>& k_grid, int k_max,
                              int n_samples, const HarnessConfig& cfg);

/// Homogeneous operator built from frame words, all of one weighted degree.
struct OperatorTerm {
  Rational coeff;
  Word word;  // letters are frame slot indices on M
};

struct OperatorSpec {
  std::vector<OperatorTerm> terms;
  int sigma = 0;
  std::string text;
};

/// Parses e.g. "X1^2 + Y1^2" or "X1*X2*X1 - 2*X3" against the model's frame
/// names. Rejects inhomogeneous specs.
OperatorSpec parse_operator(const std::string& text, const QuotientModel& M);
/// The sub-Laplacian sum of squares of the horizontal frame.
OperatorSpec sublaplacian(const QuotientModel& M);

Poly apply_operator(const OperatorSpec& op, const QuotientModel& M, const Poly& f);

struct HarmonicReport {
  int kernel_dim = 0;
  std::vector<std::string> kernel_basis;
  int checks = 0;
  bool pass = false;
  std::vector<std::string> violations;
};

/// Exact verification that L(P_n(f,p)) = 0 for every f in the polynomial
/// kernel of L up to wdeg_max, every n <= n_max, and every given center.
HarmonicReport check_L_harmonicity(const QuotientModel& M, const OperatorSpec& op,
                                   int n_max, int wdeg_max,
                                   const std::vector<RatVec>& centers);

/// Default centers for the harmonicity suite: 0, the first unit point, and
/// the all-ones point on M.
std::vector<RatVec> default_centers(const QuotientModel& M);

}  // namespace carnot

#endif
