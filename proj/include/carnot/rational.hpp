#ifndef CARNOT_RATIONAL_HPP
#define CARNOT_RATIONAL_HPP

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace carnot {

/// Exact arbitrary-precision rational scalar. All symbolic paths run on
/// this type; binary64 is reserved for sampling and transcendental jets.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "p/q" or a decimal literal like "-0.25" into an exact rational.
Rational parse_rational(const std::string& text);

/// Canonical form "p" or "p/q", denominator positive.
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// λ^k for integer k ≥ 0.
inline Rational rat_pow(const Rational& base, int k) {
  Rational out(1);
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace carnot

namespace Eigen {
template <>
struct NumTraits<carnot::Rational> : GenericNumTraits<carnot::Rational> {
  typedef carnot::Rational Real;
  typedef carnot::Rational NonInteger;
  typedef carnot::Rational Nested;

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};
}  // namespace Eigen

#endif
