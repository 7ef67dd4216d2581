#ifndef CARNOT_RNG_HPP
#define CARNOT_RNG_HPP

#include "carnot/rational.hpp"

#include <cstdint>

namespace carnot {

/// splitmix64 generator. Hand-rolled so that streams are bit-identical across
/// platforms and standard libraries; all harness randomness flows from one
/// seed through derived per-task streams.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), state_(seed) {}

  uint64_t next();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);

  /// Small exact rational: numerator in [-9, 9], denominator in {1,2,3,4}.
  Rational small_rational();

  /// Independent stream keyed by id, derived from the original seed.
  Rng derive(uint64_t id) const;

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  uint64_t state_;
};

}  // namespace carnot

#endif
