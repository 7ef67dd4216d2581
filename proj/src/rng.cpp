#include "carnot/rng.hpp"

namespace carnot {

uint64_t Rng::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

Rational Rng::small_rational() {
  long num = static_cast<long>(next() % 19) - 9;
  long den = static_cast<long>(next() % 4) + 1;
  return rat(num, den);
}

Rng Rng::derive(uint64_t id) const {
  // run the mixer once over seed ^ f(id) so sibling streams decorrelate
  Rng mixer(seed_ ^ (id * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull));
  return Rng(mixer.next());
}

}  // namespace carnot
