#include "carnot/rational.hpp"

#include <cctype>

namespace carnot {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // decimal literal: shift the point away and divide by the matching power of ten
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("bad decimal literal: " + text);
    mpz_class num(digits, 10);
    mpz_class den(1);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_str(10);
}

}  // namespace carnot
