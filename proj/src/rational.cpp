#include "sparsegraph/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace sg {

Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // decimal literal: digits after the dot become a power-of-ten denominator
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("bad rational literal: " + s);
    mpz_class num;
    if (num.set_str(digits, 10) != 0)
      throw std::invalid_argument("bad rational literal: " + s);
    mpz_class den(1);
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Rat rat_of_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  return Rat(x);
}

double rat_to_double(const Rat& q) { return q.get_d(); }

std::string rat_to_string(const Rat& q) { return q.get_str(); }

}  // namespace sg
