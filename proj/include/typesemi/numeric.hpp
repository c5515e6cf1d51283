#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace typesemi {

  using Integer  = mpz_class;
  using Rational = mpq_class;

  using IntVector      = std::vector<Integer>;
  using RationalVector = std::vector<Rational>;
  using IntMatrix      = std::vector<IntVector>;
  using RationalMatrix = std::vector<RationalVector>;

  inline std::string to_string(Integer const& x) {
    return x.get_str();
  }

  // Canonical "p/q" form; integers print without a denominator.
  inline std::string to_string(Rational const& x) {
    return x.get_str();
  }

  Rational parse_rational(std::string const& text);

  Integer lcm_of_denominators(RationalVector const& v);

  Integer dot(IntVector const& a, IntVector const& b);
  Rational dot(RationalVector const& a, IntVector const& b);

  RationalVector to_rational(IntVector const& v);

}  // namespace typesemi
