#include "typesemi/numeric.hpp"

#include <stdexcept>

#include "typesemi/error.hpp"

namespace typesemi {

  char const* error_code_name(ErrorCode code) noexcept {
    switch (code) {
      case ErrorCode::dimension_mismatch: return "DIMENSION_MISMATCH";
      case ErrorCode::step_not_applicable: return "STEP_NOT_APPLICABLE";
      case ErrorCode::invalid_pair: return "INVALID_PAIR";
      case ErrorCode::noncommuting_matrices: return "NONCOMMUTING_MATRICES";
      case ErrorCode::row_zero: return "ROW_ZERO";
      case ErrorCode::bad_reference: return "BAD_REFERENCE";
      case ErrorCode::overlapping_cylinders: return "OVERLAPPING_CYLINDERS";
      case ErrorCode::noncomposable_word: return "NONCOMPOSABLE_WORD";
      case ErrorCode::group_too_large: return "GROUP_TOO_LARGE";
      case ErrorCode::too_large: return "TOO_LARGE";
      case ErrorCode::zero_target: return "ZERO_TARGET";
      case ErrorCode::invalid_input: return "INVALID_INPUT";
      case ErrorCode::internal: return "INTERNAL";
    }
    return "INTERNAL";
  }

  Rational parse_rational(std::string const& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0) {
      throw Error(ErrorCode::invalid_input, "not a rational number: '" + text + "'");
    }
    if (r.get_den() == 0) {
      throw Error(ErrorCode::invalid_input, "zero denominator: '" + text + "'");
    }
    r.canonicalize();
    return r;
  }

  Integer lcm_of_denominators(RationalVector const& v) {
    Integer l = 1;
    for (auto const& x : v) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    return l;
  }

  Integer dot(IntVector const& a, IntVector const& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      s += a[i] * b[i];
    }
    return s;
  }

  Rational dot(RationalVector const& a, IntVector const& b) {
    Integer  whole = 0;
    Rational s     = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (sgn(b[i]) == 0 || sgn(a[i]) == 0) {
        continue;
      }
      if (a[i].get_den() == 1) {
        whole += a[i].get_num() * b[i];
      } else {
        s += a[i] * Rational(b[i]);
      }
    }
    return s + Rational(whole);
  }

  RationalVector to_rational(IntVector const& v) {
    RationalVector out;
    out.reserve(v.size());
    for (auto const& x : v) {
      out.emplace_back(x);
    }
    return out;
  }

}  // namespace typesemi
