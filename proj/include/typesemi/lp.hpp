#pragma once

// Exact rational simplex. No floating point: every pivot is carried out in
// GMP rationals and Bland's rule prevents cycling.

#include <cstddef>
#include <optional>

#include "typesemi/numeric.hpp"

namespace typesemi::lp {

  enum class Sense { le, eq, ge };

  struct Constraint {
    RationalVector coeffs;
    Sense          sense;
    Rational       rhs;
  };

  // Variables are nonnegative unless listed in `free`.
  struct Problem {
    std::size_t             num_vars = 0;
    std::vector<Constraint> constraints;
    RationalVector          objective;  // maximized; empty = feasibility only
    std::vector<bool>       free;       // optional, size num_vars

    void add(RationalVector coeffs, Sense sense, Rational rhs) {
      constraints.push_back({std::move(coeffs), sense, std::move(rhs)});
    }
  };

  enum class Status { optimal, infeasible, unbounded };

  struct Solution {
    Status         status = Status::infeasible;
    RationalVector x;
    Rational       value;
    // When infeasible: multipliers y, one per constraint, with y_i >= 0 on
    // <= rows, y_i <= 0 on >= rows, y^T A = 0 on free columns and >= 0 on
    // nonnegative ones, and y^T b < 0 (Farkas certificate).
    RationalVector farkas;
  };

  Solution solve(Problem const& problem);

  // Substitution checks, independent of the pivoting code.
  bool satisfies(Problem const& problem, RationalVector const& x);
  bool is_farkas_certificate(Problem const& problem, RationalVector const& y);

}  // namespace typesemi::lp
