#pragma once

#include <cstddef>

#include "typesemi/numeric.hpp"

namespace typesemi::linalg {

  // Basis of {x : A x = 0} over Q, one vector per free column of the reduced
  // row echelon form, in increasing column order. Each vector has a 1 in its
  // free column.
  RationalMatrix kernel_basis(RationalMatrix const& a, std::size_t cols);

  struct SmithForm {
    // left * a * right = diagonal(diag), with left and right unimodular.
    IntMatrix left;
    IntMatrix right;
    // Invariant factors, nonnegative, each dividing the next nonzero one;
    // length = min(rows, cols).
    IntVector diag;
  };

  SmithForm smith_normal_form(IntMatrix const& a, std::size_t cols);

  IntMatrix multiply(IntMatrix const& a, IntMatrix const& b);

}  // namespace typesemi::linalg
