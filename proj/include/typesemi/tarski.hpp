#pragma once

// States on finitely presented monoids, solved exactly.
//
// A state is an additive map nu into [0, +infinity] that agrees on both
// sides of every move. The finite part is a vector c >= 0 supported on an
// admissible set F (each move has both sides inside F or neither); nu is
// +infinity on everything touching the complement of F. For a k-graph the
// move condition on F reads (A_i c)_v = c_v.

#include <cstddef>
#include <optional>
#include <vector>

#include "typesemi/graph.hpp"
#include "typesemi/lp.hpp"
#include "typesemi/monoid.hpp"

namespace typesemi {

  struct ExtendedNonnegVector {
    RationalVector    finite_values;  // zero outside the finite support
    std::vector<bool> finite_support;

    bool is_infinite(std::size_t v) const {
      return !finite_support[v];
    }
  };

  struct StateCertificate {
    ExtendedNonnegVector vector;
    MonoidElement        target;
    Rational             normalization;  // nu(target), always 1
  };

  struct StateOptions {
    // Upper limit on the number of support sets examined; 0 = no limit.
    std::size_t max_supports = 0;
  };

  // Enumerates admissible supports F containing supp(theta) by size, then
  // lexicographically, and returns the first one carrying an invariant
  // vector with c.theta = 1. nullopt means no state exists at theta.
  // Throws ZERO_TARGET for theta = 0.
  std::optional<StateCertificate> solve_state_at(MonoidPresentation const& p,
                                                 MonoidElement const&      theta,
                                                 StateOptions const&       options = {});
  std::optional<StateCertificate> solve_state_at(KGraphModel const&   m,
                                                 MonoidElement const& theta,
                                                 StateOptions const&  options = {});

  // Strictly positive invariant vector with sum 1, obtained by maximizing
  // each coordinate over the invariant simplex and averaging the maximizers.
  std::optional<RationalVector> faithful_finite_state(MonoidPresentation const& p);
  std::optional<RationalVector> faithful_finite_state(KGraphModel const& m);

  // Generators of the difference lattice: lhs - rhs for every move.
  IntMatrix difference_lattice(MonoidPresentation const& p);

  struct CoboundaryResult {
    bool holds = true;
    // When the condition fails: one integer coefficient per move and the
    // nonzero nonnegative vector y = sum_j z_j (lhs_j - rhs_j).
    IntVector z;
    IntVector y;
    // When it holds: a Farkas certificate for the infeasible LP.
    RationalVector farkas;
  };

  CoboundaryResult coboundary_check(MonoidPresentation const& p);
  CoboundaryResult coboundary_check(KGraphModel const& m);

  // Does the difference lattice meet N^d \ {0}, decided through the LP.
  lp::Problem coboundary_problem(MonoidPresentation const& p);

  struct StiemkeResult {
    bool                          consistent = false;
    bool                          coboundary_holds = false;
    std::optional<RationalVector> positive_invariant;
    std::vector<std::string>      diagnostics;
  };

  // Solves for y >= 1 with y.(lhs - rhs) = 0 independently and compares
  // with coboundary_check: exactly one of the two alternatives must hold.
  StiemkeResult stiemke_crosscheck(MonoidPresentation const& p);
  StiemkeResult stiemke_crosscheck(KGraphModel const& m);

}  // namespace typesemi
