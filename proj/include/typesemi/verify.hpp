#pragma once

// Certificate checkers. These share no code with the search or the LP
// pivoting: replay is redone on plain integer vectors and every state is
// checked by direct substitution.

#include <cstddef>
#include <string>

#include "typesemi/monoid.hpp"
#include "typesemi/tarski.hpp"

namespace typesemi::verify {

  // Empty string on success, otherwise the first failure found.
  using Verdict = std::string;

  Verdict equivalence(MonoidPresentation const& p,
                      DecisionOutcome const&    outcome,
                      MonoidElement const&      f,
                      MonoidElement const&      g);

  // Order certificate: chain from g to g', and g' = f + remainder.
  Verdict order(MonoidPresentation const& p,
                DecisionOutcome const&    outcome,
                MonoidElement const&      f,
                MonoidElement const&      g);

  // Invariance of the separator plus distinct values on f and g. With
  // `order_sense` the separator must be nonnegative and nu(f) > nu(g).
  Verdict separator(MonoidPresentation const& p,
                    LinearSeparator const&    s,
                    MonoidElement const&      f,
                    MonoidElement const&      g,
                    bool                      order_sense);

  // Negative outcome of decide_equiv / decide_leq: the separator if one is
  // attached, otherwise a fresh enumeration of the class of f or g (at most
  // `max_states` elements) that must miss the other side.
  Verdict refutation(MonoidPresentation const& p,
                     DecisionOutcome const&    outcome,
                     MonoidElement const&      f,
                     MonoidElement const&      g,
                     bool                      order_sense,
                     std::size_t               max_states = 200000);

  Verdict state(MonoidPresentation const& p, StateCertificate const& cert);

  Verdict faithful_state(MonoidPresentation const& p, RationalVector const& c);

  Verdict coboundary_failure(MonoidPresentation const& p, CoboundaryResult const& r);

  Verdict coboundary_holds(MonoidPresentation const& p, CoboundaryResult const& r);

}  // namespace typesemi::verify
