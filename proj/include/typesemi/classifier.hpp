#pragma once

#include <optional>
#include <string>
#include <vector>

#include "typesemi/graph.hpp"
#include "typesemi/monoid.hpp"
#include "typesemi/tarski.hpp"

namespace typesemi {

  enum class Classification { stably_finite, purely_infinite, inconclusive, hypotheses_not_met };

  char const* classification_name(Classification c) noexcept;

  struct ClassifyBudgets {
    SearchBudget        search;
    UnperforationBounds unperforation;
    // Largest n tried for an (n+1, n) paradox at a traceless generator.
    unsigned            max_tarski_n = 4;
  };

  struct GeneratorResult {
    std::size_t                     vertex = 0;
    DecisionOutcome                 properly_infinite;  // 2 delta_v <= delta_v
    std::optional<StateCertificate> state;              // state normalized at delta_v
    // For generators without a state: the first n <= max_tarski_n with a
    // certified (n+1) delta_v <= n delta_v.
    std::optional<unsigned>         tarski_n;
    std::optional<DecisionOutcome>  tarski_paradox;
  };

  struct ClassificationReport {
    std::size_t                      k            = 1;
    std::size_t                      num_vertices = 0;
    StructuralReport                 structure;
    bool                             minimality_proxy   = false;
    Tristate                         principality_proxy = Tristate::undetermined;
    std::vector<GeneratorResult>     generators;
    std::optional<RationalVector>    faithful_state;
    CoboundaryResult                 coboundary;
    bool                             stiemke_consistent = false;
    std::optional<UnperforationResult> unperforation;
    Classification                   verdict = Classification::inconclusive;
    std::vector<std::string>         caveats;
  };

  // Throws Error(INTERNAL) when two certificates contradict each other
  // (a faithful state next to a full set of paradox certificates, or a
  // state at a generator that is also certified properly infinite).
  ClassificationReport classify(KGraphModel const& m, ClassifyBudgets const& budgets = {});

}  // namespace typesemi
