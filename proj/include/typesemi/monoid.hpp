#pragma once

// Finitely presented commutative monoids: N^d modulo the congruence
// generated by a finite list of moves lhs <-> rhs. Decisions come back
// with certificates that can be checked without trusting the search.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "typesemi/numeric.hpp"

namespace typesemi {

  class MonoidElement {
   public:
    MonoidElement() = default;
    explicit MonoidElement(std::size_t dim) : _entries(dim, 0) {}
    explicit MonoidElement(IntVector entries);
    MonoidElement(std::initializer_list<long> entries);

    static MonoidElement unit(std::size_t dim, std::size_t index);

    std::size_t size() const noexcept {
      return _entries.size();
    }
    Integer const& operator[](std::size_t i) const {
      return _entries[i];
    }
    IntVector const& entries() const noexcept {
      return _entries;
    }

    bool is_zero() const;
    // Pointwise comparison; requires equal sizes.
    bool pointwise_leq(MonoidElement const& other) const;
    std::vector<bool> support() const;
    Integer total() const;

    MonoidElement& operator+=(MonoidElement const& other);
    MonoidElement operator+(MonoidElement const& other) const;
    // Requires other <= *this pointwise.
    MonoidElement operator-(MonoidElement const& other) const;
    MonoidElement scaled(Integer const& k) const;

    bool operator==(MonoidElement const& other) const = default;

    std::string to_string() const;

   private:
    IntVector _entries;
  };

  struct Move {
    MonoidElement lhs;
    MonoidElement rhs;

    bool is_identity() const {
      return lhs == rhs;
    }
    bool operator==(Move const&) const = default;
  };

  class MonoidPresentation {
   public:
    // Throws DIMENSION_MISMATCH if a move vector has the wrong length.
    MonoidPresentation(std::size_t dim, std::vector<Move> moves);

    std::size_t dim() const noexcept {
      return _dim;
    }
    std::vector<Move> const& moves() const noexcept {
      return _moves;
    }

    void check_element(MonoidElement const& x) const;

    // Lazily computed once per presentation and shared between copies.
    struct Invariants;
    Invariants const& invariants() const;

   private:
    std::size_t                         _dim;
    std::vector<Move>                   _moves;
    std::shared_ptr<Invariants>         _invariants;
  };

  MonoidPresentation build_presentation(std::size_t dim, std::vector<Move> moves);

  enum class Direction : std::uint8_t { forward, backward };

  struct RewriteStep {
    std::size_t move_index;
    Direction   direction;

    bool operator==(RewriteStep const&) const = default;
  };

  struct EquivCertificate {
    MonoidElement            start;
    std::vector<RewriteStep> steps;
    MonoidElement            end;

    bool operator==(EquivCertificate const&) const = default;
  };

  // Applies one step; nullopt when the source side is not contained in x.
  std::optional<MonoidElement> apply_step(MonoidPresentation const& p,
                                          MonoidElement const&      x,
                                          RewriteStep               step);

  // Throws StepNotApplicable(i) at the first step whose source side does not
  // fit, and DIMENSION_MISMATCH if start has the wrong length.
  MonoidElement replay(MonoidPresentation const& p,
                       MonoidElement const&      start,
                       EquivCertificate const&   cert);

  // Functionals invariant under every move. A rational separator is a vector
  // c with c.lhs = c.rhs for all moves; a modular one does the same mod m; an
  // extended one takes the value 0 on a move-admissible set of coordinates
  // and +infinity elsewhere.
  struct LinearSeparator {
    enum class Kind { rational, modular, extended };

    Kind              kind = Kind::rational;
    RationalVector    coeffs;
    Integer           modulus = 0;
    std::vector<bool> infinite;

    bool operator==(LinearSeparator const&) const = default;
  };

  // Value of an extended separator: nullopt means +infinity.
  std::optional<Rational> evaluate(LinearSeparator const& s,
                                   MonoidElement const&   x);

  struct SearchBudget {
    std::size_t   max_states     = 200000;
    std::uint32_t max_coordinate = 64;
    unsigned      modulus_bound  = 64;
  };

  struct BudgetReport {
    std::size_t states_visited      = 0;
    bool        state_cap_hit       = false;
    bool        coordinate_cap_hit  = false;
    // The reachable set of one side was enumerated completely without
    // meeting the other (or, for decide_leq, without covering f). This
    // refutes the query even when no separator is attached.
    bool        component_exhausted = false;

    bool operator==(BudgetReport const&) const = default;
  };

  enum class Verdict { equiv, not_equiv, unknown };

  char const* verdict_name(Verdict v) noexcept;

  struct DecisionOutcome {
    Verdict                         verdict = Verdict::unknown;
    std::optional<EquivCertificate> certificate;
    std::optional<LinearSeparator>  separator;
    // decide_leq only: the element h with certificate.end = lhs + h.
    std::optional<MonoidElement>    remainder;
    BudgetReport                    report;

    bool operator==(DecisionOutcome const&) const = default;
  };

  // NOT_EQUIV comes with a separator, or with report.component_exhausted
  // when the class of one side was enumerated in full.
  DecisionOutcome decide_equiv(MonoidPresentation const& p,
                               MonoidElement const&      f,
                               MonoidElement const&      g,
                               SearchBudget const&       budget = {});

  // Verdict::equiv here means f <= g was established: the certificate runs
  // from g to some g' with g' >= f pointwise, and remainder = g' - f.
  DecisionOutcome decide_leq(MonoidPresentation const& p,
                             MonoidElement const&      f,
                             MonoidElement const&      g,
                             SearchBudget const&       budget = {});

  // Decides k*theta <= l*theta. Throws INVALID_PAIR unless k > l >= 1.
  DecisionOutcome kl_paradoxical(MonoidPresentation const& p,
                                 MonoidElement const&      theta,
                                 unsigned                  k,
                                 unsigned                  l,
                                 SearchBudget const&       budget = {});

  // Given certificates for 2*a <= a and 2*b <= b, builds one for
  // 2*(a+b) <= a+b by running the first chain next to b and then the second
  // chain next to the first chain's result.
  DecisionOutcome combine_properly_infinite(MonoidPresentation const& p,
                                            MonoidElement const&      a,
                                            DecisionOutcome const&    cert_a,
                                            MonoidElement const&      b,
                                            DecisionOutcome const&    cert_b);

  // Rational kernel vectors first, then moduli 2..modulus_bound ascending.
  std::optional<LinearSeparator> find_separator(MonoidPresentation const& p,
                                                MonoidElement const&      f,
                                                MonoidElement const&      g,
                                                unsigned modulus_bound = 64);

  // Smallest set of coordinates containing `seed` such that every move has
  // either both sides supported inside it or neither.
  std::vector<bool> admissible_closure(MonoidPresentation const& p,
                                       std::vector<bool>         seed);

  // Nonnegative invariant functional nu (possibly +infinity valued) with
  // nu(f) > nu(g). Such a functional refutes f <= g.
  std::optional<LinearSeparator>
  find_order_separator(MonoidPresentation const& p,
                       MonoidElement const&      f,
                       MonoidElement const&      g);

  struct UnperforationBounds {
    unsigned     max_coefficient = 4;
    unsigned     max_multiplier  = 4;
    // Cap on (theta, eta) candidate pairs; beyond it the sweep stops and
    // reports that the bounds were not exhausted.
    std::size_t  max_candidates  = 200000;
    SearchBudget budget;
  };

  struct UnperforationCounterexample {
    MonoidElement   theta;
    MonoidElement   eta;
    unsigned        n;
    unsigned        m;
    DecisionOutcome leq;           // n*theta <= m*eta
    // Refutes theta <= eta; absent when the refutation is the exhausted
    // class of eta.
    std::optional<LinearSeparator> not_leq;
  };

  struct UnperforationResult {
    enum class Status { counterexample, clear_within_bounds, bounds_not_exhausted };

    Status                                     status = Status::clear_within_bounds;
    std::optional<UnperforationCounterexample> counterexample;
    std::size_t                                candidates_examined = 0;
    // Pairs where n*theta <= m*eta could be neither certified nor refuted.
    std::size_t                                undecided           = 0;
  };

  UnperforationResult
  almost_unperforated_up_to(MonoidPresentation const&         p,
                            std::vector<MonoidElement> const& generators,
                            UnperforationBounds const&        bounds = {});

}  // namespace typesemi
