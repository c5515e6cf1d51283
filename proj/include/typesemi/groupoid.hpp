#pragma once

// Finite transformation groupoids, enumerated explicitly. Slow on purpose:
// these are the ground truth the monoid engine is checked against.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "typesemi/graph.hpp"
#include "typesemi/monoid.hpp"

namespace typesemi {

  // One-line notation: perm[i] is the image of point i.
  using Permutation = std::vector<std::size_t>;

  constexpr std::size_t default_group_cap = 5040;

  class FiniteGroupAction {
   public:
    // Throws INVALID_INPUT if a generator is not a bijection of the points
    // and GROUP_TOO_LARGE if the generated group exceeds `cap` elements.
    FiniteGroupAction(std::vector<std::string> points,
                      std::vector<Permutation> generators,
                      std::size_t              cap = default_group_cap);

    std::size_t num_points() const noexcept {
      return _points.size();
    }
    std::vector<std::string> const& points() const noexcept {
      return _points;
    }
    std::vector<Permutation> const& generators() const noexcept {
      return _generators;
    }
    // Group closure; element 0 is the identity.
    std::vector<Permutation> const& elements() const noexcept {
      return _elements;
    }

    std::size_t multiply(std::size_t a, std::size_t b) const;  // index of a*b
    std::size_t element_index(Permutation const& p) const;

   private:
    std::vector<std::string> _points;
    std::vector<Permutation> _generators;
    std::vector<Permutation> _elements;
  };

  struct Arrow {
    std::size_t element;  // group element
    std::size_t range;
    std::size_t source;
    std::size_t range_copy  = 0;  // R_n coordinates, 0 without stabilization
    std::size_t source_copy = 0;

    bool operator==(Arrow const&) const = default;
  };

  // Transformation groupoid X x| Gamma, optionally times the full
  // equivalence relation on {1..copies}. Units are numbered x * copies + i.
  class ActionGroupoid {
   public:
    ActionGroupoid(FiniteGroupAction const& action, std::size_t copies = 1);

    std::size_t num_units() const noexcept {
      return _num_points * _copies;
    }
    std::size_t copies() const noexcept {
      return _copies;
    }
    std::vector<Arrow> const& arrows() const noexcept {
      return _arrows;
    }
    std::size_t unit(std::size_t point, std::size_t copy) const {
      return point * _copies + copy;
    }

    std::size_t range_unit(Arrow const& a) const {
      return unit(a.range, a.range_copy);
    }
    std::size_t source_unit(Arrow const& a) const {
      return unit(a.source, a.source_copy);
    }

    // Product of a2 after a1; nullopt unless s(a2) = r(a1).
    std::optional<Arrow> compose(Arrow const& a2, Arrow const& a1) const;
    bool contains(Arrow const& a) const;

   private:
    FiniteGroupAction const* _action;
    std::size_t              _num_points;
    std::size_t              _copies;
    std::vector<Arrow>       _arrows;
  };

  using Bisection = std::vector<Arrow>;

  bool is_bisection(ActionGroupoid const& g, Bisection const& e);

  struct OrbitPartition {
    std::vector<std::vector<std::size_t>> blocks;    // sorted by least element
    std::vector<std::size_t>              block_of;  // unit -> block
    bool                                  minimal = false;
  };

  OrbitPartition orbits(FiniteGroupAction const& a);
  OrbitPartition orbits(ActionGroupoid const& g);

  struct BruteforceResult {
    enum class Status { equiv, not_equiv, too_large };
    Status                 status = Status::not_equiv;
    std::vector<Bisection> witness;
  };

  // Matches a decomposition of f into unit indicators against one of g
  // through single arrows (bipartite matching over the arrow set).
  BruteforceResult bruteforce_equiv(ActionGroupoid const& g,
                                    MonoidElement const&  f,
                                    MonoidElement const&  h,
                                    std::size_t           cap = 64);
  BruteforceResult bruteforce_equiv(FiniteGroupAction const& a,
                                    MonoidElement const&     f,
                                    MonoidElement const&     h,
                                    std::size_t              cap = 64);

  // Checks the two sums of a witness directly against the definition.
  bool verify_witness(ActionGroupoid const&         g,
                      std::vector<Bisection> const& witness,
                      MonoidElement const&          f,
                      MonoidElement const&          h);

  // Equal orbit sums.
  bool oracle_equiv(OrbitPartition const& o, MonoidElement const& f, MonoidElement const& g);
  bool oracle_equiv(FiniteGroupAction const& a, MonoidElement const& f, MonoidElement const& g);

  // One move delta_x <-> delta_{g.x} per generator (outer) and point, with
  // repeats up to swapping sides dropped. No generators means the trivial
  // group, which contributes identity moves.
  MonoidPresentation transformation_presentation(FiniteGroupAction const& a);

  ActionGroupoid stabilize(FiniteGroupAction const& a, std::size_t n);

  struct StabilizationCheck {
    bool        orbit_counts_match = false;
    bool        embedding_bijective = false;
    std::size_t pairs_checked       = 0;
    std::size_t pairs_disagreeing   = 0;

    bool ok() const {
      return orbit_counts_match && embedding_bijective && pairs_disagreeing == 0;
    }
  };

  // Compares S(G) and S(G x R_n) through x -> (x, 1): orbit counts, the
  // induced map on orbits, and the oracle on all pairs with entries <= bound.
  StabilizationCheck stabilization_check(FiniteGroupAction const& a,
                                         std::size_t              n,
                                         unsigned                 entry_bound = 2);

}  // namespace typesemi
