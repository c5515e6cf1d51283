#include "typesemi/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "typesemi/error.hpp"

namespace typesemi {

  namespace {
    Permutation compose_perms(Permutation const& a, Permutation const& b) {
      // (a*b)(x) = a(b(x))
      Permutation out(b.size());
      for (std::size_t x = 0; x < b.size(); ++x) {
        out[x] = a[b[x]];
      }
      return out;
    }

    std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x         = parent[x];
      }
      return x;
    }

    OrbitPartition partition_from(std::vector<std::size_t> parent) {
      std::size_t const n = parent.size();
      OrbitPartition    o;
      o.block_of.assign(n, 0);
      std::map<std::size_t, std::size_t> root_block;
      for (std::size_t x = 0; x < n; ++x) {
        auto r  = find_root(parent, x);
        auto it = root_block.find(r);
        if (it == root_block.end()) {
          it = root_block.emplace(r, o.blocks.size()).first;
          o.blocks.emplace_back();
        }
        o.blocks[it->second].push_back(x);
        o.block_of[x] = it->second;
      }
      o.minimal = o.blocks.size() == 1;
      return o;
    }

    void unite(std::vector<std::size_t>& parent, std::size_t a, std::size_t b) {
      a = find_root(parent, a);
      b = find_root(parent, b);
      if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // FiniteGroupAction
  ////////////////////////////////////////////////////////////////////////

  FiniteGroupAction::FiniteGroupAction(std::vector<std::string> points,
                                       std::vector<Permutation> generators,
                                       std::size_t              cap)
      : _points(std::move(points)), _generators(std::move(generators)) {
    std::size_t const n = _points.size();
    if (n == 0) {
      throw Error(ErrorCode::invalid_input, "an action needs at least one point");
    }
    if (std::set<std::string>(_points.begin(), _points.end()).size() != n) {
      throw Error(ErrorCode::invalid_input, "duplicate point id");
    }
    for (std::size_t i = 0; i < _generators.size(); ++i) {
      auto const& g = _generators[i];
      std::vector<bool> hit(n, false);
      if (g.size() != n) {
        throw Error(ErrorCode::invalid_input,
                    "generator " + std::to_string(i + 1) + " has the wrong length");
      }
      for (auto x : g) {
        if (x >= n || hit[x]) {
          throw Error(ErrorCode::invalid_input,
                      "generator " + std::to_string(i + 1) + " is not a bijection");
        }
        hit[x] = true;
      }
    }

    Permutation id(n);
    std::iota(id.begin(), id.end(), 0);
    std::set<Permutation> seen{id};
    _elements.push_back(id);
    for (std::size_t head = 0; head < _elements.size(); ++head) {
      for (auto const& g : _generators) {
        Permutation next = compose_perms(g, _elements[head]);
        if (seen.insert(next).second) {
          if (_elements.size() >= cap) {
            throw Error(ErrorCode::group_too_large,
                        "generated group exceeds " + std::to_string(cap) + " elements");
          }
          _elements.push_back(std::move(next));
        }
      }
    }
  }

  std::size_t FiniteGroupAction::element_index(Permutation const& p) const {
    auto it = std::find(_elements.begin(), _elements.end(), p);
    if (it == _elements.end()) {
      throw Error(ErrorCode::internal, "permutation outside the generated group");
    }
    return static_cast<std::size_t>(it - _elements.begin());
  }

  std::size_t FiniteGroupAction::multiply(std::size_t a, std::size_t b) const {
    return element_index(compose_perms(_elements.at(a), _elements.at(b)));
  }

  ////////////////////////////////////////////////////////////////////////
  // ActionGroupoid
  ////////////////////////////////////////////////////////////////////////

  ActionGroupoid::ActionGroupoid(FiniteGroupAction const& action, std::size_t copies)
      : _action(&action), _num_points(action.num_points()), _copies(copies) {
    if (copies == 0) {
      throw Error(ErrorCode::invalid_input, "stabilization needs n >= 1");
    }
    for (std::size_t t = 0; t < action.elements().size(); ++t) {
      for (std::size_t x = 0; x < _num_points; ++x) {
        for (std::size_t i = 0; i < copies; ++i) {
          for (std::size_t j = 0; j < copies; ++j) {
            _arrows.push_back({t, action.elements()[t][x], x, i, j});
          }
        }
      }
    }
  }

  bool ActionGroupoid::contains(Arrow const& a) const {
    return std::find(_arrows.begin(), _arrows.end(), a) != _arrows.end();
  }

  std::optional<Arrow> ActionGroupoid::compose(Arrow const& a2, Arrow const& a1) const {
    if (a2.source != a1.range || a2.source_copy != a1.range_copy) {
      return std::nullopt;
    }
    return Arrow{_action->multiply(a2.element, a1.element), a2.range, a1.source,
                 a2.range_copy, a1.source_copy};
  }

  bool is_bisection(ActionGroupoid const& g, Bisection const& e) {
    std::set<std::size_t> ranges, sources;
    for (auto const& a : e) {
      if (!g.contains(a)) {
        return false;
      }
      if (!ranges.insert(g.range_unit(a)).second || !sources.insert(g.source_unit(a)).second) {
        return false;
      }
    }
    return true;
  }

  OrbitPartition orbits(FiniteGroupAction const& a) {
    std::vector<std::size_t> parent(a.num_points());
    std::iota(parent.begin(), parent.end(), 0);
    for (auto const& g : a.generators()) {
      for (std::size_t x = 0; x < a.num_points(); ++x) {
        unite(parent, x, g[x]);
      }
    }
    return partition_from(std::move(parent));
  }

  OrbitPartition orbits(ActionGroupoid const& g) {
    std::vector<std::size_t> parent(g.num_units());
    std::iota(parent.begin(), parent.end(), 0);
    for (auto const& a : g.arrows()) {
      unite(parent, g.range_unit(a), g.source_unit(a));
    }
    return partition_from(std::move(parent));
  }

  ////////////////////////////////////////////////////////////////////////
  // Brute force and the orbit-sum oracle
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::vector<std::size_t> indicator_units(MonoidElement const& f) {
      std::vector<std::size_t> units;
      for (std::size_t x = 0; x < f.size(); ++x) {
        for (unsigned long c = f[x].get_ui(); c > 0; --c) {
          units.push_back(x);
        }
      }
      return units;
    }

    // Kuhn's augmenting paths.
    bool augment(std::size_t                                  u,
                 std::vector<std::vector<std::size_t>> const& adj,
                 std::vector<bool>&                           used,
                 std::vector<std::size_t>&                    match_right) {
      for (auto v : adj[u]) {
        if (used[v]) {
          continue;
        }
        used[v] = true;
        if (match_right[v] == SIZE_MAX || augment(match_right[v], adj, used, match_right)) {
          match_right[v] = u;
          return true;
        }
      }
      return false;
    }
  }  // namespace

  BruteforceResult bruteforce_equiv(ActionGroupoid const& g,
                                    MonoidElement const&  f,
                                    MonoidElement const&  h,
                                    std::size_t           cap) {
    if (f.size() != g.num_units() || h.size() != g.num_units()) {
      throw Error(ErrorCode::dimension_mismatch, "vector length differs from unit count");
    }
    BruteforceResult out;
    if (g.num_units() > cap || f.total() > cap || h.total() > cap) {
      out.status = BruteforceResult::Status::too_large;
      return out;
    }
    if (f == h) {
      // Unit-space bisections, one per level of f.
      out.status = BruteforceResult::Status::equiv;
      for (unsigned long level = 1;; ++level) {
        Bisection e;
        for (std::size_t x = 0; x < f.size(); ++x) {
          if (f[x] >= level) {
            auto const& a = g.arrows();
            auto it = std::find_if(a.begin(), a.end(), [&](Arrow const& arr) {
              return arr.element == 0 && g.source_unit(arr) == x && g.range_unit(arr) == x;
            });
            e.push_back(*it);
          }
        }
        if (e.empty()) {
          break;
        }
        out.witness.push_back(std::move(e));
      }
      return out;
    }

    auto left  = indicator_units(f);
    auto right = indicator_units(h);
    if (left.size() != right.size()) {
      out.status = BruteforceResult::Status::not_equiv;
      return out;
    }
    // First arrow (in enumeration order) from each source unit to each
    // range unit.
    std::map<std::pair<std::size_t, std::size_t>, Arrow> first_arrow;
    for (auto const& a : g.arrows()) {
      first_arrow.emplace(std::make_pair(g.source_unit(a), g.range_unit(a)), a);
    }
    std::vector<std::vector<std::size_t>> adj(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
      for (std::size_t j = 0; j < right.size(); ++j) {
        if (first_arrow.count({left[i], right[j]})) {
          adj[i].push_back(j);
        }
      }
    }
    std::vector<std::size_t> match_right(right.size(), SIZE_MAX);
    for (std::size_t i = 0; i < left.size(); ++i) {
      std::vector<bool> used(right.size(), false);
      if (!augment(i, adj, used, match_right)) {
        out.status = BruteforceResult::Status::not_equiv;
        return out;
      }
    }
    out.status = BruteforceResult::Status::equiv;
    for (std::size_t j = 0; j < right.size(); ++j) {
      out.witness.push_back({first_arrow.at({left[match_right[j]], right[j]})});
    }
    return out;
  }

  BruteforceResult bruteforce_equiv(FiniteGroupAction const& a,
                                    MonoidElement const&     f,
                                    MonoidElement const&     h,
                                    std::size_t              cap) {
    if (a.num_points() > cap) {
      return {BruteforceResult::Status::too_large, {}};
    }
    ActionGroupoid g(a);
    return bruteforce_equiv(g, f, h, cap);
  }

  bool verify_witness(ActionGroupoid const&         g,
                      std::vector<Bisection> const& witness,
                      MonoidElement const&          f,
                      MonoidElement const&          h) {
    IntVector sources(g.num_units(), 0), ranges(g.num_units(), 0);
    for (auto const& e : witness) {
      if (!is_bisection(g, e)) {
        return false;
      }
      for (auto const& a : e) {
        sources[g.source_unit(a)] += 1;
        ranges[g.range_unit(a)] += 1;
      }
    }
    return f.entries() == sources && h.entries() == ranges;
  }

  bool oracle_equiv(OrbitPartition const& o, MonoidElement const& f, MonoidElement const& g) {
    if (f.size() != o.block_of.size() || g.size() != o.block_of.size()) {
      throw Error(ErrorCode::dimension_mismatch, "vector length differs from unit count");
    }
    IntVector sums(o.blocks.size(), 0);
    for (std::size_t x = 0; x < f.size(); ++x) {
      sums[o.block_of[x]] += f[x];
      sums[o.block_of[x]] -= g[x];
    }
    return std::all_of(sums.begin(), sums.end(), [](Integer const& s) { return s == 0; });
  }

  bool oracle_equiv(FiniteGroupAction const& a, MonoidElement const& f, MonoidElement const& g) {
    return oracle_equiv(orbits(a), f, g);
  }

  MonoidPresentation transformation_presentation(FiniteGroupAction const& a) {
    std::size_t const n = a.num_points();
    std::vector<Permutation> gens = a.generators();
    if (gens.empty()) {
      gens.push_back(a.elements().front());
    }
    std::vector<Move>                               moves;
    std::set<std::pair<std::size_t, std::size_t>>   seen;
    for (auto const& g : gens) {
      for (std::size_t x = 0; x < n; ++x) {
        auto key = std::minmax(x, g[x]);
        if (!seen.insert({key.first, key.second}).second) {
          continue;
        }
        moves.push_back({MonoidElement::unit(n, x), MonoidElement::unit(n, g[x])});
      }
    }
    return MonoidPresentation(n, std::move(moves));
  }

  ActionGroupoid stabilize(FiniteGroupAction const& a, std::size_t n) {
    return ActionGroupoid(a, n);
  }

  namespace {
    bool next_vector(std::vector<unsigned>& v, unsigned bound) {
      for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i] < bound) {
          ++v[i];
          return true;
        }
        v[i] = 0;
      }
      return false;
    }
  }  // namespace

  StabilizationCheck stabilization_check(FiniteGroupAction const& a,
                                         std::size_t              n,
                                         unsigned                 entry_bound) {
    ActionGroupoid base(a);
    ActionGroupoid big = stabilize(a, n);
    auto           ob  = orbits(base);
    auto           os  = orbits(big);

    StabilizationCheck check;
    check.orbit_counts_match = ob.blocks.size() == os.blocks.size();

    // x -> (x, first copy) induces a map on orbits.
    std::vector<std::size_t> image(ob.blocks.size(), SIZE_MAX);
    bool                     well_defined = true;
    for (std::size_t x = 0; x < a.num_points(); ++x) {
      auto target = os.block_of[big.unit(x, 0)];
      auto& slot  = image[ob.block_of[x]];
      if (slot != SIZE_MAX && slot != target) {
        well_defined = false;
      }
      slot = target;
    }
    std::set<std::size_t> distinct(image.begin(), image.end());
    check.embedding_bijective = well_defined && distinct.size() == image.size()
                                && distinct.size() == os.blocks.size()
                                && !distinct.count(SIZE_MAX);

    auto embed = [&](std::vector<unsigned> const& v) {
      IntVector out(big.num_units(), 0);
      for (std::size_t x = 0; x < v.size(); ++x) {
        out[big.unit(x, 0)] = v[x];
      }
      return MonoidElement(std::move(out));
    };
    auto plain = [](std::vector<unsigned> const& v) {
      IntVector out(v.begin(), v.end());
      return MonoidElement(std::move(out));
    };

    std::vector<unsigned> f(a.num_points(), 0);
    do {
      std::vector<unsigned> g(a.num_points(), 0);
      do {
        ++check.pairs_checked;
        bool lhs = oracle_equiv(ob, plain(f), plain(g));
        bool rhs = oracle_equiv(os, embed(f), embed(g));
        if (lhs != rhs) {
          ++check.pairs_disagreeing;
        }
      } while (next_vector(g, entry_bound));
    } while (next_vector(f, entry_bound));
    return check;
  }

}  // namespace typesemi
