#include "typesemi/monoid.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "typesemi/error.hpp"
#include "typesemi/linalg.hpp"
#include "typesemi/lp.hpp"

namespace typesemi {

  ////////////////////////////////////////////////////////////////////////
  // MonoidElement
  ////////////////////////////////////////////////////////////////////////

  MonoidElement::MonoidElement(IntVector entries) : _entries(std::move(entries)) {
    for (auto const& x : _entries) {
      if (x < 0) {
        throw Error(ErrorCode::invalid_input, "monoid elements have nonnegative entries");
      }
    }
  }

  MonoidElement::MonoidElement(std::initializer_list<long> entries) {
    _entries.reserve(entries.size());
    for (long x : entries) {
      if (x < 0) {
        throw Error(ErrorCode::invalid_input, "monoid elements have nonnegative entries");
      }
      _entries.emplace_back(x);
    }
  }

  MonoidElement MonoidElement::unit(std::size_t dim, std::size_t index) {
    MonoidElement e(dim);
    e._entries.at(index) = 1;
    return e;
  }

  bool MonoidElement::is_zero() const {
    return std::all_of(_entries.begin(), _entries.end(),
                       [](Integer const& x) { return x == 0; });
  }

  bool MonoidElement::pointwise_leq(MonoidElement const& other) const {
    if (size() != other.size()) {
      throw Error(ErrorCode::dimension_mismatch, "compared elements differ in length");
    }
    for (std::size_t i = 0; i < size(); ++i) {
      if (_entries[i] > other._entries[i]) {
        return false;
      }
    }
    return true;
  }

  std::vector<bool> MonoidElement::support() const {
    std::vector<bool> s(size());
    for (std::size_t i = 0; i < size(); ++i) {
      s[i] = _entries[i] != 0;
    }
    return s;
  }

  Integer MonoidElement::total() const {
    Integer t = 0;
    for (auto const& x : _entries) {
      t += x;
    }
    return t;
  }

  MonoidElement& MonoidElement::operator+=(MonoidElement const& other) {
    if (size() != other.size()) {
      throw Error(ErrorCode::dimension_mismatch, "added elements differ in length");
    }
    for (std::size_t i = 0; i < size(); ++i) {
      _entries[i] += other._entries[i];
    }
    return *this;
  }

  MonoidElement MonoidElement::operator+(MonoidElement const& other) const {
    MonoidElement out = *this;
    out += other;
    return out;
  }

  MonoidElement MonoidElement::operator-(MonoidElement const& other) const {
    if (!other.pointwise_leq(*this)) {
      throw Error(ErrorCode::invalid_input, "subtraction would leave the positive cone");
    }
    MonoidElement out = *this;
    for (std::size_t i = 0; i < size(); ++i) {
      out._entries[i] -= other._entries[i];
    }
    return out;
  }

  MonoidElement MonoidElement::scaled(Integer const& k) const {
    if (k < 0) {
      throw Error(ErrorCode::invalid_input, "negative multiplier");
    }
    MonoidElement out = *this;
    for (auto& x : out._entries) {
      x *= k;
    }
    return out;
  }

  std::string MonoidElement::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i != 0) {
        s += ",";
      }
      s += _entries[i].get_str();
    }
    return s + ")";
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentations and replay
  ////////////////////////////////////////////////////////////////////////

  struct MonoidPresentation::Invariants {
    std::once_flag    once;
    // Basis of {c : c.lhs = c.rhs for every move}.
    RationalMatrix    kernel;
    // Smith form of the d x m matrix whose columns are lhs_j - rhs_j.
    linalg::SmithForm smith;
  };

  MonoidPresentation::MonoidPresentation(std::size_t dim, std::vector<Move> moves)
      : _dim(dim), _moves(std::move(moves)), _invariants(std::make_shared<Invariants>()) {
    if (_dim == 0) {
      throw Error(ErrorCode::dimension_mismatch, "presentation dimension must be positive");
    }
    for (std::size_t i = 0; i < _moves.size(); ++i) {
      if (_moves[i].lhs.size() != _dim || _moves[i].rhs.size() != _dim) {
        throw Error(ErrorCode::dimension_mismatch,
                    "move " + std::to_string(i) + " does not have length "
                        + std::to_string(_dim));
      }
    }
  }

  void MonoidPresentation::check_element(MonoidElement const& x) const {
    if (x.size() != _dim) {
      throw Error(ErrorCode::dimension_mismatch,
                  "element " + x.to_string() + " does not have length "
                      + std::to_string(_dim));
    }
  }

  MonoidPresentation::Invariants const& MonoidPresentation::invariants() const {
    std::call_once(_invariants->once, [this] {
      RationalMatrix rows;
      IntMatrix      m(_dim, IntVector(_moves.size()));
      for (std::size_t j = 0; j < _moves.size(); ++j) {
        RationalVector r(_dim);
        for (std::size_t i = 0; i < _dim; ++i) {
          m[i][j] = _moves[j].lhs[i] - _moves[j].rhs[i];
          r[i]    = Rational(m[i][j]);
        }
        rows.push_back(std::move(r));
      }
      _invariants->kernel = linalg::kernel_basis(rows, _dim);
      _invariants->smith  = linalg::smith_normal_form(m, _moves.size());
    });
    return *_invariants;
  }

  MonoidPresentation build_presentation(std::size_t dim, std::vector<Move> moves) {
    return MonoidPresentation(dim, std::move(moves));
  }

  char const* verdict_name(Verdict v) noexcept {
    switch (v) {
      case Verdict::equiv: return "EQUIV";
      case Verdict::not_equiv: return "NOT_EQUIV";
      case Verdict::unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
  }

  std::optional<MonoidElement> apply_step(MonoidPresentation const& p,
                                          MonoidElement const&      x,
                                          RewriteStep               step) {
    if (step.move_index >= p.moves().size()) {
      return std::nullopt;
    }
    auto const& mv   = p.moves()[step.move_index];
    auto const& from = step.direction == Direction::forward ? mv.lhs : mv.rhs;
    auto const& to   = step.direction == Direction::forward ? mv.rhs : mv.lhs;
    if (!from.pointwise_leq(x)) {
      return std::nullopt;
    }
    return (x - from) + to;
  }

  MonoidElement replay(MonoidPresentation const& p,
                       MonoidElement const&      start,
                       EquivCertificate const&   cert) {
    p.check_element(start);
    MonoidElement x = start;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
      auto next = apply_step(p, x, cert.steps[i]);
      if (!next) {
        throw StepNotApplicable(i);
      }
      x = std::move(*next);
    }
    return x;
  }

  std::optional<Rational> evaluate(LinearSeparator const& s, MonoidElement const& x) {
    Rational v = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) {
        continue;
      }
      if (s.kind == LinearSeparator::Kind::extended && i < s.infinite.size()
          && s.infinite[i]) {
        return std::nullopt;
      }
      v += s.coeffs.at(i) * Rational(x[i]);
    }
    if (s.kind == LinearSeparator::Kind::modular) {
      Integer r = v.get_num() % s.modulus;
      if (r < 0) {
        r += s.modulus;
      }
      return Rational(r);
    }
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Separators
  ////////////////////////////////////////////////////////////////////////

  namespace {

    IntVector difference(MonoidElement const& a, MonoidElement const& b) {
      IntVector d(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        d[i] = a[i] - b[i];
      }
      return d;
    }

    // Primitive integer vector on the ray through v (first nonzero entry
    // keeps its sign).
    RationalVector primitive(RationalVector v) {
      Integer l = lcm_of_denominators(v);
      Integer g = 0;
      for (auto& x : v) {
        x *= l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
      }
      if (g > 1) {
        for (auto& x : v) {
          x /= g;
        }
      }
      return v;
    }

    bool contains(std::vector<bool> const& set, MonoidElement const& x) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0 && !set[i]) {
          return false;
        }
      }
      return true;
    }

    // Rational kernel of the move differences restricted to `coords`;
    // coordinates outside are ignored together with every move that
    // touches them.
    RationalMatrix restricted_kernel(MonoidPresentation const& p,
                                     std::vector<bool> const&  coords) {
      RationalMatrix rows;
      for (auto const& mv : p.moves()) {
        if (!contains(coords, mv.lhs) || !contains(coords, mv.rhs)) {
          continue;
        }
        RationalVector r(p.dim());
        for (std::size_t i = 0; i < p.dim(); ++i) {
          r[i] = Rational(mv.lhs[i] - mv.rhs[i]);
        }
        rows.push_back(std::move(r));
      }
      // Coordinates outside the set are forced to zero.
      for (std::size_t i = 0; i < p.dim(); ++i) {
        if (!coords[i]) {
          RationalVector r(p.dim(), 0);
          r[i] = 1;
          rows.push_back(std::move(r));
        }
      }
      return linalg::kernel_basis(rows, p.dim());
    }

    std::optional<RationalVector> separating_kernel_vector(RationalMatrix const& basis,
                                                           IntVector const& diff) {
      for (auto const& c : basis) {
        if (dot(c, diff) != 0) {
          return primitive(c);
        }
      }
      return std::nullopt;
    }

  }  // namespace

  std::optional<LinearSeparator> find_separator(MonoidPresentation const& p,
                                                MonoidElement const&      f,
                                                MonoidElement const&      g,
                                                unsigned modulus_bound) {
    p.check_element(f);
    p.check_element(g);
    IntVector diff = difference(f, g);

    auto const& inv = p.invariants();
    if (auto c = separating_kernel_vector(inv.kernel, diff)) {
      return LinearSeparator{LinearSeparator::Kind::rational, std::move(*c), 0, {}};
    }

    if (modulus_bound < 2) {
      return std::nullopt;
    }
    // Torsion of Z^d / L through the Smith form of the move-difference
    // matrix: left * M * right = diag(s).
    auto const& snf = inv.smith;
    IntVector w(p.dim(), 0);
    for (std::size_t i = 0; i < p.dim(); ++i) {
      w[i] = dot(snf.left[i], diff);
    }
    for (unsigned mod = 2; mod <= modulus_bound; ++mod) {
      Integer const modulus = mod;
      for (std::size_t i = 0; i < p.dim(); ++i) {
        Integer s = i < snf.diag.size() ? snf.diag[i] : Integer(0);
        Integer gcd;
        mpz_gcd(gcd.get_mpz_t(), modulus.get_mpz_t(), s.get_mpz_t());
        if (w[i] % gcd == 0) {
          continue;
        }
        Integer scale = modulus / gcd;
        RationalVector coeffs(p.dim());
        for (std::size_t j = 0; j < p.dim(); ++j) {
          Integer r = (scale * snf.left[i][j]) % modulus;
          if (r < 0) {
            r += modulus;
          }
          coeffs[j] = Rational(r);
        }
        return LinearSeparator{LinearSeparator::Kind::modular, std::move(coeffs),
                               modulus, {}};
      }
    }
    return std::nullopt;
  }

  std::vector<bool> admissible_closure(MonoidPresentation const& p,
                                       std::vector<bool>         seed) {
    seed.resize(p.dim(), false);
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto const& mv : p.moves()) {
        bool l = contains(seed, mv.lhs);
        bool r = contains(seed, mv.rhs);
        if (l == r) {
          continue;
        }
        auto const& missing = l ? mv.rhs : mv.lhs;
        for (std::size_t i = 0; i < p.dim(); ++i) {
          if (missing[i] != 0) {
            seed[i] = true;
          }
        }
        changed = true;
      }
    }
    return seed;
  }

  namespace {

    LinearSeparator support_separator(std::vector<bool> const& finite, std::size_t dim) {
      LinearSeparator s;
      s.kind   = LinearSeparator::Kind::extended;
      s.coeffs.assign(dim, 0);
      s.infinite.resize(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        s.infinite[i] = !finite[i];
      }
      return s;
    }

    // Separators that are +infinity off an admissible set: first pure
    // support arguments, then rational kernel vectors on the set itself.
    std::optional<LinearSeparator> extended_separator(MonoidPresentation const& p,
                                                      MonoidElement const&      f,
                                                      MonoidElement const&      g) {
      auto cf = admissible_closure(p, f.support());
      auto cg = admissible_closure(p, g.support());
      if (!contains(cg, f)) {
        return support_separator(cg, p.dim());
      }
      if (!contains(cf, g)) {
        return support_separator(cf, p.dim());
      }
      if (std::all_of(cf.begin(), cf.end(), [](bool b) { return b; })) {
        return std::nullopt;
      }
      if (auto c = separating_kernel_vector(restricted_kernel(p, cf), difference(f, g))) {
        LinearSeparator s = support_separator(cf, p.dim());
        s.coeffs          = std::move(*c);
        return s;
      }
      return std::nullopt;
    }

  }  // namespace

  std::optional<LinearSeparator> find_order_separator(MonoidPresentation const& p,
                                                      MonoidElement const&      f,
                                                      MonoidElement const&      g) {
    p.check_element(f);
    p.check_element(g);
    auto finite = admissible_closure(p, g.support());
    if (!contains(finite, f)) {
      return support_separator(finite, p.dim());
    }
    // c >= 0 on the admissible set, invariant on moves inside it, with
    // c.f - c.g >= 1.
    lp::Problem prob;
    prob.num_vars = p.dim();
    for (auto const& mv : p.moves()) {
      if (!contains(finite, mv.lhs)) {
        continue;
      }
      RationalVector row(p.dim());
      for (std::size_t i = 0; i < p.dim(); ++i) {
        row[i] = Rational(mv.lhs[i] - mv.rhs[i]);
      }
      prob.add(std::move(row), lp::Sense::eq, 0);
    }
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (!finite[i]) {
        RationalVector row(p.dim(), 0);
        row[i] = 1;
        prob.add(std::move(row), lp::Sense::eq, 0);
      }
    }
    prob.add(to_rational(difference(f, g)), lp::Sense::ge, 1);
    auto sol = lp::solve(prob);
    if (sol.status != lp::Status::optimal) {
      return std::nullopt;
    }
    bool all_finite = std::all_of(finite.begin(), finite.end(), [](bool b) { return b; });
    LinearSeparator s = support_separator(finite, p.dim());
    s.coeffs          = primitive(sol.x);
    if (all_finite) {
      s.kind = LinearSeparator::Kind::rational;
      s.infinite.clear();
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Breadth-first search over the rewrite graph
  ////////////////////////////////////////////////////////////////////////

  namespace {

    using State = std::vector<std::uint32_t>;

    struct StateHash {
      std::size_t operator()(State const& s) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : s) {
          h ^= x;
          h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
      }
    };

    struct SparseSide {
      std::vector<std::pair<std::size_t, std::uint32_t>> entries;
    };

    struct CompiledStep {
      RewriteStep step;
      SparseSide  from;
      SparseSide  to;
    };

    std::optional<State> to_state(MonoidElement const& x, std::uint32_t cap) {
      State s(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > cap) {
          return std::nullopt;
        }
        s[i] = static_cast<std::uint32_t>(x[i].get_ui());
      }
      return s;
    }

    MonoidElement from_state(State const& s) {
      IntVector v(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        v[i] = static_cast<unsigned long>(s[i]);
      }
      return MonoidElement(std::move(v));
    }

    // Steps in expansion order: move index ascending, forward before
    // backward. Identity moves are inert and skipped; moves with an entry
    // above the cap can never fire and are reported through `cap_hit`.
    std::vector<CompiledStep> compile(MonoidPresentation const& p,
                                      std::uint32_t             cap,
                                      bool&                     cap_hit) {
      std::vector<CompiledStep> out;
      for (std::size_t i = 0; i < p.moves().size(); ++i) {
        auto const& mv = p.moves()[i];
        if (mv.is_identity()) {
          continue;
        }
        auto l = to_state(mv.lhs, cap);
        auto r = to_state(mv.rhs, cap);
        if (!l || !r) {
          cap_hit = true;
          continue;
        }
        SparseSide ls, rs;
        for (std::size_t j = 0; j < p.dim(); ++j) {
          if ((*l)[j] != 0) {
            ls.entries.emplace_back(j, (*l)[j]);
          }
          if ((*r)[j] != 0) {
            rs.entries.emplace_back(j, (*r)[j]);
          }
        }
        out.push_back({{i, Direction::forward}, ls, rs});
        out.push_back({{i, Direction::backward}, rs, ls});
      }
      return out;
    }

    enum class StepResult { ok, not_applicable, over_cap };

    StepResult fire(State const& x, CompiledStep const& st, std::uint32_t cap, State& out) {
      for (auto [j, a] : st.from.entries) {
        if (x[j] < a) {
          return StepResult::not_applicable;
        }
      }
      out = x;
      for (auto [j, a] : st.from.entries) {
        out[j] -= a;
      }
      for (auto [j, a] : st.to.entries) {
        if (static_cast<std::uint64_t>(out[j]) + a > cap) {
          return StepResult::over_cap;
        }
        out[j] += a;
      }
      return StepResult::ok;
    }

    RewriteStep reversed(RewriteStep s) {
      return {s.move_index,
              s.direction == Direction::forward ? Direction::backward : Direction::forward};
    }

    constexpr std::uint32_t no_parent = UINT32_MAX;

    struct SearchTree {
      struct Node {
        State         state;
        std::uint32_t parent;
        RewriteStep   step;  // applied to parent's state to reach this one
      };
      std::vector<Node>                                   nodes;
      std::unordered_map<State, std::uint32_t, StateHash> index;
      bool                                                cap_hit = false;

      explicit SearchTree(State root) {
        index.emplace(root, 0);
        nodes.push_back({std::move(root), no_parent, {}});
      }

      std::uint32_t add(State s, std::uint32_t parent, RewriteStep step) {
        auto id = static_cast<std::uint32_t>(nodes.size());
        index.emplace(s, id);
        nodes.push_back({std::move(s), parent, step});
        return id;
      }

      // Steps from the root to node `id`.
      std::vector<RewriteStep> path_to(std::uint32_t id) const {
        std::vector<RewriteStep> p;
        while (nodes[id].parent != no_parent) {
          p.push_back(nodes[id].step);
          id = nodes[id].parent;
        }
        std::reverse(p.begin(), p.end());
        return p;
      }
    };

  }  // namespace

  namespace {

    DecisionOutcome bidirectional_search(MonoidPresentation const& p,
                                         MonoidElement const&      f,
                                         MonoidElement const&      g,
                                         SearchBudget const&       budget) {
      DecisionOutcome out;
      bool            moves_capped = false;
      auto            steps        = compile(p, budget.max_coordinate, moves_capped);
      auto            sf           = to_state(f, budget.max_coordinate);
      auto            sg           = to_state(g, budget.max_coordinate);
      if (!sf || !sg) {
        out.report.coordinate_cap_hit = true;
        return out;
      }

      SearchTree  trees[2] = {SearchTree(*sf), SearchTree(*sg)};
      std::size_t level_begin[2] = {0, 0};
      std::size_t level_end[2]   = {1, 1};
      State       next;

      auto finish = [&](int side, std::uint32_t from, RewriteStep st, std::uint32_t other) {
        std::vector<RewriteStep> to_meet, from_meet;
        if (side == 0) {
          to_meet = trees[0].path_to(from);
          to_meet.push_back(st);
          from_meet = trees[1].path_to(other);
        } else {
          to_meet   = trees[0].path_to(other);
          from_meet = trees[1].path_to(from);
          from_meet.push_back(st);
        }
        EquivCertificate cert{f, std::move(to_meet), g};
        for (auto it = from_meet.rbegin(); it != from_meet.rend(); ++it) {
          cert.steps.push_back(reversed(*it));
        }
        out.verdict     = Verdict::equiv;
        out.certificate = std::move(cert);
      };

      while (true) {
        std::size_t size0 = level_end[0] - level_begin[0];
        std::size_t size1 = level_end[1] - level_begin[1];
        int const   side  = size0 <= size1 ? 0 : 1;
        auto&       tree  = trees[side];
        auto&       other = trees[1 - side];

        for (std::size_t id = level_begin[side]; id < level_end[side]; ++id) {
          for (auto const& st : steps) {
            auto r = fire(tree.nodes[id].state, st, budget.max_coordinate, next);
            if (r == StepResult::over_cap) {
              tree.cap_hit = true;
            }
            if (r != StepResult::ok || tree.index.count(next)) {
              continue;
            }
            if (auto hit = other.index.find(next); hit != other.index.end()) {
              finish(side, static_cast<std::uint32_t>(id), st.step, hit->second);
              out.report.states_visited = trees[0].nodes.size() + trees[1].nodes.size();
              return out;
            }
            if (trees[0].nodes.size() + trees[1].nodes.size() >= budget.max_states) {
              out.report.state_cap_hit  = true;
              out.report.states_visited = trees[0].nodes.size() + trees[1].nodes.size();
              out.report.coordinate_cap_hit = moves_capped || trees[0].cap_hit || trees[1].cap_hit;
              return out;
            }
            tree.add(next, static_cast<std::uint32_t>(id), st.step);
          }
        }
        level_begin[side] = level_end[side];
        level_end[side]   = tree.nodes.size();
        if (level_begin[side] == level_end[side]) {
          out.report.states_visited = trees[0].nodes.size() + trees[1].nodes.size();
          out.report.coordinate_cap_hit = moves_capped || trees[0].cap_hit || trees[1].cap_hit;
          out.report.component_exhausted = !moves_capped && !tree.cap_hit;
          if (out.report.component_exhausted) {
            out.verdict = Verdict::not_equiv;
          }
          return out;
        }
      }
    }

  }  // namespace

  DecisionOutcome decide_equiv(MonoidPresentation const& p,
                               MonoidElement const&      f,
                               MonoidElement const&      g,
                               SearchBudget const&       budget) {
    p.check_element(f);
    p.check_element(g);
    DecisionOutcome out;
    if (f == g) {
      out.verdict     = Verdict::equiv;
      out.certificate = EquivCertificate{f, {}, g};
      return out;
    }
    if (auto s = find_separator(p, f, g, budget.modulus_bound)) {
      out.verdict   = Verdict::not_equiv;
      out.separator = std::move(*s);
      return out;
    }
    if (auto s = extended_separator(p, f, g)) {
      out.verdict   = Verdict::not_equiv;
      out.separator = std::move(*s);
      return out;
    }
    return bidirectional_search(p, f, g, budget);
  }

  DecisionOutcome decide_leq(MonoidPresentation const& p,
                             MonoidElement const&      f,
                             MonoidElement const&      g,
                             SearchBudget const&       budget) {
    p.check_element(f);
    p.check_element(g);
    DecisionOutcome out;
    if (f.pointwise_leq(g)) {
      out.verdict     = Verdict::equiv;
      out.certificate = EquivCertificate{g, {}, g};
      out.remainder   = g - f;
      return out;
    }
    if (auto s = find_order_separator(p, f, g)) {
      out.verdict   = Verdict::not_equiv;
      out.separator = std::move(*s);
      return out;
    }

    bool moves_capped = false;
    auto steps        = compile(p, budget.max_coordinate, moves_capped);
    auto sg           = to_state(g, budget.max_coordinate);
    auto sf           = to_state(f, budget.max_coordinate);
    if (!sg || !sf) {
      out.report.coordinate_cap_hit = true;
      return out;
    }
    auto covers = [&](State const& s) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < (*sf)[i]) {
          return false;
        }
      }
      return true;
    };

    SearchTree  tree(*sg);
    std::size_t begin = 0, end = 1;
    State       next;
    while (begin != end) {
      for (std::size_t id = begin; id < end; ++id) {
        for (auto const& st : steps) {
          auto r = fire(tree.nodes[id].state, st, budget.max_coordinate, next);
          if (r == StepResult::over_cap) {
            tree.cap_hit = true;
          }
          if (r != StepResult::ok || tree.index.count(next)) {
            continue;
          }
          if (tree.nodes.size() >= budget.max_states) {
            out.report.state_cap_hit      = true;
            out.report.coordinate_cap_hit = moves_capped || tree.cap_hit;
            out.report.states_visited     = tree.nodes.size();
            return out;
          }
          auto nid = tree.add(next, static_cast<std::uint32_t>(id), st.step);
          if (covers(next)) {
            MonoidElement reached = from_state(next);
            out.verdict           = Verdict::equiv;
            out.remainder         = reached - f;
            out.certificate       = EquivCertificate{g, tree.path_to(nid), std::move(reached)};
            out.report.states_visited = tree.nodes.size();
            return out;
          }
        }
      }
      begin = end;
      end   = tree.nodes.size();
    }
    out.report.states_visited      = tree.nodes.size();
    out.report.coordinate_cap_hit  = moves_capped || tree.cap_hit;
    out.report.component_exhausted = !out.report.coordinate_cap_hit;
    if (out.report.component_exhausted) {
      out.verdict = Verdict::not_equiv;
    }
    return out;
  }

  DecisionOutcome kl_paradoxical(MonoidPresentation const& p,
                                 MonoidElement const&      theta,
                                 unsigned                  k,
                                 unsigned                  l,
                                 SearchBudget const&       budget) {
    if (l < 1 || k <= l) {
      throw Error(ErrorCode::invalid_pair,
                  "need k > l >= 1, got (" + std::to_string(k) + ","
                      + std::to_string(l) + ")");
    }
    p.check_element(theta);
    return decide_leq(p, theta.scaled(k), theta.scaled(l), budget);
  }

  DecisionOutcome combine_properly_infinite(MonoidPresentation const& p,
                                            MonoidElement const&      a,
                                            DecisionOutcome const&    cert_a,
                                            MonoidElement const&      b,
                                            DecisionOutcome const&    cert_b) {
    if (cert_a.verdict != Verdict::equiv || cert_b.verdict != Verdict::equiv
        || !cert_a.certificate || !cert_b.certificate || !cert_a.remainder
        || !cert_b.remainder) {
      throw Error(ErrorCode::invalid_input, "both inputs must carry order certificates");
    }
    p.check_element(a);
    p.check_element(b);
    // Chain a: a -> 2a + h_a. Run it on a + b, then chain b on the b part.
    EquivCertificate cert{a + b, cert_a.certificate->steps, {}};
    cert.steps.insert(cert.steps.end(), cert_b.certificate->steps.begin(),
                      cert_b.certificate->steps.end());
    cert.end = cert_a.certificate->end + cert_b.certificate->end;

    DecisionOutcome out;
    out.verdict     = Verdict::equiv;
    out.certificate = std::move(cert);
    out.remainder   = *cert_a.remainder + *cert_b.remainder;
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Bounded almost-unperforation sweep
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Advances a coefficient vector in [0, bound]^r lexicographically
    // (last coordinate fastest). Returns false after the last vector.
    bool next_coefficients(std::vector<unsigned>& c, unsigned bound) {
      for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] < bound) {
          ++c[i];
          return true;
        }
        c[i] = 0;
      }
      return false;
    }

    MonoidElement combination(std::vector<MonoidElement> const& gens,
                              std::vector<unsigned> const&      coeffs,
                              std::size_t                       dim) {
      MonoidElement x(dim);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (coeffs[i] != 0) {
          x += gens[i].scaled(coeffs[i]);
        }
      }
      return x;
    }

  }  // namespace

  UnperforationResult
  almost_unperforated_up_to(MonoidPresentation const&         p,
                            std::vector<MonoidElement> const& generators,
                            UnperforationBounds const&        bounds) {
    if (generators.empty()) {
      throw Error(ErrorCode::invalid_input, "at least one generator is required");
    }
    for (auto const& gen : generators) {
      p.check_element(gen);
    }
    UnperforationResult   result;
    std::vector<unsigned> a(generators.size(), 0);
    while (next_coefficients(a, bounds.max_coefficient)) {
      MonoidElement         theta = combination(generators, a, p.dim());
      std::vector<unsigned> b(generators.size(), 0);
      do {
        if (result.candidates_examined >= bounds.max_candidates) {
          result.status = UnperforationResult::Status::bounds_not_exhausted;
          return result;
        }
        ++result.candidates_examined;
        MonoidElement eta = combination(generators, b, p.dim());
        auto refute       = find_order_separator(p, theta, eta);
        if (!refute && decide_leq(p, theta, eta, bounds.budget).verdict != Verdict::not_equiv) {
          continue;
        }
        for (unsigned n = 2; n <= bounds.max_multiplier; ++n) {
          for (unsigned m = 1; m < n; ++m) {
            auto leq = decide_leq(p, theta.scaled(n), eta.scaled(m), bounds.budget);
            if (leq.verdict == Verdict::equiv) {
              result.status         = UnperforationResult::Status::counterexample;
              result.counterexample = UnperforationCounterexample{
                  theta, eta, n, m, std::move(leq), std::move(refute)};
              return result;
            }
            if (leq.verdict == Verdict::unknown) {
              ++result.undecided;
            }
          }
        }
      } while (next_coefficients(b, bounds.max_coefficient));
    }
    result.status = UnperforationResult::Status::clear_within_bounds;
    return result;
  }

}  // namespace typesemi
