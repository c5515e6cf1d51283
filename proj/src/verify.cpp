#include "typesemi/verify.hpp"

#include <cstddef>
#include <deque>
#include <set>

namespace typesemi::verify {

  namespace {

    // Independent replay on raw integer vectors.
    bool run_chain(MonoidPresentation const&       p,
                   IntVector&                      x,
                   std::vector<RewriteStep> const& steps,
                   std::string&                    why) {
      for (std::size_t i = 0; i < steps.size(); ++i) {
        auto const& st = steps[i];
        if (st.move_index >= p.moves().size()) {
          why = "step " + std::to_string(i) + " names a missing move";
          return false;
        }
        auto const& mv   = p.moves()[st.move_index];
        bool const  fwd  = st.direction == Direction::forward;
        auto const& take = fwd ? mv.lhs.entries() : mv.rhs.entries();
        auto const& give = fwd ? mv.rhs.entries() : mv.lhs.entries();
        for (std::size_t v = 0; v < x.size(); ++v) {
          x[v] -= take[v];
          if (x[v] < 0) {
            why = "step " + std::to_string(i) + " does not apply";
            return false;
          }
        }
        for (std::size_t v = 0; v < x.size(); ++v) {
          x[v] += give[v];
        }
      }
      return true;
    }

    Rational sum_with(RationalVector const& c, IntVector const& x) {
      Integer  whole = 0;
      Rational s     = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) == 0) {
          continue;
        }
        if (c[i].get_den() == 1) {
          whole += c[i].get_num() * x[i];
        } else {
          s += c[i] * x[i];
        }
      }
      return s + whole;
    }

    // Breadth-first closure of {start} under all moves in both directions.
    // Stops early when `hit` fires; nullopt when more than `cap` elements.
    template <typename Hit>
    std::optional<bool> closure_hits(MonoidPresentation const& p,
                                     IntVector const&          start,
                                     Hit&&                     hit,
                                     std::size_t               cap) {
      std::set<IntVector>   seen{start};
      std::deque<IntVector> todo{start};
      if (hit(start)) {
        return true;
      }
      while (!todo.empty()) {
        IntVector x = std::move(todo.front());
        todo.pop_front();
        for (std::size_t j = 0; j < p.moves().size(); ++j) {
          for (auto dir : {Direction::forward, Direction::backward}) {
            IntVector   y = x;
            std::string why;
            if (!run_chain(p, y, {{j, dir}}, why) || seen.count(y)) {
              continue;
            }
            if (hit(y)) {
              return true;
            }
            if (seen.size() >= cap) {
              return std::nullopt;
            }
            seen.insert(y);
            todo.push_back(std::move(y));
          }
        }
      }
      return false;
    }

  }  // namespace

  Verdict equivalence(MonoidPresentation const& p,
                      DecisionOutcome const&    outcome,
                      MonoidElement const&      f,
                      MonoidElement const&      g) {
    if (outcome.verdict != typesemi::Verdict::equiv || !outcome.certificate) {
      return "no equivalence certificate";
    }
    auto const& cert = *outcome.certificate;
    if (cert.start != f || cert.end != g) {
      return "certificate endpoints differ from the query";
    }
    IntVector   x = f.entries();
    std::string why;
    if (!run_chain(p, x, cert.steps, why)) {
      return why;
    }
    return x == g.entries() ? "" : "replay does not end at the target";
  }

  Verdict order(MonoidPresentation const& p,
                DecisionOutcome const&    outcome,
                MonoidElement const&      f,
                MonoidElement const&      g) {
    if (outcome.verdict != typesemi::Verdict::equiv || !outcome.certificate
        || !outcome.remainder) {
      return "no order certificate";
    }
    auto const& cert = *outcome.certificate;
    if (cert.start != g) {
      return "chain does not start at the larger element";
    }
    IntVector   x = g.entries();
    std::string why;
    if (!run_chain(p, x, cert.steps, why)) {
      return why;
    }
    if (x != cert.end.entries()) {
      return "chain does not end at the recorded element";
    }
    for (std::size_t v = 0; v < x.size(); ++v) {
      if (x[v] != f[v] + (*outcome.remainder)[v]) {
        return "end of chain is not f + remainder";
      }
    }
    return "";
  }

  Verdict separator(MonoidPresentation const& p,
                    LinearSeparator const&    s,
                    MonoidElement const&      f,
                    MonoidElement const&      g,
                    bool                      order_sense) {
    using Kind = LinearSeparator::Kind;
    if (s.coeffs.size() != p.dim()) {
      return "separator has the wrong length";
    }
    auto infinite_on = [&](IntVector const& x) {
      if (s.kind != Kind::extended) {
        return false;
      }
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0 && s.infinite.at(i)) {
          return true;
        }
      }
      return false;
    };
    auto reduce = [&](Rational v) {
      if (s.kind != Kind::modular) {
        return v;
      }
      Integer r = v.get_num() % s.modulus;
      return Rational(r < 0 ? r + s.modulus : r);
    };
    if (s.kind == Kind::modular) {
      if (s.modulus < 2) {
        return "modulus below 2";
      }
      for (auto const& c : s.coeffs) {
        if (c.get_den() != 1) {
          return "modular coefficients must be integers";
        }
      }
    }
    if (order_sense) {
      if (s.kind == Kind::modular) {
        return "modular functionals do not respect order";
      }
      for (auto const& c : s.coeffs) {
        if (c < 0) {
          return "order separator has a negative coefficient";
        }
      }
    }
    for (std::size_t j = 0; j < p.moves().size(); ++j) {
      auto const& l  = p.moves()[j].lhs.entries();
      auto const& r  = p.moves()[j].rhs.entries();
      bool        il = infinite_on(l), ir = infinite_on(r);
      if (il != ir) {
        return "move " + std::to_string(j) + " is finite on one side only";
      }
      if (!il && reduce(sum_with(s.coeffs, l)) != reduce(sum_with(s.coeffs, r))) {
        return "move " + std::to_string(j) + " changes the functional";
      }
    }
    bool const inf_f = infinite_on(f.entries());
    bool const inf_g = infinite_on(g.entries());
    Rational   vf    = inf_f ? Rational(0) : reduce(sum_with(s.coeffs, f.entries()));
    Rational   vg    = inf_g ? Rational(0) : reduce(sum_with(s.coeffs, g.entries()));
    if (order_sense) {
      if (inf_g) {
        return "functional is infinite on the larger element";
      }
      return inf_f || vf > vg ? "" : "functional does not separate f above g";
    }
    if (inf_f != inf_g) {
      return "";
    }
    if (inf_f) {
      return "functional is infinite on both elements";
    }
    return vf != vg ? "" : "functional takes equal values";
  }

  Verdict refutation(MonoidPresentation const& p,
                     DecisionOutcome const&    outcome,
                     MonoidElement const&      f,
                     MonoidElement const&      g,
                     bool                      order_sense,
                     std::size_t               max_states) {
    if (outcome.verdict != typesemi::Verdict::not_equiv) {
      return "no refutation";
    }
    if (outcome.separator) {
      return separator(p, *outcome.separator, f, g, order_sense);
    }
    if (!outcome.report.component_exhausted) {
      return "refutation carries neither a separator nor an exhausted class";
    }
    if (order_sense) {
      auto covers = [&](IntVector const& x) {
        for (std::size_t v = 0; v < x.size(); ++v) {
          if (x[v] < f[v]) {
            return false;
          }
        }
        return true;
      };
      auto r = closure_hits(p, g.entries(), covers, max_states);
      if (!r) {
        return "class of g too large to re-enumerate";
      }
      return *r ? "class of g covers f" : "";
    }
    for (auto const* side : {&f, &g}) {
      auto const& other = side == &f ? g : f;
      auto r = closure_hits(
          p, side->entries(), [&](IntVector const& x) { return x == other.entries(); },
          max_states);
      if (r) {
        return *r ? "the two classes meet" : "";
      }
    }
    return "neither class could be re-enumerated";
  }

  Verdict state(MonoidPresentation const& p, StateCertificate const& cert) {
    auto const& c = cert.vector.finite_values;
    auto const& F = cert.vector.finite_support;
    if (c.size() != p.dim() || F.size() != p.dim()) {
      return "state has the wrong length";
    }
    for (std::size_t v = 0; v < p.dim(); ++v) {
      if (c[v] < 0 || (!F[v] && c[v] != 0)) {
        return "state value out of range at coordinate " + std::to_string(v);
      }
    }
    LinearSeparator as_functional{LinearSeparator::Kind::extended, c, 0, {}};
    for (std::size_t v = 0; v < p.dim(); ++v) {
      as_functional.infinite.push_back(!F[v]);
    }
    for (std::size_t j = 0; j < p.moves().size(); ++j) {
      auto const& mv = p.moves()[j];
      bool        l = true, r = true;
      for (std::size_t v = 0; v < p.dim(); ++v) {
        l = l && (mv.lhs[v] == 0 || F[v]);
        r = r && (mv.rhs[v] == 0 || F[v]);
      }
      if (l != r) {
        return "support is not admissible at move " + std::to_string(j);
      }
      if (l && sum_with(c, mv.lhs.entries()) != sum_with(c, mv.rhs.entries())) {
        return "state is not invariant under move " + std::to_string(j);
      }
    }
    for (std::size_t v = 0; v < p.dim(); ++v) {
      if (cert.target[v] != 0 && !F[v]) {
        return "target is not inside the finite support";
      }
    }
    if (sum_with(c, cert.target.entries()) != 1 || cert.normalization != 1) {
      return "state is not normalized at the target";
    }
    return "";
  }

  Verdict faithful_state(MonoidPresentation const& p, RationalVector const& c) {
    if (c.size() != p.dim()) {
      return "state has the wrong length";
    }
    Rational total = 0;
    for (auto const& x : c) {
      if (x <= 0) {
        return "state is not strictly positive";
      }
      total += x;
    }
    if (total != 1) {
      return "state is not normalized";
    }
    for (std::size_t j = 0; j < p.moves().size(); ++j) {
      auto const& mv = p.moves()[j];
      if (sum_with(c, mv.lhs.entries()) != sum_with(c, mv.rhs.entries())) {
        return "state is not invariant under move " + std::to_string(j);
      }
    }
    return "";
  }

  Verdict coboundary_failure(MonoidPresentation const& p, CoboundaryResult const& r) {
    if (r.holds) {
      return "result claims the condition holds";
    }
    if (r.z.size() != p.moves().size() || r.y.size() != p.dim()) {
      return "witness has the wrong shape";
    }
    IntVector y(p.dim(), 0);
    for (std::size_t j = 0; j < p.moves().size(); ++j) {
      for (std::size_t v = 0; v < p.dim(); ++v) {
        y[v] += r.z[j] * (p.moves()[j].lhs[v] - p.moves()[j].rhs[v]);
      }
    }
    if (y != r.y) {
      return "y is not the stated combination of move differences";
    }
    bool nonzero = false;
    for (auto const& x : y) {
      if (x < 0) {
        return "y has a negative entry";
      }
      nonzero = nonzero || x != 0;
    }
    return nonzero ? "" : "y is zero";
  }

  Verdict coboundary_holds(MonoidPresentation const& p, CoboundaryResult const& r) {
    if (!r.holds) {
      return "result claims the condition fails";
    }
    return lp::is_farkas_certificate(coboundary_problem(p), r.farkas)
               ? ""
               : "Farkas certificate does not verify";
  }

}  // namespace typesemi::verify
