#include "typesemi/classifier.hpp"

#include <algorithm>

#include "typesemi/error.hpp"

namespace typesemi {

  char const* classification_name(Classification c) noexcept {
    switch (c) {
      case Classification::stably_finite: return "STABLY_FINITE";
      case Classification::purely_infinite: return "PURELY_INFINITE";
      case Classification::inconclusive: return "INCONCLUSIVE";
      case Classification::hypotheses_not_met: return "HYPOTHESES_NOT_MET";
    }
    return "INCONCLUSIVE";
  }

  ClassificationReport classify(KGraphModel const& m, ClassifyBudgets const& budgets) {
    auto const           p = presentation_from_kgraph(m);
    ClassificationReport r;
    r.k                  = m.k();
    r.num_vertices       = m.num_vertices();
    r.structure          = structural_checks(m);
    r.minimality_proxy   = r.structure.cofinal;
    r.principality_proxy = r.structure.condition_L;
    r.faithful_state     = faithful_finite_state(p);
    r.coboundary         = coboundary_check(p);
    r.stiemke_consistent = stiemke_crosscheck(p).consistent;
    if (!r.stiemke_consistent) {
      throw Error(ErrorCode::internal, "coboundary and invariant-vector solvers disagree");
    }

    bool all_properly_infinite = true;
    bool some_traceless        = false;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
      GeneratorResult g;
      g.vertex            = v;
      auto const delta    = MonoidElement::unit(m.num_vertices(), v);
      g.properly_infinite = kl_paradoxical(p, delta, 2, 1, budgets.search);
      g.state             = solve_state_at(p, delta);
      if (g.state && g.properly_infinite.verdict == Verdict::equiv) {
        throw Error(ErrorCode::internal,
                    "generator " + m.vertices()[v]
                        + " carries both a state and a (2,1)-paradox certificate");
      }
      if (!g.state) {
        some_traceless = true;
        for (unsigned n = 1; n <= budgets.max_tarski_n; ++n) {
          auto out = kl_paradoxical(p, delta, n + 1, n, budgets.search);
          if (out.verdict == Verdict::equiv) {
            g.tarski_n       = n;
            g.tarski_paradox = std::move(out);
            break;
          }
        }
      }
      all_properly_infinite
          = all_properly_infinite && g.properly_infinite.verdict == Verdict::equiv;
      r.generators.push_back(std::move(g));
    }
    if (r.faithful_state && all_properly_infinite) {
      throw Error(ErrorCode::internal,
                  "a faithful state and a full set of paradox certificates coexist");
    }

    r.caveats.push_back("minimality is tested through cofinality of the skeleton");
    if (m.k() == 1) {
      r.caveats.push_back("topological principality is tested through condition (L)");
    } else {
      r.caveats.push_back(
          "topological principality is undetermined for k >= 2: factorization rules are "
          "not part of the model");
    }
    r.caveats.push_back(
        "the coboundary condition is decided on the vertex-level difference lattice");

    bool const proxies_fail
        = !r.minimality_proxy || r.principality_proxy == Tristate::no;
    bool const proxies_hold
        = r.minimality_proxy && r.principality_proxy == Tristate::yes;

    if (proxies_fail) {
      r.verdict = Classification::hypotheses_not_met;
      if (r.faithful_state) {
        r.caveats.push_back("a faithful invariant state is attached: the algebra is stably "
                            "finite regardless of the failed hypotheses");
      }
      return r;
    }
    if (r.faithful_state) {
      r.verdict = Classification::stably_finite;
      r.caveats.push_back("remark: amenable with a faithful trace, hence quasidiagonal; not "
                          "computed");
      return r;
    }
    if (all_properly_infinite) {
      if (proxies_hold) {
        r.verdict = Classification::purely_infinite;
      } else {
        r.verdict = Classification::inconclusive;
        r.caveats.push_back("every generator is properly infinite, so the type semigroup is "
                            "purely infinite; the principality hypothesis is unverified");
      }
      return r;
    }
    r.verdict = Classification::inconclusive;
    if (some_traceless) {
      std::vector<MonoidElement> gens;
      for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        gens.push_back(MonoidElement::unit(m.num_vertices(), v));
      }
      r.unperforation = almost_unperforated_up_to(p, gens, budgets.unperforation);
      if (r.unperforation->status == UnperforationResult::Status::clear_within_bounds
          && proxies_hold) {
        r.caveats.push_back("traceless generators and no perforation within bounds: purely "
                            "infinite modulo almost unperforation");
      } else {
        r.caveats.push_back("traceless generators found; remaining generators undecided "
                            "within budget");
      }
    } else {
      r.caveats.push_back("no faithful state and not every generator certified properly "
                          "infinite within budget");
    }
    return r;
  }

}  // namespace typesemi
