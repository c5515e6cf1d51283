#include "typesemi/commands.hpp"

#include <random>
#include <sstream>

#include "typesemi/classifier.hpp"
#include "typesemi/error.hpp"
#include "typesemi/tarski.hpp"
#include "typesemi/verify.hpp"

namespace typesemi {

  using nlohmann::json;

  std::string CommandResult::json() const {
    return report.dump(2) + "\n";
  }

  namespace {

    void render(std::ostringstream& out, nlohmann::json const& j, std::string const& indent) {
      for (auto it = j.begin(); it != j.end(); ++it) {
        auto const& v      = it.value();
        bool const  nested = v.is_object()
                            || (v.is_array() && !v.empty()
                                && (v[0].is_object() || v[0].is_array()));
        out << indent << it.key() << ":";
        if (!nested) {
          out << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
          continue;
        }
        out << "\n";
        if (v.is_object()) {
          render(out, v, indent + "  ");
          continue;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
          out << indent << "  [" << i << "]";
          if (v[i].is_object()) {
            out << "\n";
            render(out, v[i], indent + "    ");
          } else {
            out << " " << v[i].dump() << "\n";
          }
        }
      }
    }

    json model_header(ModelFile const& m, char const* command, CommandOptions const& o) {
      json model = {{"kind", kind_name(m.kind)}, {"labels", m.labels()}};
      if (!m.name.empty()) {
        model["name"] = m.name;
      }
      return {{"command", command},
              {"model", model},
              {"options",
               {{"budget_states", o.budget.max_states},
                {"budget_coord", o.budget.max_coordinate},
                {"modulus_bound", o.budget.modulus_bound}}}};
    }

    int exit_for(Verdict v) {
      return v == Verdict::unknown ? exit_unknown : exit_definite;
    }

    // A failed independent check turns the run into a consistency failure.
    void record_check(CommandResult& r, std::string const& name, std::string const& failure) {
      r.report["checks"][name] = failure.empty() ? "ok" : failure;
      if (!failure.empty()) {
        r.exit_code = exit_internal;
      }
    }

    void check_outcome(CommandResult&            r,
                       MonoidPresentation const& p,
                       DecisionOutcome const&    d,
                       MonoidElement const&      f,
                       MonoidElement const&      g,
                       bool                      order_sense,
                       std::string const&        name) {
      if (d.verdict == Verdict::equiv) {
        record_check(r, name,
                     order_sense ? verify::order(p, d, f, g) : verify::equivalence(p, d, f, g));
      } else if (d.verdict == Verdict::not_equiv) {
        record_check(r, name, verify::refutation(p, d, f, g, order_sense));
      }
    }

    char const* order_name(Verdict v) {
      static char const* const names[] = {"LEQ", "NOT_LEQ", "UNKNOWN"};
      return names[static_cast<int>(v)];
    }

    json order_json(DecisionOutcome const& d) {
      json j       = to_json(d);
      j["verdict"] = order_name(d.verdict);
      return j;
    }

    FiniteGroupAction const& require_action(ModelFile const& m) {
      if (!m.action) {
        throw Error(ErrorCode::invalid_input, "this command expects an action model");
      }
      return *m.action;
    }

  }  // namespace

  std::string CommandResult::text() const {
    std::ostringstream out;
    render(out, report, "");
    return out.str();
  }

  CommandResult run_equiv(ModelFile const&      m,
                          std::string const&    lhs,
                          std::string const&    rhs,
                          CommandOptions const& o) {
    auto const p = m.presentation();
    auto const f = parse_vector(lhs, p.dim());
    auto const g = parse_vector(rhs, p.dim());
    auto const d = decide_equiv(p, f, g, o.budget);

    CommandResult r;
    r.report                 = model_header(m, "equiv", o);
    r.report["presentation"] = to_json(p);
    r.report["lhs"]          = to_json(f);
    r.report["rhs"]          = to_json(g);
    r.report["outcome"]      = to_json(d);
    r.report["verdict"]      = verdict_name(d.verdict);
    r.exit_code              = exit_for(d.verdict);
    check_outcome(r, p, d, f, g, false, "outcome");
    return r;
  }

  CommandResult run_leq(ModelFile const&      m,
                        std::string const&    lhs,
                        std::string const&    rhs,
                        CommandOptions const& o) {
    auto const p = m.presentation();
    auto const f = parse_vector(lhs, p.dim());
    auto const g = parse_vector(rhs, p.dim());
    auto const d = decide_leq(p, f, g, o.budget);

    CommandResult r;
    r.report                 = model_header(m, "leq", o);
    r.report["presentation"] = to_json(p);
    r.report["lhs"]          = to_json(f);
    r.report["rhs"]          = to_json(g);
    r.report["outcome"]      = order_json(d);
    r.report["verdict"]      = order_name(d.verdict);
    r.exit_code              = exit_for(d.verdict);
    check_outcome(r, p, d, f, g, true, "outcome");
    return r;
  }

  CommandResult run_paradox(ModelFile const&      m,
                            std::string const&    target,
                            unsigned              k,
                            unsigned              l,
                            CommandOptions const& o) {
    auto const p     = m.presentation();
    auto const theta = parse_vector(target, p.dim());
    auto const d     = kl_paradoxical(p, theta, k, l, o.budget);

    static char const* const names[] = {"PARADOXICAL", "NOT_PARADOXICAL", "UNKNOWN"};
    CommandResult            r;
    r.report                 = model_header(m, "paradox", o);
    r.report["presentation"] = to_json(p);
    r.report["target"]       = to_json(theta);
    r.report["k"]            = k;
    r.report["l"]            = l;
    r.report["outcome"]      = order_json(d);
    r.report["verdict"]      = names[static_cast<int>(d.verdict)];
    r.exit_code              = exit_for(d.verdict);
    check_outcome(r, p, d, theta.scaled(k), theta.scaled(l), true, "outcome");
    return r;
  }

  CommandResult run_state(ModelFile const& m, std::string const& target, CommandOptions const& o) {
    auto const p     = m.presentation();
    auto const theta = parse_vector(target, p.dim());
    auto const cert  = solve_state_at(p, theta);

    CommandResult r;
    r.report           = model_header(m, "state", o);
    r.report["target"] = to_json(theta);
    r.report["verdict"] = cert ? "STATE" : "NO_STATE";
    if (cert) {
      r.report["state"] = to_json(*cert);
      record_check(r, "state", verify::state(p, *cert));
    }
    return r;
  }

  CommandResult run_coboundary(ModelFile const& m, CommandOptions const& o) {
    auto const p       = m.presentation();
    auto const cob     = coboundary_check(p);
    auto const stiemke = stiemke_crosscheck(p);

    CommandResult r;
    r.report            = model_header(m, "coboundary", o);
    r.report["verdict"] = cob.holds ? "HOLDS" : "FAILS";
    if (cob.holds) {
      r.report["farkas"] = to_json(cob.farkas);
      record_check(r, "coboundary", verify::coboundary_holds(p, cob));
    } else {
      r.report["witness"] = {{"z", to_json(cob.z)}, {"y", to_json(cob.y)}};
      record_check(r, "coboundary", verify::coboundary_failure(p, cob));
    }
    json st = {{"consistent", stiemke.consistent}, {"diagnostics", stiemke.diagnostics}};
    if (stiemke.positive_invariant) {
      st["positive_invariant"] = to_json(*stiemke.positive_invariant);
    }
    r.report["stiemke"] = st;
    record_check(r, "stiemke", stiemke.consistent ? "" : "duality mismatch");
    return r;
  }

  CommandResult run_unperforation(ModelFile const& m, CommandOptions const& o) {
    auto const p = m.presentation();
    std::vector<MonoidElement> gens;
    for (std::size_t v = 0; v < p.dim(); ++v) {
      gens.push_back(MonoidElement::unit(p.dim(), v));
    }
    UnperforationBounds bounds;
    bounds.max_coefficient = o.coeff_bound;
    bounds.max_multiplier  = o.mult_bound;
    bounds.budget          = o.budget;
    auto const res         = almost_unperforated_up_to(p, gens, bounds);

    CommandResult r;
    r.report                        = model_header(m, "unperforation", o);
    r.report["options"]["coeff_bound"] = o.coeff_bound;
    r.report["options"]["mult_bound"]  = o.mult_bound;
    r.report["candidates_examined"] = res.candidates_examined;
    r.report["undecided"]           = res.undecided;
    switch (res.status) {
      case UnperforationResult::Status::counterexample: {
        auto const& c       = *res.counterexample;
        r.report["verdict"] = "COUNTEREXAMPLE";
        r.report["counterexample"] = {{"theta", to_json(c.theta)},
                                      {"eta", to_json(c.eta)},
                                      {"n", c.n},
                                      {"m", c.m},
                                      {"leq", order_json(c.leq)},
                                      {"not_leq", c.not_leq ? to_json(*c.not_leq)
                                                            : json("EXHAUSTED_CLASS")}};
        record_check(r, "leq", verify::order(p, c.leq, c.theta.scaled(c.n), c.eta.scaled(c.m)));
        DecisionOutcome refuted;
        refuted.verdict                    = Verdict::not_equiv;
        refuted.separator                  = c.not_leq;
        refuted.report.component_exhausted = !c.not_leq;
        record_check(r, "not_leq", verify::refutation(p, refuted, c.theta, c.eta, true));
        break;
      }
      case UnperforationResult::Status::clear_within_bounds:
        r.report["verdict"] = "NO_COUNTEREXAMPLE_WITHIN_BOUNDS";
        break;
      case UnperforationResult::Status::bounds_not_exhausted:
        r.report["verdict"] = "BOUNDS_NOT_EXHAUSTED";
        r.exit_code         = exit_unknown;
        break;
    }
    return r;
  }

  CommandResult run_classify(ModelFile const& m, CommandOptions const& o) {
    if (!m.kgraph) {
      throw Error(ErrorCode::invalid_input, "classify expects a graph or kgraph model");
    }
    ClassifyBudgets budgets;
    budgets.search                        = o.budget;
    budgets.unperforation.max_coefficient = o.coeff_bound;
    budgets.unperforation.max_multiplier  = o.mult_bound;
    budgets.unperforation.budget          = o.budget;
    auto const rep                        = classify(*m.kgraph, budgets);
    auto const p                          = m.presentation();
    auto const labels                     = m.labels();

    CommandResult r;
    r.report                       = model_header(m, "classify", o);
    r.report["k"]                  = rep.k;
    r.report["structure"]          = to_json(rep.structure, labels);
    r.report["minimality_proxy"]   = rep.minimality_proxy;
    r.report["principality_proxy"] = tristate_name(rep.principality_proxy);
    r.report["verdict"]            = classification_name(rep.verdict);
    r.report["caveats"]            = rep.caveats;
    r.report["stiemke_consistent"] = rep.stiemke_consistent;

    if (rep.faithful_state) {
      r.report["faithful_state"] = to_json(*rep.faithful_state);
      record_check(r, "faithful_state", verify::faithful_state(p, *rep.faithful_state));
    } else {
      r.report["faithful_state"] = nullptr;
    }
    if (rep.coboundary.holds) {
      r.report["coboundary"] = {{"verdict", "HOLDS"}};
      record_check(r, "coboundary", verify::coboundary_holds(p, rep.coboundary));
    } else {
      r.report["coboundary"] = {{"verdict", "FAILS"},
                                {"z", to_json(rep.coboundary.z)},
                                {"y", to_json(rep.coboundary.y)}};
      record_check(r, "coboundary", verify::coboundary_failure(p, rep.coboundary));
    }

    json gens = json::array();
    for (auto const& g : rep.generators) {
      auto const delta = MonoidElement::unit(p.dim(), g.vertex);
      json       j     = {{"vertex", labels[g.vertex]},
                          {"properly_infinite", order_json(g.properly_infinite)}};
      check_outcome(r, p, g.properly_infinite, delta.scaled(2), delta, true,
                    "properly_infinite:" + labels[g.vertex]);
      if (g.state) {
        j["state"] = to_json(*g.state);
        record_check(r, "state:" + labels[g.vertex], verify::state(p, *g.state));
      } else {
        j["state"] = "NO_STATE";
      }
      if (g.tarski_paradox) {
        j["tarski_n"]       = *g.tarski_n;
        j["tarski_paradox"] = order_json(*g.tarski_paradox);
        check_outcome(r, p, *g.tarski_paradox, delta.scaled(*g.tarski_n + 1),
                      delta.scaled(*g.tarski_n), true, "tarski:" + labels[g.vertex]);
      }
      gens.push_back(std::move(j));
    }
    r.report["generators"] = gens;

    if (rep.unperforation) {
      static char const* const names[] = {"COUNTEREXAMPLE", "NO_COUNTEREXAMPLE_WITHIN_BOUNDS",
                                          "BOUNDS_NOT_EXHAUSTED"};
      r.report["unperforation"]
          = {{"verdict", names[static_cast<int>(rep.unperforation->status)]},
             {"candidates_examined", rep.unperforation->candidates_examined},
             {"undecided", rep.unperforation->undecided}};
    }
    if (rep.verdict == Classification::inconclusive && r.exit_code == exit_definite) {
      r.exit_code = exit_unknown;
    }
    return r;
  }

  CommandResult run_oracle_compare(ModelFile const& m, CommandOptions const& o) {
    auto const&       action = require_action(m);
    auto const        p      = transformation_presentation(action);
    ActionGroupoid    g(action);
    auto const        orb = orbits(action);
    std::mt19937_64   rng(o.seed);
    std::size_t const n = action.num_points();

    auto draw = [&] {
      IntVector v(n);
      for (auto& x : v) {
        x = static_cast<unsigned long>(rng() % 4);
      }
      return MonoidElement(std::move(v));
    };

    std::size_t agree = 0, disagree = 0, unknown = 0, witness_failures = 0;
    json        mismatches = json::array();
    for (unsigned s = 0; s < o.samples; ++s) {
      auto f = draw();
      auto h = draw();
      bool oracle = oracle_equiv(orb, f, h);
      auto brute  = bruteforce_equiv(g, f, h);
      auto engine = decide_equiv(p, f, h, o.budget);
      if (brute.status == BruteforceResult::Status::equiv
          && !verify_witness(g, brute.witness, f, h)) {
        ++witness_failures;
      }
      if (engine.verdict == Verdict::unknown) {
        ++unknown;
        continue;
      }
      bool b = brute.status == BruteforceResult::Status::equiv;
      bool e = engine.verdict == Verdict::equiv;
      if (b == oracle && e == oracle) {
        ++agree;
      } else {
        ++disagree;
        mismatches.push_back({{"f", to_json(f)}, {"g", to_json(h)}, {"oracle", oracle},
                              {"bruteforce", b}, {"engine", e}});
      }
    }

    CommandResult r;
    r.report                       = model_header(m, "oracle-compare", o);
    r.report["options"]["seed"]    = o.seed;
    r.report["options"]["samples"] = o.samples;
    r.report["agree"]              = agree;
    r.report["disagree"]           = disagree;
    r.report["engine_unknown"]     = unknown;
    r.report["witness_failures"]   = witness_failures;
    r.report["mismatches"]         = mismatches;
    r.report["verdict"] = disagree == 0 && witness_failures == 0 ? "AGREE" : "DISAGREE";
    r.exit_code = disagree != 0 || witness_failures != 0 ? exit_internal
                  : unknown != 0                         ? exit_unknown
                                                         : exit_definite;
    return r;
  }

  CommandResult run_stabilize_test(ModelFile const& m, std::size_t n, CommandOptions const& o) {
    auto const& action = require_action(m);
    if (n == 0) {
      throw Error(ErrorCode::invalid_input, "--n must be at least 1");
    }
    auto const check = stabilization_check(action, n);
    auto const big   = stabilize(action, n);

    CommandResult r;
    r.report                        = model_header(m, "stabilize-test", o);
    r.report["n"]                   = n;
    r.report["orbits"]              = orbits(action).blocks.size();
    r.report["stabilized_orbits"]   = orbits(big).blocks.size();
    r.report["orbit_counts_match"]  = check.orbit_counts_match;
    r.report["embedding_bijective"] = check.embedding_bijective;
    r.report["pairs_checked"]       = check.pairs_checked;
    r.report["pairs_disagreeing"]   = check.pairs_disagreeing;
    r.report["verdict"]             = check.ok() ? "INVARIANT" : "MISMATCH";
    r.exit_code                     = check.ok() ? exit_definite : exit_internal;
    return r;
  }

}  // namespace typesemi
