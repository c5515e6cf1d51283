// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "support.hpp"
#include "typesemi/classifier.hpp"
#include "typesemi/commands.hpp"
#include "typesemi/groupoid.hpp"
#include "typesemi/tarski.hpp"
#include "typesemi/verify.hpp"

using namespace typesemi;
using typesemi::testing::load;
using typesemi::testing::random_kgraph;
using typesemi::testing::relabel;

namespace {

  using Clock = std::chrono::steady_clock;

  double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
  }

  bool all_ok = true;

  void report(int id, char const* name, bool ok, std::string const& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": " << detail << "\n"
              << std::flush;
    all_ok = all_ok && ok;
  }

  // Every certificate produced anywhere in the run goes through here.
  struct Ledger {
    std::size_t checked = 0;
    std::size_t failed  = 0;

    void note(std::string const& failure) {
      ++checked;
      if (!failure.empty()) {
        ++failed;
        std::cout << "  certificate failure: " << failure << "\n";
      }
    }
  } ledger;

  void check_outcome(MonoidPresentation const& p, DecisionOutcome const& d,
                     MonoidElement const& f, MonoidElement const& g, bool order_sense) {
    if (d.verdict == Verdict::equiv) {
      ledger.note(order_sense ? verify::order(p, d, f, g) : verify::equivalence(p, d, f, g));
    } else if (d.verdict == Verdict::not_equiv) {
      ledger.note(verify::refutation(p, d, f, g, order_sense));
    }
  }

  std::vector<std::string> point_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) {
      out.push_back(std::to_string(i));
    }
    return out;
  }

  // Every action on at most four points generated by at most two
  // permutations (ordered generator lists, identity allowed).
  std::vector<FiniteGroupAction> small_actions() {
    std::vector<FiniteGroupAction> out;
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<Permutation> perms;
      Permutation              p(n);
      std::iota(p.begin(), p.end(), 0);
      do {
        perms.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      out.emplace_back(point_names(n), std::vector<Permutation>{});
      for (auto const& a : perms) {
        out.emplace_back(point_names(n), std::vector<Permutation>{a});
      }
      for (auto const& a : perms) {
        for (auto const& b : perms) {
          out.emplace_back(point_names(n), std::vector<Permutation>{a, b});
        }
      }
    }
    return out;
  }

  std::vector<MonoidElement> all_vectors(std::size_t dim, long bound) {
    std::vector<MonoidElement> out;
    IntVector                  v(dim, 0);
    while (true) {
      out.emplace_back(v);
      std::size_t i = 0;
      while (i < dim && v[i] == bound) {
        v[i++] = 0;
      }
      if (i == dim) {
        return out;
      }
      v[i] += 1;
    }
  }

  void criterion_oracle(std::vector<FiniteGroupAction> const& actions) {
    auto        t0 = Clock::now();
    std::size_t pairs = 0, disagreements = 0, unknown = 0;
    for (auto const& a : actions) {
      auto           p   = transformation_presentation(a);
      auto           orb = orbits(a);
      ActionGroupoid g(a);
      auto           vs = all_vectors(a.num_points(), 2);
      for (auto const& f : vs) {
        for (auto const& h : vs) {
          ++pairs;
          bool oracle = oracle_equiv(orb, f, h);
          auto brute  = bruteforce_equiv(g, f, h);
          auto engine = decide_equiv(p, f, h);
          bool b      = brute.status == BruteforceResult::Status::equiv;
          if (b && !verify_witness(g, brute.witness, f, h)) {
            ++disagreements;
          }
          if (engine.verdict == Verdict::unknown) {
            ++unknown;
            continue;
          }
          check_outcome(p, engine, f, h, false);
          if (b != oracle || (engine.verdict == Verdict::equiv) != oracle
              || brute.status == BruteforceResult::Status::too_large) {
            ++disagreements;
          }
        }
      }
    }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << disagreements << " disagreements, " << unknown << " unknown over " << pairs
      << " pairs on " << actions.size() << " actions; " << secs << " s (limit 60 s)";
    report(1, "oracle equivalence", disagreements == 0 && unknown == 0 && secs < 60, d.str());
  }

  void criterion_corpus() {
    std::vector<std::string> failures;
    double                   slowest = 0;
    auto timed = [&](char const* name, std::function<bool(ModelFile const&, ClassificationReport const&)> ok) {
      auto m  = load(name);
      auto t0 = Clock::now();
      auto r  = classify(*m.kgraph);
      double s = seconds_since(t0);
      slowest  = std::max(slowest, s);
      auto p   = m.presentation();
      for (auto const& g : r.generators) {
        auto delta = MonoidElement::unit(p.dim(), g.vertex);
        check_outcome(p, g.properly_infinite, delta.scaled(2), delta, true);
        if (g.state) {
          ledger.note(verify::state(p, *g.state));
        }
      }
      if (!ok(m, r) || s >= 1.0) {
        failures.push_back(name);
      }
    };
    timed("two_loops.json", [](auto const& m, auto const& r) {
      auto const& pi = r.generators[0].properly_infinite;
      return r.verdict == Classification::purely_infinite && pi.verdict == Verdict::equiv
             && verify::order(m.presentation(), pi, {2}, {1}).empty();
    });
    timed("one_loop.json", [](auto const&, auto const& r) {
      return r.verdict == Classification::hypotheses_not_met
             && r.structure.condition_L == Tristate::no && r.faithful_state
             && *r.faithful_state == RationalVector{1};
    });
    timed("swap_2.json", [](auto const&, auto const& r) {
      return r.verdict == Classification::purely_infinite;
    });
    timed("upper_triangular.json", [](auto const& m, auto const& r) {
      auto p = m.presentation();
      return !r.faithful_state && !r.coboundary.holds
             && verify::coboundary_failure(p, r.coboundary).empty()
             && solve_state_at(p, {1, 0})->vector.finite_values == RationalVector{1, 0};
    });
    timed("two_graph_2_3.json", [](auto const& m, auto const& r) {
      auto const& pi = r.generators[0].properly_infinite;
      return pi.verdict == Verdict::equiv
             && verify::order(m.presentation(), pi, {2}, {1}).empty();
    });
    std::ostringstream d;
    d << (5 - failures.size()) << "/5 curated models as expected; slowest " << slowest
      << " s (limit 1 s)";
    for (auto const& f : failures) {
      d << "; mismatch: " << f;
    }
    report(2, "curated corpus classification", failures.empty(), d.str());
  }

  std::vector<KGraphModel> ensemble() {
    std::mt19937_64          rng(20260101);
    std::vector<KGraphModel> out;
    for (int i = 0; i < 60; ++i) {
      out.push_back(random_kgraph(rng, 6, 3));
    }
    return out;
  }

  void criterion_stiemke(std::vector<KGraphModel> const& models) {
    auto        t0         = Clock::now();
    std::size_t mismatches = 0, holds = 0;
    for (auto const& m : models) {
      auto p   = presentation_from_kgraph(m);
      auto cob = coboundary_check(p);
      auto st  = stiemke_crosscheck(p);
      auto fs  = faithful_finite_state(p);
      if (!st.consistent || cob.holds != st.positive_invariant.has_value()
          || cob.holds != fs.has_value()) {
        ++mismatches;
      }
      ledger.note(cob.holds ? verify::coboundary_holds(p, cob)
                            : verify::coboundary_failure(p, cob));
      if (fs) {
        ledger.note(verify::faithful_state(p, *fs));
      }
      holds += cob.holds;
    }
    double             secs = seconds_since(t0);
    std::ostringstream d;
    d << mismatches << " mismatches over " << models.size() << " models (" << holds
      << " HOLDS, " << models.size() - holds << " FAILS); " << secs << " s (limit 120 s)";
    report(3, "Stiemke duality", mismatches == 0 && models.size() >= 50 && secs < 120, d.str());
  }

  void criterion_tarski(std::vector<KGraphModel> const& models) {
    std::size_t states = 0, violations = 0, no_state_models = 0, no_state_found = 0;
    for (auto const& m : models) {
      auto p = presentation_from_kgraph(m);
      for (std::size_t v = 0; v < p.dim(); ++v) {
        auto delta = MonoidElement::unit(p.dim(), v);
        auto s     = solve_state_at(p, delta);
        if (!s) {
          continue;
        }
        ++states;
        ledger.note(verify::state(p, *s));
        for (unsigned n = 1; n <= 4; ++n) {
          auto d = kl_paradoxical(p, delta, n + 1, n);
          check_outcome(p, d, delta.scaled(n + 1), delta.scaled(n), true);
          if (d.verdict == Verdict::equiv) {
            ++violations;
          }
        }
      }
    }
    for (char const* name : {"two_loops.json", "swap_2.json", "two_graph_2_3.json"}) {
      auto m = load(name);
      auto p = m.presentation();
      for (std::size_t v = 0; v < p.dim(); ++v) {
        auto delta = MonoidElement::unit(p.dim(), v);
        if (solve_state_at(p, delta)) {
          continue;
        }
        ++no_state_models;
        for (unsigned n = 1; n <= 4; ++n) {
          auto d = kl_paradoxical(p, delta, n + 1, n);
          if (d.verdict == Verdict::equiv) {
            auto failure = verify::order(p, d, delta.scaled(n + 1), delta.scaled(n));
            ledger.note(failure);
            no_state_found += failure.empty();
            break;
          }
        }
      }
    }
    std::ostringstream d;
    d << states << " certified states, " << violations << " paradoxes alongside a state; "
      << no_state_found << "/" << no_state_models
      << " NO_STATE generators with a replayed (n+1,n) certificate, n <= 4";
    report(4, "Tarski consistency",
           violations == 0 && no_state_models > 0 && no_state_found == no_state_models, d.str());
  }

  void criterion_stabilization(std::vector<FiniteGroupAction> const& actions) {
    auto        t0 = Clock::now();
    std::size_t checks = 0, failures = 0, brute_pairs = 0;
    for (auto const& a : actions) {
      auto orb = orbits(a);
      for (std::size_t n = 1; n <= 4; ++n) {
        ++checks;
        if (!stabilization_check(a, n).ok()) {
          ++failures;
          continue;
        }
        // Explicit bisections in G x R_n against the orbit sums of G.
        if (a.num_points() * n > 8) {
          continue;
        }
        auto big = stabilize(a, n);
        auto vs  = all_vectors(a.num_points(), 1);
        for (auto const& f : vs) {
          for (auto const& h : vs) {
            IntVector ef(big.num_units(), 0), eh(big.num_units(), 0);
            for (std::size_t x = 0; x < a.num_points(); ++x) {
              ef[big.unit(x, n - 1)] = f[x];
              eh[big.unit(x, 0)]     = h[x];
            }
            auto r = bruteforce_equiv(big, MonoidElement(ef), MonoidElement(eh));
            ++brute_pairs;
            if ((r.status == BruteforceResult::Status::equiv) != oracle_equiv(orb, f, h)) {
              ++failures;
            }
          }
        }
      }
    }
    std::ostringstream d;
    d << failures << " failures over " << checks << " (action, n <= 4) fingerprint checks and "
      << brute_pairs << " explicit bisection pairs; " << seconds_since(t0) << " s";
    report(5, "stabilization invariance", failures == 0, d.str());
  }

  void criterion_relabeling() {
    std::mt19937_64 rng(606);
    ClassifyBudgets budgets;
    budgets.unperforation.max_coefficient = 2;
    budgets.unperforation.max_multiplier  = 3;
    std::size_t decisions = 0, mismatches = 0;
    for (int trial = 0; trial < 20; ++trial) {
      KGraphModel m = random_kgraph(rng, 5, 2);
      while (m.k() != 1) {
        m = random_kgraph(rng, 5, 2);
      }
      std::size_t const        n = m.num_vertices();
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      auto mp = relabel(m, perm);
      auto p  = presentation_from_kgraph(m);
      auto q  = presentation_from_kgraph(mp);
      auto move = [&](MonoidElement const& x) {
        IntVector y(n);
        for (std::size_t v = 0; v < n; ++v) {
          y[perm[v]] = x[v];
        }
        return MonoidElement(y);
      };

      auto a = classify(m, budgets);
      auto b = classify(mp, budgets);
      ++decisions;
      mismatches += a.verdict != b.verdict;
      for (int query = 0; query < 5; ++query) {
        IntVector fv(n), gv(n);
        for (std::size_t v = 0; v < n; ++v) {
          fv[v] = static_cast<long>(rng() % 3);
          gv[v] = static_cast<long>(rng() % 3);
        }
        MonoidElement f(fv), g(gv);
        auto          e1 = decide_equiv(p, f, g);
        auto          e2 = decide_equiv(q, move(f), move(g));
        auto          l1 = decide_leq(p, f, g);
        auto          l2 = decide_leq(q, move(f), move(g));
        check_outcome(p, e1, f, g, false);
        check_outcome(q, e2, move(f), move(g), false);
        check_outcome(p, l1, f, g, true);
        check_outcome(q, l2, move(f), move(g), true);
        decisions += 2;
        // UNKNOWN on one side only is a budget artefact, not a contradiction.
        auto clash = [](Verdict x, Verdict y) {
          return x != y && x != Verdict::unknown && y != Verdict::unknown;
        };
        mismatches += clash(e1.verdict, e2.verdict);
        mismatches += clash(l1.verdict, l2.verdict);
      }
    }
    std::ostringstream d;
    d << mismatches << " non-equivariant outcomes over " << decisions
      << " decisions on 20 relabeled graphs";
    report(6, "relabeling invariance", mismatches == 0, d.str());
  }

  void criterion_theta() {
    std::mt19937_64 rng(7070);
    std::size_t     failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
      KGraphModel m = random_kgraph(rng, 5, 3);
      while (m.k() != 1) {
        m = random_kgraph(rng, 5, 3);
      }
      std::size_t n = m.num_vertices();
      IntVector   fv(n), hv(n);
      for (std::size_t v = 0; v < n; ++v) {
        fv[v] = static_cast<long>(rng() % 5);
        hv[v] = static_cast<long>(rng() % 5);
      }
      MonoidElement f(fv), h(hv);
      unsigned      a = rng() % 4, b = rng() % 4;
      bool ok = theta(m, {a + b}, f) == theta(m, {a}, theta(m, {b}, f))
                && theta(m, {a}, f + h) == theta(m, {a}, f) + theta(m, {a}, h)
                && theta(m, {a}, f.scaled(2)) == theta(m, {a}, f).scaled(2)
                && theta(m, {0}, f) == f;
      failures += !ok;
    }
    std::ostringstream d;
    d << failures << " failures over 100 (graph, f, m, n <= 3) triples";
    report(7, "Theta algebra", failures == 0, d.str());
  }

  void criterion_replay() {
    // Certificates from the command layer are checked there as well; run
    // the curated corpus through it and collect its checks.
    CommandOptions o;
    std::size_t    command_checks = 0, command_failures = 0;
    for (char const* name : {"two_loops.json", "one_loop.json", "swap_2.json",
                             "upper_triangular.json", "two_graph_2_3.json"}) {
      auto r = run_classify(load(name), o);
      for (auto const& [k, v] : r.report["checks"].items()) {
        ++command_checks;
        command_failures += v != "ok";
      }
    }
    std::ostringstream d;
    d << ledger.checked - ledger.failed << "/" << ledger.checked
      << " certificates verified by independent replay or substitution; " << command_checks
      << " command-layer checks, " << command_failures << " failed";
    report(8, "certificate replay",
           ledger.failed == 0 && ledger.checked > 0 && command_failures == 0, d.str());
  }

  struct Run {
    int         exit_code;
    std::string out;
  };

  Run cli(std::string const& args) {
    std::string cmd  = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
    FILE*       pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
      return {-1, ""};
    }
    std::string out;
    char        buf[4096];
    while (auto n = fread(buf, 1, sizeof buf, pipe)) {
      out.append(buf, n);
    }
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
  }

  void criterion_cli() {
    auto data = [](char const* name) { return std::string(TEST_DATA_DIR) + "/" + name; };
    std::vector<std::pair<std::string, int>> runs{
        {"classify " + data("two_loops.json"), 0},
        {"classify " + data("one_loop.json"), 0},
        {"classify " + data("two_graph_2_3.json"), 3},
        {"equiv " + data("two_loops.json") + " --lhs 1 --rhs 2", 0},
        {"equiv " + data("two_loops.json") + " --lhs 1 --rhs 9 --budget-states 4", 3},
        {"state " + data("one_loop.json") + " --target 1", 0},
        {"coboundary " + data("upper_triangular.json"), 0},
        {"oracle-compare " + data("s3_on_3.json") + " --samples 50 --seed 17", 0},
        {"stabilize-test " + data("transposition.json") + " --n 4", 0}};
    std::size_t nondeterministic = 0, wrong_exit = 0;
    for (auto const& [args, code] : runs) {
      auto a = cli(args);
      auto b = cli(args);
      nondeterministic += a.out != b.out || a.out.empty();
      wrong_exit += a.exit_code != code;
    }
    std::size_t malformed = 0, malformed_ok = 0;
    for (char const* name :
         {"bad/row_zero.json", "bad/bad_reference.json", "bad/truncated.json",
          "bad/unknown_kind.json", "bad/noncommuting.json", "bad/not_bijection.json",
          "bad/duplicate_vertex.json", "bad/not_object.json"}) {
      ++malformed;
      auto r = cli("classify " + data(name));
      malformed_ok += r.exit_code == 2 && r.out.find("\"error\"") != std::string::npos;
    }
    std::ostringstream d;
    d << nondeterministic << "/" << runs.size() << " commands with differing output, "
      << wrong_exit << " wrong exit codes; " << malformed_ok << "/" << malformed
      << " malformed inputs rejected with exit 2";
    report(9, "CLI determinism and exit codes",
           nondeterministic == 0 && wrong_exit == 0 && malformed_ok == malformed, d.str());
  }

}  // namespace

int main() {
  auto actions = small_actions();
  auto models  = ensemble();
  criterion_oracle(actions);
  criterion_corpus();
  criterion_stiemke(models);
  criterion_tarski(models);
  criterion_stabilization(actions);
  criterion_relabeling();
  criterion_theta();
  criterion_replay();
  criterion_cli();
  return all_ok ? 0 : 1;
}
