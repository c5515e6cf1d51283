#include <doctest.h>

#include <random>

#include "typesemi/error.hpp"
#include "typesemi/monoid.hpp"
#include "typesemi/verify.hpp"

using namespace typesemi;

namespace {

  MonoidPresentation two_loops() {
    return build_presentation(1, {{{1}, {2}}});
  }

  MonoidPresentation one_loop() {
    return build_presentation(1, {{{1}, {1}}});
  }

  MonoidPresentation free_n(std::size_t d = 1) {
    return build_presentation(d, {});
  }

  MonoidPresentation random_presentation(std::mt19937_64& rng, std::size_t dim, std::size_t moves) {
    std::vector<Move> out;
    for (std::size_t j = 0; j < moves; ++j) {
      IntVector lhs(dim), rhs(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        lhs[i] = static_cast<long>(rng() % 3);
        rhs[i] = static_cast<long>(rng() % 3);
      }
      lhs[rng() % dim] += 1;
      out.push_back({MonoidElement(lhs), MonoidElement(rhs)});
    }
    return build_presentation(dim, std::move(out));
  }

  MonoidElement random_element(std::mt19937_64& rng, std::size_t dim, long bound) {
    IntVector v(dim);
    for (auto& x : v) {
      x = static_cast<long>(rng() % (bound + 1));
    }
    return MonoidElement(v);
  }

}  // namespace

TEST_CASE("build_presentation") {
  auto p = two_loops();
  CHECK(p.dim() == 1);
  CHECK(p.moves().size() == 1);
  CHECK(free_n().moves().empty());
  CHECK_THROWS_AS(build_presentation(2, {{{1, 0}, {0, 1, 0}}}), Error);
  try {
    build_presentation(2, {{{1, 0}, {0, 1, 0}}});
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::dimension_mismatch);
  }
}

TEST_CASE("MonoidElement arithmetic") {
  MonoidElement a{1, 2, 0}, b{0, 1, 3};
  CHECK(a + b == MonoidElement{1, 3, 3});
  CHECK((a + b) - b == a);
  CHECK(a.scaled(3) == MonoidElement{3, 6, 0});
  CHECK(MonoidElement{0, 1, 0}.pointwise_leq(a));
  CHECK_FALSE(a.pointwise_leq(b));
  CHECK_THROWS_AS(MonoidElement(IntVector{1, -1}), Error);
  CHECK_THROWS_AS(b - a, Error);
  CHECK(a.to_string() == "(1,2,0)");
}

TEST_CASE("replay") {
  auto p = two_loops();
  EquivCertificate one{{1}, {{0, Direction::forward}}, {2}};
  CHECK(replay(p, {1}, one) == MonoidElement{2});
  CHECK(replay(p, {1}, EquivCertificate{{1}, {}, {1}}) == MonoidElement{1});
  try {
    replay(p, {0}, EquivCertificate{{0}, {{0, Direction::forward}}, {1}});
    FAIL("expected StepNotApplicable");
  } catch (StepNotApplicable const& e) {
    CHECK(e.code() == ErrorCode::step_not_applicable);
    CHECK(e.index() == 0);
  }
  CHECK(replay(p, {2}, EquivCertificate{{2}, {{0, Direction::backward}}, {1}})
        == MonoidElement{1});
}

TEST_CASE("decide_equiv examples") {
  auto d = decide_equiv(two_loops(), {1}, {2});
  REQUIRE(d.verdict == Verdict::equiv);
  REQUIRE(d.certificate);
  CHECK(d.certificate->steps.size() == 1);
  CHECK(replay(two_loops(), {1}, *d.certificate) == MonoidElement{2});

  std::mt19937_64 rng(1);
  auto            r = decide_equiv(random_presentation(rng, 3, 2), {1, 0, 2}, {1, 0, 2});
  CHECK(r.verdict == Verdict::equiv);
  CHECK(r.certificate->steps.empty());

  auto n = decide_equiv(free_n(), {1}, {2});
  REQUIRE(n.verdict == Verdict::not_equiv);
  REQUIRE(n.separator);
  CHECK(n.separator->kind == LinearSeparator::Kind::rational);
  CHECK(n.separator->coeffs == RationalVector{1});
}

TEST_CASE("decide_equiv needs a modular separator") {
  // 2x <-> 0 identifies parity only: x and 0 differ mod 2 but no rational
  // functional separates them.
  auto p = build_presentation(1, {{{2}, {0}}});
  auto d = decide_equiv(p, {1}, {0});
  REQUIRE(d.verdict == Verdict::not_equiv);
  CHECK(d.separator->kind == LinearSeparator::Kind::modular);
  CHECK(d.separator->modulus == 2);
  CHECK(verify::separator(p, *d.separator, {1}, {0}, false).empty());
  CHECK(decide_equiv(p, {3}, {1}).verdict == Verdict::equiv);
}

TEST_CASE("decide_equiv with an extended separator") {
  // x + y <-> y: x is absorbed whenever y is present, so (1,1) ~ (0,1) but
  // (1,0) is alone in its class.
  auto p = build_presentation(2, {{{1, 1}, {0, 1}}});
  CHECK(decide_equiv(p, {1, 1}, {0, 1}).verdict == Verdict::equiv);
  auto d = decide_equiv(p, {1, 0}, {0, 1});
  REQUIRE(d.verdict == Verdict::not_equiv);
  CHECK(verify::separator(p, *d.separator, {1, 0}, {0, 1}, false).empty());
}

TEST_CASE("decide_leq examples") {
  auto pw = decide_leq(free_n(2), {1, 0}, {2, 1});
  REQUIRE(pw.verdict == Verdict::equiv);
  CHECK(pw.certificate->steps.empty());
  CHECK(*pw.remainder == MonoidElement{1, 1});

  auto tl = decide_leq(two_loops(), {2}, {1});
  REQUIRE(tl.verdict == Verdict::equiv);
  CHECK(verify::order(two_loops(), tl, {2}, {1}).empty());

  auto fr = decide_leq(free_n(), {2}, {1});
  REQUIRE(fr.verdict == Verdict::not_equiv);
  CHECK(fr.separator->coeffs == RationalVector{1});
  CHECK(verify::separator(free_n(), *fr.separator, {2}, {1}, true).empty());
}

TEST_CASE("kl_paradoxical examples") {
  auto d = kl_paradoxical(two_loops(), {1}, 2, 1);
  REQUIRE(d.verdict == Verdict::equiv);
  CHECK(verify::order(two_loops(), d, {2}, {1}).empty());

  CHECK(kl_paradoxical(two_loops(), {0}, 3, 1).verdict == Verdict::equiv);
  CHECK(kl_paradoxical(one_loop(), {0}, 5, 2).verdict == Verdict::equiv);

  auto n = kl_paradoxical(one_loop(), {1}, 2, 1);
  REQUIRE(n.verdict == Verdict::not_equiv);
  CHECK(n.separator->coeffs == RationalVector{1});

  CHECK_THROWS_AS(kl_paradoxical(one_loop(), {1}, 1, 1), Error);
  CHECK_THROWS_AS(kl_paradoxical(one_loop(), {1}, 2, 0), Error);
}

TEST_CASE("combine_properly_infinite") {
  // Two disjoint copies of the two-loop graph.
  auto p  = build_presentation(2, {{{1, 0}, {2, 0}}, {{0, 1}, {0, 2}}});
  auto ca = kl_paradoxical(p, {1, 0}, 2, 1);
  auto cb = kl_paradoxical(p, {0, 1}, 2, 1);
  auto c  = combine_properly_infinite(p, {1, 0}, ca, {0, 1}, cb);
  REQUIRE(c.verdict == Verdict::equiv);
  CHECK(verify::order(p, c, {2, 2}, {1, 1}).empty());
}

TEST_CASE("find_separator examples") {
  auto s = find_separator(free_n(), {1}, {2});
  REQUIRE(s);
  CHECK(s->kind == LinearSeparator::Kind::rational);
  CHECK(s->coeffs == RationalVector{1});

  CHECK_FALSE(find_separator(two_loops(), {1}, {2}));
  CHECK_FALSE(find_separator(build_presentation(2, {{{1, 0}, {0, 1}}}), {1, 0}, {0, 1}));
}

TEST_CASE("admissible_closure") {
  auto p = build_presentation(3, {{{1, 0, 0}, {0, 1, 0}}, {{0, 0, 1}, {0, 0, 2}}});
  CHECK(admissible_closure(p, {true, false, false}) == std::vector<bool>{true, true, false});
  CHECK(admissible_closure(p, {false, false, true}) == std::vector<bool>{false, false, true});
}

TEST_CASE("almost_unperforated_up_to examples") {
  auto a = almost_unperforated_up_to(free_n(), {{1}});
  CHECK(a.status == UnperforationResult::Status::clear_within_bounds);

  auto b = almost_unperforated_up_to(two_loops(), {{1}});
  CHECK(b.status == UnperforationResult::Status::clear_within_bounds);

  UnperforationBounds three;
  three.max_coefficient = 3;
  three.max_multiplier  = 3;
  auto c = almost_unperforated_up_to(free_n(2), {{1, 0}, {0, 1}}, three);
  CHECK(c.status == UnperforationResult::Status::clear_within_bounds);
  CHECK(c.candidates_examined > 0);
}

TEST_CASE("perforated numerical semigroup") {
  // <2,3> inside N with x = 2, y = 3: 3x = 2y, while x <= y would need 1.
  auto p = build_presentation(2, {{{3, 0}, {0, 2}}});
  CHECK(decide_equiv(p, {3, 0}, {0, 2}).verdict == Verdict::equiv);

  auto l = decide_leq(p, {1, 0}, {0, 1});
  REQUIRE(l.verdict == Verdict::not_equiv);
  CHECK(l.report.component_exhausted);
  CHECK_FALSE(l.separator);
  CHECK(verify::refutation(p, l, {1, 0}, {0, 1}, true).empty());
  // The same claim for a pair that is ordered must be rejected.
  CHECK_FALSE(verify::refutation(p, l, {1, 0}, {0, 2}, true).empty());

  auto r = almost_unperforated_up_to(p, {{1, 0}, {0, 1}});
  REQUIRE(r.status == UnperforationResult::Status::counterexample);
  auto const& c = *r.counterexample;
  CHECK(c.n > c.m);
  CHECK(verify::order(p, c.leq, c.theta.scaled(c.n), c.eta.scaled(c.m)).empty());
  DecisionOutcome refuted;
  refuted.verdict                    = Verdict::not_equiv;
  refuted.separator                  = c.not_leq;
  refuted.report.component_exhausted = !c.not_leq;
  CHECK(verify::refutation(p, refuted, c.theta, c.eta, true).empty());
}

TEST_CASE("property: certificates from random presentations replay") {
  std::mt19937_64 rng(20240611);
  SearchBudget    budget;
  budget.max_states = 20000;
  int definite      = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t dim = 1 + rng() % 3;
    auto        p   = random_presentation(rng, dim, 1 + rng() % 3);
    auto        f   = random_element(rng, dim, 3);
    auto        g   = random_element(rng, dim, 3);

    auto d = decide_equiv(p, f, g, budget);
    if (d.verdict == Verdict::equiv) {
      CHECK(verify::equivalence(p, d, f, g).empty());
    } else if (d.verdict == Verdict::not_equiv) {
      CHECK(verify::refutation(p, d, f, g, false).empty());
    }
    auto back = decide_equiv(p, g, f, budget);
    if (d.verdict != Verdict::unknown && back.verdict != Verdict::unknown) {
      CHECK(d.verdict == back.verdict);
      ++definite;
    }

    auto l = decide_leq(p, f, g, budget);
    if (l.verdict == Verdict::equiv) {
      CHECK(verify::order(p, l, f, g).empty());
    } else if (l.verdict == Verdict::not_equiv) {
      CHECK(verify::refutation(p, l, f, g, true).empty());
    }
    if (d.verdict == Verdict::equiv) {
      CHECK(l.verdict != Verdict::not_equiv);
    }
    CHECK(decide_leq(p, f, f + g, budget).verdict == Verdict::equiv);
  }
  CHECK(definite > 100);
}
