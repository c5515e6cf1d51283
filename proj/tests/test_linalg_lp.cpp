#include <doctest.h>

#include <random>

#include "typesemi/linalg.hpp"
#include "typesemi/lp.hpp"

using namespace typesemi;

namespace {

  // Determinant by fraction-based elimination.
  Rational det(IntMatrix const& m) {
    std::size_t    n = m.size();
    RationalMatrix a(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] = Rational(m[i][j]);
      }
    }
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && a[piv][c] == 0) {
        ++piv;
      }
      if (piv == n) {
        return 0;
      }
      if (piv != c) {
        std::swap(a[piv], a[c]);
        d = -d;
      }
      d *= a[c][c];
      for (std::size_t r = c + 1; r < n; ++r) {
        Rational f = a[r][c] / a[c][c];
        for (std::size_t j = c; j < n; ++j) {
          a[r][j] -= f * a[c][j];
        }
      }
    }
    return d;
  }

  // Two-variable LP solved by enumerating every intersection of two
  // constraint boundaries (including the axes).
  std::optional<Rational> brute_max(lp::Problem const& p) {
    std::vector<std::pair<RationalVector, Rational>> lines;
    for (auto const& c : p.constraints) {
      lines.push_back({c.coeffs, c.rhs});
    }
    lines.push_back({{1, 0}, 0});
    lines.push_back({{0, 1}, 0});
    std::optional<Rational> best;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        auto const& [a, b] = lines[i];
        auto const& [c, d] = lines[j];
        Rational det2      = a[0] * c[1] - a[1] * c[0];
        if (det2 == 0) {
          continue;
        }
        RationalVector x{(b * c[1] - a[1] * d) / det2, (a[0] * d - b * c[0]) / det2};
        if (!lp::satisfies(p, x)) {
          continue;
        }
        Rational v = p.objective[0] * x[0] + p.objective[1] * x[1];
        if (!best || v > *best) {
          best = v;
        }
      }
    }
    return best;
  }

}  // namespace

TEST_CASE("kernel_basis") {
  RationalMatrix a{{1, 2, 3}, {2, 4, 6}};
  auto           k = linalg::kernel_basis(a, 3);
  REQUIRE(k.size() == 2);
  for (auto const& v : k) {
    for (auto const& row : a) {
      CHECK(row[0] * v[0] + row[1] * v[1] + row[2] * v[2] == 0);
    }
  }
  CHECK(k[0][1] == 1);
  CHECK(k[1][2] == 1);
  CHECK(linalg::kernel_basis({}, 2).size() == 2);
  CHECK(linalg::kernel_basis({{1, 0}, {0, 1}}, 2).empty());
}

TEST_CASE("smith_normal_form examples") {
  auto s = linalg::smith_normal_form({{2, 4}, {6, 8}}, 2);
  CHECK(s.diag == IntVector{2, 4});
  auto t = linalg::smith_normal_form({{1, -2}}, 2);
  CHECK(t.diag == IntVector{1});
}

TEST_CASE("property: smith_normal_form") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix   a(r, IntVector(c));
    for (auto& row : a) {
      for (auto& x : row) {
        x = static_cast<long>(rng() % 9) - 4;
      }
    }
    auto s = linalg::smith_normal_form(a, c);
    auto d = linalg::multiply(linalg::multiply(s.left, a), s.right);
    REQUIRE(s.diag.size() == std::min(r, c));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        CHECK(d[i][j] == (i == j ? s.diag[i] : Integer(0)));
      }
    }
    CHECK(abs(det(s.left)) == 1);
    CHECK(abs(det(s.right)) == 1);
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
      CHECK(s.diag[i] >= 0);
      if (s.diag[i + 1] != 0) {
        CHECK(s.diag[i] != 0);
        CHECK(s.diag[i + 1] % s.diag[i] == 0);
      }
    }
  }
}

TEST_CASE("lp: small optimum") {
  lp::Problem p;
  p.num_vars = 2;
  p.add({1, 1}, lp::Sense::le, 4);
  p.add({1, 3}, lp::Sense::le, 6);
  p.objective = {3, 2};
  auto s      = lp::solve(p);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.value == 12);
  CHECK(lp::satisfies(p, s.x));
}

TEST_CASE("lp: infeasible with Farkas certificate") {
  lp::Problem p;
  p.num_vars = 2;
  p.add({1, 1}, lp::Sense::ge, 3);
  p.add({1, 1}, lp::Sense::le, 2);
  auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::infeasible);
  CHECK(lp::is_farkas_certificate(p, s.farkas));
  CHECK_FALSE(lp::is_farkas_certificate(p, RationalVector{0, 0}));
}

TEST_CASE("lp: unbounded and free variables") {
  lp::Problem p;
  p.num_vars = 1;
  p.add({1}, lp::Sense::ge, 1);
  p.objective = {1};
  CHECK(lp::solve(p).status == lp::Status::unbounded);

  lp::Problem q;
  q.num_vars = 2;
  q.free     = {true, false};
  q.add({1, 1}, lp::Sense::eq, -3);
  q.add({0, 1}, lp::Sense::le, 2);
  q.objective = {0, 1};
  auto s      = lp::solve(q);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.x[0] == -5);
  CHECK(s.x[1] == 2);
}

TEST_CASE("lp: degenerate and redundant rows") {
  lp::Problem p;
  p.num_vars = 3;
  p.add({1, 1, 1}, lp::Sense::eq, 1);
  p.add({2, 2, 2}, lp::Sense::eq, 2);
  p.add({1, -1, 0}, lp::Sense::eq, 0);
  p.objective = {0, 0, 1};
  auto s      = lp::solve(p);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.value == 1);
}

TEST_CASE("property: lp agrees with vertex enumeration") {
  std::mt19937_64 rng(99);
  int             optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    lp::Problem p;
    p.num_vars = 2;
    for (int i = 0; i < 3; ++i) {
      RationalVector c{static_cast<long>(rng() % 7) - 2, static_cast<long>(rng() % 7) - 2};
      auto           sense = static_cast<lp::Sense>(rng() % 3);
      p.add(c, sense, static_cast<long>(rng() % 9) - 2);
    }
    // Keep the region bounded so the optimum sits at a vertex.
    p.add({1, 0}, lp::Sense::le, 10);
    p.add({0, 1}, lp::Sense::le, 10);
    p.objective = {static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3};

    auto s     = lp::solve(p);
    auto brute = brute_max(p);
    if (brute) {
      REQUIRE(s.status == lp::Status::optimal);
      CHECK(lp::satisfies(p, s.x));
      CHECK(s.value == *brute);
      ++optimal;
    } else {
      REQUIRE(s.status == lp::Status::infeasible);
      CHECK(lp::is_farkas_certificate(p, s.farkas));
      ++infeasible;
    }
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 10);
}
