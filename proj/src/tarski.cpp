#include "typesemi/tarski.hpp"

#include <algorithm>

#include "typesemi/error.hpp"

namespace typesemi {

  namespace {

    bool inside(std::vector<bool> const& set, MonoidElement const& x) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0 && !set[i]) {
          return false;
        }
      }
      return true;
    }

    bool admissible(MonoidPresentation const& p, std::vector<bool> const& set) {
      for (auto const& mv : p.moves()) {
        if (inside(set, mv.lhs) != inside(set, mv.rhs)) {
          return false;
        }
      }
      return true;
    }

    RationalVector difference_row(Move const& mv) {
      RationalVector r(mv.lhs.size());
      for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = Rational(mv.lhs[i] - mv.rhs[i]);
      }
      return r;
    }

    // Invariance rows for the moves living inside `support`, plus c_v = 0
    // off the support.
    lp::Problem invariant_cone(MonoidPresentation const& p, std::vector<bool> const& support) {
      lp::Problem prob;
      prob.num_vars = p.dim();
      for (auto const& mv : p.moves()) {
        if (mv.is_identity() || !inside(support, mv.lhs)) {
          continue;
        }
        prob.add(difference_row(mv), lp::Sense::eq, 0);
      }
      for (std::size_t v = 0; v < p.dim(); ++v) {
        if (!support[v]) {
          RationalVector row(p.dim(), 0);
          row[v] = 1;
          prob.add(std::move(row), lp::Sense::eq, 0);
        }
      }
      return prob;
    }

    // Lexicographic successor of a k-combination of {0..n-1}.
    bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
      std::size_t const k = c.size();
      for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
          ++c[i];
          for (std::size_t j = i + 1; j < k; ++j) {
            c[j] = c[j - 1] + 1;
          }
          return true;
        }
      }
      return false;
    }

  }  // namespace

  std::optional<StateCertificate> solve_state_at(MonoidPresentation const& p,
                                                 MonoidElement const&      theta,
                                                 StateOptions const&       options) {
    p.check_element(theta);
    if (theta.is_zero()) {
      throw Error(ErrorCode::zero_target, "a state is normalized at a nonzero target");
    }
    // Every admissible support containing supp(theta) contains its closure.
    auto const core = admissible_closure(p, theta.support());
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < p.dim(); ++v) {
      if (!core[v]) {
        rest.push_back(v);
      }
    }

    std::size_t examined = 0;
    for (std::size_t extra = 0; extra <= rest.size(); ++extra) {
      std::vector<std::size_t> pick(extra);
      for (std::size_t i = 0; i < extra; ++i) {
        pick[i] = i;
      }
      do {
        std::vector<bool> support = core;
        for (auto i : pick) {
          support[rest[i]] = true;
        }
        if (!admissible(p, support)) {
          continue;
        }
        if (options.max_supports != 0 && examined++ >= options.max_supports) {
          return std::nullopt;
        }
        lp::Problem prob = invariant_cone(p, support);
        prob.add(to_rational(theta.entries()), lp::Sense::eq, 1);
        auto sol = lp::solve(prob);
        if (sol.status == lp::Status::optimal) {
          StateCertificate cert;
          cert.vector.finite_values  = std::move(sol.x);
          cert.vector.finite_support = std::move(support);
          cert.target                = theta;
          cert.normalization         = dot(cert.vector.finite_values, theta.entries());
          return cert;
        }
      } while (extra > 0 && next_combination(pick, rest.size()));
    }
    return std::nullopt;
  }

  std::optional<StateCertificate> solve_state_at(KGraphModel const&   m,
                                                 MonoidElement const& theta,
                                                 StateOptions const&  options) {
    return solve_state_at(presentation_from_kgraph(m), theta, options);
  }

  std::optional<RationalVector> faithful_finite_state(MonoidPresentation const& p) {
    std::vector<bool> all(p.dim(), true);
    lp::Problem       base = invariant_cone(p, all);
    base.add(RationalVector(p.dim(), 1), lp::Sense::eq, 1);

    RationalVector sum(p.dim(), 0);
    for (std::size_t v = 0; v < p.dim(); ++v) {
      lp::Problem prob = base;
      prob.objective.assign(p.dim(), 0);
      prob.objective[v] = 1;
      auto sol          = lp::solve(prob);
      if (sol.status != lp::Status::optimal || sol.value <= 0) {
        return std::nullopt;
      }
      for (std::size_t w = 0; w < p.dim(); ++w) {
        sum[w] += sol.x[w];
      }
    }
    for (auto& x : sum) {
      x /= static_cast<unsigned long>(p.dim());
    }
    return sum;
  }

  std::optional<RationalVector> faithful_finite_state(KGraphModel const& m) {
    return faithful_finite_state(presentation_from_kgraph(m));
  }

  IntMatrix difference_lattice(MonoidPresentation const& p) {
    IntMatrix out;
    for (auto const& mv : p.moves()) {
      IntVector d(p.dim());
      for (std::size_t i = 0; i < p.dim(); ++i) {
        d[i] = mv.lhs[i] - mv.rhs[i];
      }
      out.push_back(std::move(d));
    }
    return out;
  }

  lp::Problem coboundary_problem(MonoidPresentation const& p) {
    // Variables: z_1..z_m (free), then y_1..y_d (>= 0).
    std::size_t const m    = p.moves().size();
    std::size_t const d    = p.dim();
    IntMatrix const   diff = difference_lattice(p);
    lp::Problem       prob;
    prob.num_vars = m + d;
    prob.free.assign(m + d, false);
    for (std::size_t j = 0; j < m; ++j) {
      prob.free[j] = true;
    }
    for (std::size_t v = 0; v < d; ++v) {
      RationalVector row(m + d, 0);
      for (std::size_t j = 0; j < m; ++j) {
        row[j] = Rational(-diff[j][v]);
      }
      row[m + v] = 1;
      prob.add(std::move(row), lp::Sense::eq, 0);
    }
    RationalVector total(m + d, 0);
    for (std::size_t v = 0; v < d; ++v) {
      total[m + v] = 1;
    }
    prob.add(std::move(total), lp::Sense::eq, 1);
    return prob;
  }

  CoboundaryResult coboundary_check(MonoidPresentation const& p) {
    lp::Problem prob = coboundary_problem(p);
    auto        sol  = lp::solve(prob);
    CoboundaryResult out;
    if (sol.status != lp::Status::optimal) {
      out.holds  = true;
      out.farkas = std::move(sol.farkas);
      return out;
    }
    // Clear denominators: a rational witness scales to an integer one.
    Integer const     scale = lcm_of_denominators(sol.x);
    std::size_t const m     = p.moves().size();
    out.holds               = false;
    for (std::size_t j = 0; j < sol.x.size(); ++j) {
      Rational scaled = sol.x[j] * scale;
      (j < m ? out.z : out.y).push_back(scaled.get_num());
    }
    return out;
  }

  CoboundaryResult coboundary_check(KGraphModel const& m) {
    return coboundary_check(presentation_from_kgraph(m));
  }

  StiemkeResult stiemke_crosscheck(MonoidPresentation const& p) {
    StiemkeResult out;
    lp::Problem   prob;
    prob.num_vars = p.dim();
    for (auto const& mv : p.moves()) {
      if (!mv.is_identity()) {
        prob.add(difference_row(mv), lp::Sense::eq, 0);
      }
    }
    for (std::size_t v = 0; v < p.dim(); ++v) {
      RationalVector row(p.dim(), 0);
      row[v] = 1;
      prob.add(std::move(row), lp::Sense::ge, 1);
    }
    auto sol = lp::solve(prob);
    if (sol.status == lp::Status::optimal) {
      out.positive_invariant = std::move(sol.x);
    }
    auto cob             = coboundary_check(p);
    out.coboundary_holds = cob.holds;
    out.consistent       = cob.holds == out.positive_invariant.has_value();
    if (!out.consistent) {
      out.diagnostics.push_back(cob.holds ? "coboundary holds but no positive invariant vector"
                                          : "coboundary fails yet a positive invariant vector exists");
    }
    return out;
  }

  StiemkeResult stiemke_crosscheck(KGraphModel const& m) {
    return stiemke_crosscheck(presentation_from_kgraph(m));
  }

}  // namespace typesemi
