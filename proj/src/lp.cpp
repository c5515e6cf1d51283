#include "typesemi/lp.hpp"

#include <utility>

#include "typesemi/error.hpp"

namespace typesemi::lp {

  namespace {

    // Dense tableau over the standardized problem  A x = b, x >= 0, b >= 0.
    // Columns: structural (free variables split in two), then one slack per
    // inequality row, then one artificial per row.
    class Tableau {
     public:
      Tableau(RationalMatrix a, RationalVector b, std::size_t artificial_begin)
          : _a(std::move(a)),
            _b(std::move(b)),
            _art(artificial_begin),
            _basis(_a.size()),
            _active(_a.size(), true) {
        for (std::size_t i = 0; i < _a.size(); ++i) {
          _basis[i] = _art + i;
        }
      }

      std::size_t cols() const {
        return _a.empty() ? 0 : _a[0].size();
      }

      // Minimizes cost.x over columns < limit. Returns false if unbounded.
      bool minimize(RationalVector const& cost, std::size_t limit) {
        while (true) {
          RationalVector reduced = reduced_costs(cost);
          // Bland: lowest-index improving column.
          std::size_t enter = limit;
          for (std::size_t j = 0; j < limit; ++j) {
            if (reduced[j] < 0 && !is_basic(j)) {
              enter = j;
              break;
            }
          }
          if (enter == limit) {
            return true;
          }
          std::size_t leave = _a.size();
          Rational    best;
          for (std::size_t i = 0; i < _a.size(); ++i) {
            if (!_active[i] || _a[i][enter] <= 0) {
              continue;
            }
            Rational ratio = _b[i] / _a[i][enter];
            if (leave == _a.size() || ratio < best
                || (ratio == best && _basis[i] < _basis[leave])) {
              leave = i;
              best  = ratio;
            }
          }
          if (leave == _a.size()) {
            return false;
          }
          pivot(leave, enter);
        }
      }

      RationalVector reduced_costs(RationalVector const& cost) const {
        RationalVector d = cost;
        for (std::size_t i = 0; i < _a.size(); ++i) {
          if (!_active[i] || cost[_basis[i]] == 0) {
            continue;
          }
          Rational const& cb = cost[_basis[i]];
          for (std::size_t j = 0; j < d.size(); ++j) {
            if (_a[i][j] != 0) {
              d[j] -= cb * _a[i][j];
            }
          }
        }
        return d;
      }

      Rational value(RationalVector const& cost) const {
        Rational v = 0;
        for (std::size_t i = 0; i < _a.size(); ++i) {
          if (_active[i]) {
            v += cost[_basis[i]] * _b[i];
          }
        }
        return v;
      }

      // Pivots basic artificials out where possible; rows that cannot be
      // cleared are redundant and get deactivated.
      void expel_artificials() {
        for (std::size_t i = 0; i < _a.size(); ++i) {
          if (!_active[i] || _basis[i] < _art) {
            continue;
          }
          std::size_t col = _art;
          for (std::size_t j = 0; j < _art; ++j) {
            if (_a[i][j] != 0 && !is_basic(j)) {
              col = j;
              break;
            }
          }
          if (col == _art) {
            _active[i] = false;
          } else {
            pivot(i, col);
          }
        }
      }

      RationalVector primal(std::size_t n) const {
        RationalVector x(n, 0);
        for (std::size_t i = 0; i < _a.size(); ++i) {
          if (_active[i] && _basis[i] < n) {
            x[_basis[i]] = _b[i];
          }
        }
        return x;
      }

     private:
      bool is_basic(std::size_t j) const {
        for (std::size_t i = 0; i < _basis.size(); ++i) {
          if (_active[i] && _basis[i] == j) {
            return true;
          }
        }
        return false;
      }

      void pivot(std::size_t row, std::size_t col) {
        Rational inv = 1 / _a[row][col];
        for (auto& x : _a[row]) {
          if (x != 0) {
            x *= inv;
          }
        }
        _b[row] *= inv;
        for (std::size_t i = 0; i < _a.size(); ++i) {
          if (i == row || _a[i][col] == 0) {
            continue;
          }
          Rational factor = _a[i][col];
          for (std::size_t j = 0; j < _a[i].size(); ++j) {
            if (_a[row][j] != 0) {
              _a[i][j] -= factor * _a[row][j];
            }
          }
          _b[i] -= factor * _b[row];
        }
        _basis[row] = col;
      }

      RationalMatrix           _a;
      RationalVector           _b;
      std::size_t              _art;
      std::vector<std::size_t> _basis;
      std::vector<bool>        _active;
    };

    bool is_free(Problem const& p, std::size_t j) {
      return j < p.free.size() && p.free[j];
    }

  }  // namespace

  Solution solve(Problem const& problem) {
    std::size_t const n = problem.num_vars;
    std::size_t const m = problem.constraints.size();
    for (auto const& c : problem.constraints) {
      if (c.coeffs.size() != n) {
        throw Error(ErrorCode::dimension_mismatch, "LP constraint has wrong width");
      }
    }
    if (!problem.objective.empty() && problem.objective.size() != n) {
      throw Error(ErrorCode::dimension_mismatch, "LP objective has wrong width");
    }

    // Column layout of the standardized problem.
    std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
    std::size_t              ncols = 0;
    for (std::size_t j = 0; j < n; ++j) {
      pos_col[j] = ncols++;
      if (is_free(problem, j)) {
        neg_col[j] = ncols++;
      }
    }
    std::size_t const structural = ncols;
    std::vector<std::size_t> slack_col(m, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i) {
      if (problem.constraints[i].sense != Sense::eq) {
        slack_col[i] = ncols++;
      }
    }
    std::size_t const art = ncols;
    ncols += m;

    RationalMatrix a(m, RationalVector(ncols, 0));
    RationalVector b(m);
    std::vector<int> sign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
      auto const& c = problem.constraints[i];
      sign[i]       = c.rhs < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n; ++j) {
        a[i][pos_col[j]] = sign[i] * c.coeffs[j];
        if (neg_col[j] != SIZE_MAX) {
          a[i][neg_col[j]] = -sign[i] * c.coeffs[j];
        }
      }
      if (c.sense == Sense::le) {
        a[i][slack_col[i]] = sign[i];
      } else if (c.sense == Sense::ge) {
        a[i][slack_col[i]] = -sign[i];
      }
      a[i][art + i] = 1;
      b[i]          = sign[i] * c.rhs;
    }

    Tableau t(std::move(a), std::move(b), art);

    RationalVector phase1(ncols, 0);
    for (std::size_t i = 0; i < m; ++i) {
      phase1[art + i] = 1;
    }
    t.minimize(phase1, ncols);

    Solution sol;
    if (t.value(phase1) > 0) {
      // Duals of the phase-one optimum: pi_i = 1 - reduced cost of the i-th
      // artificial column; y = -pi maps back through the row signs.
      RationalVector reduced = t.reduced_costs(phase1);
      sol.status             = Status::infeasible;
      sol.farkas.resize(m);
      for (std::size_t i = 0; i < m; ++i) {
        Rational pi     = 1 - reduced[art + i];
        sol.farkas[i]   = -pi * sign[i];
      }
      return sol;
    }

    t.expel_artificials();

    RationalVector cost(ncols, 0);
    if (!problem.objective.empty()) {
      for (std::size_t j = 0; j < n; ++j) {
        cost[pos_col[j]] = -problem.objective[j];
        if (neg_col[j] != SIZE_MAX) {
          cost[neg_col[j]] = problem.objective[j];
        }
      }
    }
    bool bounded = t.minimize(cost, art);
    RationalVector std_x = t.primal(structural);
    sol.x.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      sol.x[j] = std_x[pos_col[j]];
      if (neg_col[j] != SIZE_MAX) {
        sol.x[j] -= std_x[neg_col[j]];
      }
    }
    sol.status = bounded ? Status::optimal : Status::unbounded;
    if (bounded && !problem.objective.empty()) {
      sol.value = 0;
      for (std::size_t j = 0; j < n; ++j) {
        sol.value += problem.objective[j] * sol.x[j];
      }
    }
    return sol;
  }

  bool satisfies(Problem const& problem, RationalVector const& x) {
    if (x.size() != problem.num_vars) {
      return false;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!is_free(problem, j) && x[j] < 0) {
        return false;
      }
    }
    for (auto const& c : problem.constraints) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        lhs += c.coeffs[j] * x[j];
      }
      if ((c.sense == Sense::le && lhs > c.rhs)
          || (c.sense == Sense::ge && lhs < c.rhs)
          || (c.sense == Sense::eq && lhs != c.rhs)) {
        return false;
      }
    }
    return true;
  }

  bool is_farkas_certificate(Problem const& problem, RationalVector const& y) {
    if (y.size() != problem.constraints.size()) {
      return false;
    }
    Rational yb = 0;
    RationalVector ya(problem.num_vars, 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
      auto const& c = problem.constraints[i];
      if ((c.sense == Sense::le && y[i] < 0) || (c.sense == Sense::ge && y[i] > 0)) {
        return false;
      }
      yb += y[i] * c.rhs;
      for (std::size_t j = 0; j < problem.num_vars; ++j) {
        ya[j] += y[i] * c.coeffs[j];
      }
    }
    for (std::size_t j = 0; j < problem.num_vars; ++j) {
      if (is_free(problem, j) ? ya[j] != 0 : ya[j] < 0) {
        return false;
      }
    }
    return yb < 0;
  }

}  // namespace typesemi::lp
