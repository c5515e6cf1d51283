#include "typesemi/linalg.hpp"

#include <algorithm>
#include <utility>

namespace typesemi::linalg {

  RationalMatrix kernel_basis(RationalMatrix const& a, std::size_t cols) {
    RationalMatrix m = a;
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
      std::size_t piv = row;
      while (piv < m.size() && m[piv][col] == 0) {
        ++piv;
      }
      if (piv == m.size()) {
        continue;
      }
      std::swap(m[row], m[piv]);
      Rational inv = 1 / m[row][col];
      for (auto& x : m[row]) {
        x *= inv;
      }
      for (std::size_t r = 0; r < m.size(); ++r) {
        if (r != row && m[r][col] != 0) {
          Rational factor = m[r][col];
          for (std::size_t c = 0; c < cols; ++c) {
            m[r][c] -= factor * m[row][c];
          }
        }
      }
      pivot_cols.push_back(col);
      ++row;
    }

    RationalMatrix basis;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) {
      is_pivot[c] = true;
    }
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
      if (is_pivot[free_col]) {
        continue;
      }
      RationalVector v(cols, 0);
      v[free_col] = 1;
      for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
        v[pivot_cols[r]] = -m[r][free_col];
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  namespace {
    IntMatrix identity(std::size_t n) {
      IntMatrix id(n, IntVector(n, 0));
      for (std::size_t i = 0; i < n; ++i) {
        id[i][i] = 1;
      }
      return id;
    }

    // row_a += k * row_b, in a matrix and its left transform.
    void add_row(IntMatrix& m, std::size_t a, std::size_t b, Integer const& k) {
      for (std::size_t c = 0; c < m[a].size(); ++c) {
        m[a][c] += k * m[b][c];
      }
    }

    void add_col(IntMatrix& m, std::size_t a, std::size_t b, Integer const& k) {
      for (auto& r : m) {
        r[a] += k * r[b];
      }
    }

    void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
      for (auto& r : m) {
        std::swap(r[a], r[b]);
      }
    }
  }  // namespace

  SmithForm smith_normal_form(IntMatrix const& a, std::size_t cols) {
    std::size_t const rows = a.size();
    IntMatrix m = a;
    SmithForm out{identity(rows), identity(cols), {}};
    std::size_t const n = std::min(rows, cols);

    for (std::size_t t = 0; t < n; ++t) {
      while (true) {
        // Smallest nonzero entry of the trailing block goes to (t, t).
        std::size_t br = rows, bc = cols;
        for (std::size_t r = t; r < rows; ++r) {
          for (std::size_t c = t; c < cols; ++c) {
            if (m[r][c] != 0
                && (br == rows || abs(m[r][c]) < abs(m[br][bc]))) {
              br = r;
              bc = c;
            }
          }
        }
        if (br == rows) {
          break;
        }
        std::swap(m[t], m[br]);
        std::swap(out.left[t], out.left[br]);
        swap_cols(m, t, bc);
        swap_cols(out.right, t, bc);

        bool clean = true;
        for (std::size_t r = t + 1; r < rows; ++r) {
          if (m[r][t] != 0) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m[r][t].get_mpz_t(), m[t][t].get_mpz_t());
            add_row(m, r, t, -q);
            add_row(out.left, r, t, -q);
            clean = clean && m[r][t] == 0;
          }
        }
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (m[t][c] != 0) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m[t][c].get_mpz_t(), m[t][t].get_mpz_t());
            add_col(m, c, t, -q);
            add_col(out.right, c, t, -q);
            clean = clean && m[t][c] == 0;
          }
        }
        if (!clean) {
          continue;
        }
        // Divisibility: fold a violating row into row t and retry.
        bool divides = true;
        for (std::size_t r = t + 1; r < rows && divides; ++r) {
          for (std::size_t c = t + 1; c < cols; ++c) {
            if (m[r][c] % m[t][t] != 0) {
              add_row(m, t, r, 1);
              add_row(out.left, t, r, 1);
              divides = false;
              break;
            }
          }
        }
        if (divides) {
          break;
        }
      }
      if (m[t][t] < 0) {
        for (auto& x : m[t]) {
          x = -x;
        }
        for (auto& x : out.left[t]) {
          x = -x;
        }
      }
    }
    out.diag.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
      out.diag[t] = m[t][t];
    }
    return out;
  }

  IntMatrix multiply(IntMatrix const& a, IntMatrix const& b) {
    if (a.empty()) {
      return {};
    }
    std::size_t const inner = b.size();
    std::size_t const cols  = inner == 0 ? 0 : b[0].size();
    IntMatrix out(a.size(), IntVector(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t k = 0; k < inner; ++k) {
        if (a[i][k] == 0) {
          continue;
        }
        for (std::size_t j = 0; j < cols; ++j) {
          out[i][j] += a[i][k] * b[k][j];
        }
      }
    }
    return out;
  }

}  // namespace typesemi::linalg
