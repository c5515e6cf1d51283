#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "typesemi/graph.hpp"
#include "typesemi/model_io.hpp"

namespace typesemi::testing {

  inline std::string read_file(std::string const& path) {
    std::ifstream      in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  }

  inline ModelFile load(std::string const& name) {
    return parse_model(read_file(std::string(TEST_DATA_DIR) + "/" + name));
  }

  // Random square matrix with entries <= max_entry and no zero row.
  inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, unsigned max_entry) {
    IntMatrix a(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (rng() % 3 == 0) {
          a[i][j] = static_cast<long>(rng() % (max_entry + 1));
          any     = any || a[i][j] != 0;
        }
      }
      if (!any) {
        a[i][rng() % n] = static_cast<long>(1 + rng() % max_entry);
      }
    }
    return a;
  }

  // k = 1, or k = 2 with A_2 a polynomial in A_1 so the two commute.
  inline KGraphModel random_kgraph(std::mt19937_64& rng, std::size_t max_vertices,
                                   unsigned max_entry) {
    std::size_t              n = 1 + rng() % max_vertices;
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < n; ++i) {
      vs.push_back("v" + std::to_string(i));
    }
    IntMatrix a = random_matrix(rng, n, max_entry);
    if (rng() % 2 == 0) {
      return validate_kgraph(vs, {a});
    }
    IntMatrix b;
    switch (rng() % 3) {
      case 0: b = a; break;
      case 1: b = matrix_product(a, a); break;
      default:
        b = a;
        for (std::size_t i = 0; i < n; ++i) {
          b[i][i] += 1;
        }
    }
    return validate_kgraph(vs, {a, b});
  }

  inline KGraphModel relabel(KGraphModel const& m, std::vector<std::size_t> const& perm) {
    // Vertex v of m becomes vertex perm[v].
    std::size_t const        n = m.num_vertices();
    std::vector<std::string> vs(n);
    for (std::size_t v = 0; v < n; ++v) {
      vs[perm[v]] = m.vertices()[v];
    }
    std::vector<IntMatrix> mats;
    for (auto const& a : m.matrices()) {
      IntMatrix b(n, IntVector(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          b[perm[i]][perm[j]] = a[i][j];
        }
      }
      mats.push_back(std::move(b));
    }
    return validate_kgraph(vs, mats);
  }

}  // namespace typesemi::testing
