#include "typesemi/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "typesemi/error.hpp"

namespace typesemi {

  namespace {
    std::map<std::string, std::size_t> index_ids(std::vector<std::string> const& ids,
                                                 char const*                     what) {
      std::map<std::string, std::size_t> idx;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!idx.emplace(ids[i], i).second) {
          throw Error(ErrorCode::invalid_input,
                      std::string("duplicate ") + what + " id '" + ids[i] + "'");
        }
      }
      return idx;
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // DirectedGraph
  ////////////////////////////////////////////////////////////////////////

  DirectedGraph::DirectedGraph(std::vector<std::string> vertices,
                               std::vector<RawEdge> const& edges)
      : _vertices(std::move(vertices)) {
    auto const vidx = index_ids(_vertices, "vertex");
    std::set<std::string> edge_ids;
    for (auto const& e : edges) {
      if (!edge_ids.insert(e.id).second) {
        throw Error(ErrorCode::invalid_input, "duplicate edge id '" + e.id + "'");
      }
      auto r = vidx.find(e.range);
      auto s = vidx.find(e.source);
      if (r == vidx.end() || s == vidx.end()) {
        throw Error(ErrorCode::bad_reference,
                    "edge '" + e.id + "' references an unknown vertex");
      }
      _edges.push_back({e.id, r->second, s->second});
    }
    std::vector<bool> receives(_vertices.size(), false);
    for (auto const& e : _edges) {
      receives[e.range] = true;
    }
    for (std::size_t v = 0; v < _vertices.size(); ++v) {
      if (!receives[v]) {
        throw Error(ErrorCode::row_zero,
                    "vertex '" + _vertices[v] + "' is the range of no edge");
      }
    }
  }

  std::size_t DirectedGraph::vertex_index(std::string const& id) const {
    auto it = std::find(_vertices.begin(), _vertices.end(), id);
    if (it == _vertices.end()) {
      throw Error(ErrorCode::bad_reference, "unknown vertex '" + id + "'");
    }
    return static_cast<std::size_t>(it - _vertices.begin());
  }

  std::size_t DirectedGraph::edge_index(std::string const& id) const {
    for (std::size_t i = 0; i < _edges.size(); ++i) {
      if (_edges[i].id == id) {
        return i;
      }
    }
    throw Error(ErrorCode::bad_reference, "unknown edge '" + id + "'");
  }

  IntMatrix DirectedGraph::adjacency() const {
    IntMatrix a(_vertices.size(), IntVector(_vertices.size(), 0));
    for (auto const& e : _edges) {
      a[e.range][e.source] += 1;
    }
    return a;
  }

  ////////////////////////////////////////////////////////////////////////
  // k-graphs
  ////////////////////////////////////////////////////////////////////////

  IntMatrix identity_matrix(std::size_t n) {
    IntMatrix id(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      id[i][i] = 1;
    }
    return id;
  }

  IntMatrix matrix_product(IntMatrix const& a, IntMatrix const& b) {
    std::size_t const n = a.size();
    IntMatrix out(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (a[i][k] == 0) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          out[i][j] += a[i][k] * b[k][j];
        }
      }
    }
    return out;
  }

  IntMatrix KGraphModel::skeleton() const {
    IntMatrix s(num_vertices(), IntVector(num_vertices(), 0));
    for (auto const& a : _matrices) {
      for (std::size_t i = 0; i < num_vertices(); ++i) {
        for (std::size_t j = 0; j < num_vertices(); ++j) {
          s[i][j] += a[i][j];
        }
      }
    }
    return s;
  }

  KGraphModel validate_kgraph(std::vector<std::string> vertices,
                              std::vector<IntMatrix>   matrices) {
    index_ids(vertices, "vertex");
    std::size_t const n = vertices.size();
    if (n == 0) {
      throw Error(ErrorCode::bad_reference, "a k-graph needs at least one vertex");
    }
    if (matrices.empty()) {
      throw Error(ErrorCode::bad_reference, "a k-graph needs k >= 1 matrices");
    }
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      if (matrices[i].size() != n) {
        throw Error(ErrorCode::bad_reference,
                    "matrix " + std::to_string(i + 1) + " does not have "
                        + std::to_string(n) + " rows");
      }
      for (auto const& row : matrices[i]) {
        if (row.size() != n) {
          throw Error(ErrorCode::bad_reference,
                      "matrix " + std::to_string(i + 1) + " is not square");
        }
        for (auto const& x : row) {
          if (x < 0) {
            throw Error(ErrorCode::invalid_input, "adjacency entries must be nonnegative");
          }
        }
      }
    }
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      for (std::size_t j = i + 1; j < matrices.size(); ++j) {
        if (matrix_product(matrices[i], matrices[j])
            != matrix_product(matrices[j], matrices[i])) {
          throw Error(ErrorCode::noncommuting_matrices,
                      "matrices " + std::to_string(i + 1) + " and "
                          + std::to_string(j + 1) + " do not commute");
        }
      }
    }
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      for (std::size_t v = 0; v < n; ++v) {
        auto const& row = matrices[i][v];
        if (std::all_of(row.begin(), row.end(), [](Integer const& x) { return x == 0; })) {
          throw Error(ErrorCode::row_zero,
                      "vertex '" + vertices[v] + "' has a zero row in matrix "
                          + std::to_string(i + 1));
        }
      }
    }
    KGraphModel m;
    m._vertices = std::move(vertices);
    m._matrices = std::move(matrices);
    return m;
  }

  KGraphModel to_kgraph(DirectedGraph const& g) {
    return validate_kgraph(g.vertices(), {g.adjacency()});
  }

  IntMatrix adjacency_power(KGraphModel const& m, std::vector<unsigned> const& p) {
    if (p.size() != m.k()) {
      throw Error(ErrorCode::dimension_mismatch, "degree vector must have length k");
    }
    IntMatrix out = identity_matrix(m.num_vertices());
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (unsigned e = 0; e < p[i]; ++e) {
        out = matrix_product(out, m.matrices()[i]);
      }
    }
    return out;
  }

  VertexVector theta(KGraphModel const&           m,
                     std::vector<unsigned> const& n,
                     VertexVector const&          f) {
    if (f.size() != m.num_vertices()) {
      throw Error(ErrorCode::dimension_mismatch, "vector length differs from vertex count");
    }
    IntMatrix a = adjacency_power(m, n);
    IntVector out(m.num_vertices(), 0);
    for (std::size_t w = 0; w < m.num_vertices(); ++w) {
      if (f[w] == 0) {
        continue;
      }
      for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        out[v] += a[w][v] * f[w];
      }
    }
    return VertexVector(std::move(out));
  }

  MonoidPresentation presentation_from_kgraph(KGraphModel const& m) {
    std::vector<Move> moves;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
      for (auto const& a : m.matrices()) {
        moves.push_back({MonoidElement::unit(m.num_vertices(), v), MonoidElement(a[v])});
      }
    }
    return MonoidPresentation(m.num_vertices(), std::move(moves));
  }

  ////////////////////////////////////////////////////////////////////////
  // Path words and cylinders
  ////////////////////////////////////////////////////////////////////////

  PathWord vertex_word(std::size_t v) {
    return PathWord{{}, v};
  }

  PathWord edge_word(std::vector<std::size_t> edges) {
    return PathWord{std::move(edges), 0};
  }

  namespace {
    void check_word(DirectedGraph const& g, PathWord const& w) {
      if (w.edges.empty()) {
        if (w.vertex >= g.num_vertices()) {
          throw Error(ErrorCode::bad_reference, "word refers to an unknown vertex");
        }
        return;
      }
      for (std::size_t i = 0; i < w.edges.size(); ++i) {
        if (w.edges[i] >= g.edges().size()) {
          throw Error(ErrorCode::bad_reference, "word refers to an unknown edge");
        }
        if (i > 0 && g.edges()[w.edges[i - 1]].source != g.edges()[w.edges[i]].range) {
          throw Error(ErrorCode::noncomposable_word,
                      "edges '" + g.edges()[w.edges[i - 1]].id + "' and '"
                          + g.edges()[w.edges[i]].id + "' do not compose");
        }
      }
    }

    bool extends(PathWord const& longer, PathWord const& shorter, DirectedGraph const& g) {
      if (shorter.edges.empty()) {
        return word_range(g, longer) == shorter.vertex;
      }
      if (longer.edges.size() < shorter.edges.size()) {
        return false;
      }
      return std::equal(shorter.edges.begin(), shorter.edges.end(), longer.edges.begin());
    }
  }  // namespace

  std::size_t word_range(DirectedGraph const& g, PathWord const& w) {
    return w.edges.empty() ? w.vertex : g.edges()[w.edges.front()].range;
  }

  std::size_t word_source(DirectedGraph const& g, PathWord const& w) {
    return w.edges.empty() ? w.vertex : g.edges()[w.edges.back()].source;
  }

  CylinderUnion cylinder_normalize(DirectedGraph const&         g,
                                   std::vector<PathWord> const& words,
                                   std::optional<std::size_t>   depth,
                                   bool                         strict) {
    std::size_t longest = 0;
    for (auto const& w : words) {
      check_word(g, w);
      longest = std::max(longest, w.length());
    }
    std::size_t const target = depth.value_or(longest);
    if (target < longest) {
      throw Error(ErrorCode::invalid_input,
                  "requested depth is shorter than an input word");
    }
    if (strict) {
      for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = 0; j < words.size(); ++j) {
          if (i != j && words[i].length() >= words[j].length()
              && extends(words[i], words[j], g)) {
            throw Error(ErrorCode::overlapping_cylinders,
                        "input words " + std::to_string(j) + " and "
                            + std::to_string(i) + " overlap");
          }
        }
      }
    }

    // Edges grouped by range, in declaration order.
    std::vector<std::vector<std::size_t>> into(g.num_vertices());
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      into[g.edges()[e].range].push_back(e);
    }

    std::set<PathWord> result;
    for (auto const& w : words) {
      std::vector<PathWord> layer{w};
      for (std::size_t len = w.length(); len < target; ++len) {
        std::vector<PathWord> next;
        for (auto const& mu : layer) {
          for (auto e : into[word_source(g, mu)]) {
            PathWord ext = mu;
            ext.edges.push_back(e);
            ext.vertex = 0;
            next.push_back(std::move(ext));
          }
        }
        layer = std::move(next);
      }
      result.insert(layer.begin(), layer.end());
    }
    return CylinderUnion{target, {result.begin(), result.end()}};
  }

  VertexVector class_of_cylinders(DirectedGraph const& g, CylinderUnion const& a) {
    VertexVector out(g.num_vertices());
    for (auto const& w : a.words) {
      check_word(g, w);
      out += MonoidElement::unit(g.num_vertices(), word_source(g, w));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Structural checks
  ////////////////////////////////////////////////////////////////////////

  char const* tristate_name(Tristate t) noexcept {
    switch (t) {
      case Tristate::no: return "no";
      case Tristate::yes: return "yes";
      case Tristate::undetermined: return "undetermined";
    }
    return "undetermined";
  }

  std::vector<std::vector<std::size_t>> strongly_connected_components(IntMatrix const& adj) {
    std::size_t const n = adj.size();
    constexpr std::size_t unvisited = SIZE_MAX;
    std::vector<std::size_t> number(n, unvisited), low(n, 0);
    std::vector<bool>        on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> sccs;
    std::size_t counter = 0;

    // Iterative Tarjan: each frame is (vertex, next successor to try).
    std::vector<std::pair<std::size_t, std::size_t>> frames;
    for (std::size_t root = 0; root < n; ++root) {
      if (number[root] != unvisited) {
        continue;
      }
      frames.emplace_back(root, 0);
      number[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!frames.empty()) {
        auto& [v, next] = frames.back();
        if (next < n) {
          std::size_t w = next++;
          if (adj[v][w] == 0) {
            continue;
          }
          if (number[w] == unvisited) {
            number[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            frames.emplace_back(w, 0);
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], number[w]);
          }
          continue;
        }
        std::size_t const done = v;
        frames.pop_back();
        if (!frames.empty()) {
          auto const parent = frames.back().first;
          low[parent]       = std::min(low[parent], low[done]);
        }
        if (low[done] == number[done]) {
          std::vector<std::size_t> scc;
          std::size_t              w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            scc.push_back(w);
          } while (w != done);
          std::sort(scc.begin(), scc.end());
          sccs.push_back(std::move(scc));
        }
      }
    }
    return sccs;
  }

  namespace {

    StructuralReport checks_on(IntMatrix const& adj, bool exact_condition_l) {
      std::size_t const n    = adj.size();
      auto              sccs = strongly_connected_components(adj);
      StructuralReport  report;
      report.strongly_connected = sccs.size() == 1;

      for (auto const& scc : sccs) {
        bool cyclic = scc.size() > 1 || adj[scc[0]][scc[0]] != 0;
        if (cyclic) {
          report.cyclic_sccs.push_back(scc);
        }
      }
      std::sort(report.cyclic_sccs.begin(), report.cyclic_sccs.end());

      // Reachability along range -> source from every vertex.
      report.cofinal = true;
      for (std::size_t v = 0; v < n && report.cofinal; ++v) {
        std::vector<bool>        seen(n, false);
        std::vector<std::size_t> queue{v};
        seen[v] = true;
        for (std::size_t head = 0; head < queue.size(); ++head) {
          for (std::size_t w = 0; w < n; ++w) {
            if (adj[queue[head]][w] != 0 && !seen[w]) {
              seen[w] = true;
              queue.push_back(w);
            }
          }
        }
        for (auto const& scc : report.cyclic_sccs) {
          if (!seen[scc[0]]) {
            report.cofinal = false;
            break;
          }
        }
      }

      if (!exact_condition_l) {
        report.condition_L = Tristate::undetermined;
        return report;
      }
      // A cycle without an exit is a cyclic component whose vertices each
      // receive exactly one edge.
      report.condition_L = Tristate::yes;
      for (auto const& scc : report.cyclic_sccs) {
        bool no_exit = std::all_of(scc.begin(), scc.end(), [&](std::size_t v) {
          Integer total = 0;
          for (auto const& x : adj[v]) {
            total += x;
          }
          return total == 1;
        });
        if (no_exit) {
          report.condition_L = Tristate::no;
          break;
        }
      }
      return report;
    }

  }  // namespace

  StructuralReport structural_checks(DirectedGraph const& g) {
    return checks_on(g.adjacency(), true);
  }

  StructuralReport structural_checks(KGraphModel const& m) {
    return checks_on(m.skeleton(), m.k() == 1);
  }

}  // namespace typesemi
