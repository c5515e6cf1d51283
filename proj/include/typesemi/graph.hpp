#pragma once

// Directed graphs and k-graphs given by commuting adjacency matrices.
//
// Edges are stored as (range, source) and A(v, w) counts the edges with
// range v and source w, so Theta^n(f) = (A^n)^T f and the move attached to
// a vertex is delta_v <-> (A_i)^T delta_v = row v of A_i.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "typesemi/monoid.hpp"
#include "typesemi/numeric.hpp"

namespace typesemi {

  using VertexVector = MonoidElement;

  struct Edge {
    std::string id;
    std::size_t range;
    std::size_t source;
  };

  struct RawEdge {
    std::string id;
    std::string range;
    std::string source;
  };

  class DirectedGraph {
   public:
    // Validates references and the no-sources condition (every vertex is
    // the range of some edge). Throws BAD_REFERENCE, ROW_ZERO or
    // INVALID_INPUT for repeated ids.
    DirectedGraph(std::vector<std::string> vertices, std::vector<RawEdge> const& edges);

    std::vector<std::string> const& vertices() const noexcept {
      return _vertices;
    }
    std::vector<Edge> const& edges() const noexcept {
      return _edges;
    }
    std::size_t num_vertices() const noexcept {
      return _vertices.size();
    }

    std::size_t vertex_index(std::string const& id) const;
    std::size_t edge_index(std::string const& id) const;

    IntMatrix adjacency() const;

   private:
    std::vector<std::string> _vertices;
    std::vector<Edge>        _edges;
  };

  class KGraphModel {
   public:
    std::size_t k() const noexcept {
      return _matrices.size();
    }
    std::size_t num_vertices() const noexcept {
      return _vertices.size();
    }
    std::vector<std::string> const& vertices() const noexcept {
      return _vertices;
    }
    std::vector<IntMatrix> const& matrices() const noexcept {
      return _matrices;
    }

    // Sum of the coordinate matrices; its nonzero pattern is the skeleton.
    IntMatrix skeleton() const;

   private:
    friend KGraphModel validate_kgraph(std::vector<std::string>, std::vector<IntMatrix>);
    std::vector<std::string> _vertices;
    std::vector<IntMatrix>   _matrices;
  };

  // Checks shapes (BAD_REFERENCE), nonnegativity (INVALID_INPUT), pairwise
  // commutation (NONCOMMUTING_MATRICES) and nonzero rows (ROW_ZERO).
  KGraphModel validate_kgraph(std::vector<std::string> vertices,
                              std::vector<IntMatrix>   matrices);

  KGraphModel to_kgraph(DirectedGraph const& g);

  IntMatrix identity_matrix(std::size_t n);
  IntMatrix matrix_product(IntMatrix const& a, IntMatrix const& b);

  // A^p = prod_i A_i^{p_i}.
  IntMatrix adjacency_power(KGraphModel const& m, std::vector<unsigned> const& p);

  // (A^n)^T f.
  VertexVector theta(KGraphModel const&           m,
                     std::vector<unsigned> const& n,
                     VertexVector const&          f);

  // One move delta_v <-> (A_i)^T delta_v per vertex v (outer) and matrix i.
  MonoidPresentation presentation_from_kgraph(KGraphModel const& m);

  // A finite path e_1 ... e_n with s(e_i) = r(e_{i+1}); n = 0 is a vertex.
  struct PathWord {
    std::vector<std::size_t> edges;
    std::size_t              vertex = 0;  // only meaningful when edges is empty

    std::size_t length() const noexcept {
      return edges.size();
    }
    bool operator==(PathWord const&) const = default;
    auto operator<=>(PathWord const&) const = default;
  };

  PathWord vertex_word(std::size_t v);
  PathWord edge_word(std::vector<std::size_t> edges);

  std::size_t word_range(DirectedGraph const& g, PathWord const& w);
  std::size_t word_source(DirectedGraph const& g, PathWord const& w);

  struct CylinderUnion {
    std::size_t           depth = 0;
    std::vector<PathWord> words;  // sorted, distinct, all of length depth
  };

  // Splits Z(mu) = disjoint union of Z(mu e) over edges e with r(e) = s(mu)
  // until every word reaches `depth` (default: the longest input word).
  // Strict mode rejects inputs where one word extends another.
  CylinderUnion cylinder_normalize(DirectedGraph const&         g,
                                   std::vector<PathWord> const& words,
                                   std::optional<std::size_t>   depth  = std::nullopt,
                                   bool                         strict = false);

  // Sum of delta_{s(mu)} over the words of a normalized union.
  VertexVector class_of_cylinders(DirectedGraph const& g, CylinderUnion const& a);

  enum class Tristate { no, yes, undetermined };

  char const* tristate_name(Tristate t) noexcept;

  struct StructuralReport {
    bool                                  cofinal            = false;
    Tristate                              condition_L        = Tristate::undetermined;
    bool                                  strongly_connected = false;
    std::vector<std::vector<std::size_t>> cyclic_sccs;
  };

  // Strongly connected components of the graph with an arc v -> w whenever
  // adj(v, w) > 0, in reverse topological order of the condensation.
  std::vector<std::vector<std::size_t>> strongly_connected_components(IntMatrix const& adj);

  StructuralReport structural_checks(DirectedGraph const& g);

  // For k = 1 this is exact. For k >= 2 cofinality is read off the
  // skeleton and condition (L) is reported as undetermined, since the
  // factorization rules are not part of the model.
  StructuralReport structural_checks(KGraphModel const& m);

}  // namespace typesemi
