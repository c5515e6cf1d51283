#include "typesemi/model_io.hpp"

#include <cctype>
#include <map>

#include "typesemi/error.hpp"

namespace typesemi {

  using nlohmann::json;

  char const* kind_name(ModelFile::Kind k) noexcept {
    switch (k) {
      case ModelFile::Kind::graph: return "graph";
      case ModelFile::Kind::kgraph: return "kgraph";
      case ModelFile::Kind::action: return "action";
    }
    return "graph";
  }

  std::vector<std::string> ModelFile::labels() const {
    if (action) {
      return action->points();
    }
    return kgraph->vertices();
  }

  MonoidPresentation ModelFile::presentation() const {
    if (action) {
      return transformation_presentation(*action);
    }
    return presentation_from_kgraph(*kgraph);
  }

  namespace {

    [[noreturn]] void schema(std::string const& what) {
      throw Error(ErrorCode::invalid_input, "schema violation: " + what);
    }

    json const& field(json const& obj, char const* key) {
      auto it = obj.find(key);
      if (it == obj.end()) {
        schema(std::string("missing field '") + key + "'");
      }
      return *it;
    }

    // Ids may be given as strings or integers; both become strings.
    std::string id_of(json const& j, char const* what) {
      if (j.is_string()) {
        return j.get<std::string>();
      }
      if (j.is_number_integer()) {
        return std::to_string(j.get<long long>());
      }
      schema(std::string(what) + " ids must be strings or integers");
    }

    std::vector<std::string> id_list(json const& j, char const* what) {
      if (!j.is_array()) {
        schema(std::string(what) + " must be an array");
      }
      std::vector<std::string> out;
      for (auto const& x : j) {
        out.push_back(id_of(x, what));
      }
      return out;
    }

    Integer integer_of(json const& j) {
      if (j.is_number_unsigned()) {
        return Integer(std::to_string(j.get<unsigned long long>()));
      }
      if (j.is_number_integer()) {
        return Integer(std::to_string(j.get<long long>()));
      }
      if (j.is_string()) {
        Integer x;
        auto    s = j.get<std::string>();
        if (s.empty() || x.set_str(s, 10) != 0) {
          schema("'" + s + "' is not an integer");
        }
        return x;
      }
      schema("matrix entries must be integers");
    }

    IntMatrix matrix_of(json const& j, std::size_t n) {
      if (!j.is_array()) {
        schema("each matrix must be an array");
      }
      IntMatrix m;
      bool nested = !j.empty() && j[0].is_array();
      if (nested) {
        for (auto const& row : j) {
          if (!row.is_array()) {
            schema("matrix rows must be arrays");
          }
          IntVector r;
          for (auto const& x : row) {
            r.push_back(integer_of(x));
          }
          m.push_back(std::move(r));
        }
        return m;
      }
      if (j.size() != n * n) {
        schema("flat matrix must have " + std::to_string(n * n) + " entries");
      }
      for (std::size_t i = 0; i < n; ++i) {
        IntVector r;
        for (std::size_t c = 0; c < n; ++c) {
          r.push_back(integer_of(j[i * n + c]));
        }
        m.push_back(std::move(r));
      }
      return m;
    }

  }  // namespace

  ModelFile parse_model(std::string_view text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (json::parse_error const& e) {
      throw Error(ErrorCode::invalid_input, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
      schema("top level must be an object");
    }
    ModelFile m;
    auto const& kind = field(doc, "kind");
    if (!kind.is_string()) {
      schema("'kind' must be a string");
    }
    if (auto it = doc.find("name"); it != doc.end() && it->is_string()) {
      m.name = it->get<std::string>();
    }
    if (auto it = doc.find("description"); it != doc.end() && it->is_string()) {
      m.description = it->get<std::string>();
    }

    auto const k = kind.get<std::string>();
    if (k == "graph") {
      m.kind        = ModelFile::Kind::graph;
      auto vertices = id_list(field(doc, "vertices"), "vertex");
      auto const& edges = field(doc, "edges");
      if (!edges.is_array()) {
        schema("'edges' must be an array");
      }
      std::vector<RawEdge> raw;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        auto const& e = edges[i];
        if (!e.is_object()) {
          schema("edges must be objects");
        }
        std::string id = e.contains("id") ? id_of(e["id"], "edge") : "e" + std::to_string(i);
        raw.push_back({id, id_of(field(e, "range"), "vertex"), id_of(field(e, "source"), "vertex")});
      }
      m.graph.emplace(std::move(vertices), raw);
      m.kgraph = to_kgraph(*m.graph);
    } else if (k == "kgraph") {
      m.kind        = ModelFile::Kind::kgraph;
      auto vertices = id_list(field(doc, "vertices"), "vertex");
      auto const& mats = field(doc, "matrices");
      if (!mats.is_array() || mats.empty()) {
        schema("'matrices' must be a nonempty array");
      }
      std::vector<IntMatrix> matrices;
      for (auto const& a : mats) {
        matrices.push_back(matrix_of(a, vertices.size()));
      }
      if (auto it = doc.find("k"); it != doc.end()) {
        if (!it->is_number_unsigned() || it->get<std::size_t>() != matrices.size()) {
          schema("'k' must equal the number of matrices");
        }
      }
      m.kgraph = validate_kgraph(std::move(vertices), std::move(matrices));
    } else if (k == "action") {
      m.kind      = ModelFile::Kind::action;
      auto points = id_list(field(doc, "points"), "point");
      std::map<std::string, std::size_t> index;
      for (std::size_t i = 0; i < points.size(); ++i) {
        index.emplace(points[i], i);
      }
      auto const& gens = field(doc, "generators");
      if (!gens.is_array()) {
        schema("'generators' must be an array");
      }
      std::vector<Permutation> perms;
      for (auto const& g : gens) {
        auto images = id_list(g, "point");
        Permutation p;
        for (auto const& img : images) {
          auto it = index.find(img);
          if (it == index.end()) {
            throw Error(ErrorCode::bad_reference, "generator refers to unknown point '" + img + "'");
          }
          p.push_back(it->second);
        }
        perms.push_back(std::move(p));
      }
      m.action.emplace(std::move(points), std::move(perms));
    } else {
      schema("unknown kind '" + k + "'");
    }
    return m;
  }

  MonoidElement parse_vector(std::string_view text, std::size_t dim) {
    IntVector   out;
    std::string token;
    auto flush = [&] {
      if (token.empty()) {
        return;
      }
      Integer x;
      if (x.set_str(token, 10) != 0 || x < 0) {
        throw Error(ErrorCode::invalid_input, "'" + token + "' is not a nonnegative integer");
      }
      out.push_back(x);
      token.clear();
    };
    for (char ch : text) {
      if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else {
        token += ch;
      }
    }
    flush();
    if (out.size() != dim) {
      throw Error(ErrorCode::dimension_mismatch,
                  "vector '" + std::string(text) + "' must have " + std::to_string(dim)
                      + " entries");
    }
    return MonoidElement(std::move(out));
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON rendering
  ////////////////////////////////////////////////////////////////////////

  json to_json(Integer const& x) {
    if (x.fits_slong_p()) {
      return json(static_cast<long long>(x.get_si()));
    }
    return json(x.get_str());
  }

  json to_json(MonoidElement const& x) {
    return to_json(x.entries());
  }

  json to_json(IntVector const& v) {
    json a = json::array();
    for (auto const& x : v) {
      a.push_back(to_json(x));
    }
    return a;
  }

  json to_json(Rational const& x) {
    return json(x.get_str());
  }

  json to_json(RationalVector const& v) {
    json a = json::array();
    for (auto const& x : v) {
      a.push_back(to_json(x));
    }
    return a;
  }

  json to_json(MonoidPresentation const& p) {
    json moves = json::array();
    for (auto const& mv : p.moves()) {
      moves.push_back({{"lhs", to_json(mv.lhs)}, {"rhs", to_json(mv.rhs)}});
    }
    return {{"dim", p.dim()}, {"moves", moves}};
  }

  json to_json(EquivCertificate const& c) {
    json steps = json::array();
    for (auto const& s : c.steps) {
      steps.push_back({{"move", s.move_index},
                       {"direction", s.direction == Direction::forward ? "forward" : "backward"}});
    }
    return {{"start", to_json(c.start)}, {"steps", steps}, {"end", to_json(c.end)}};
  }

  json to_json(LinearSeparator const& s) {
    json j;
    switch (s.kind) {
      case LinearSeparator::Kind::rational: j["kind"] = "RATIONAL"; break;
      case LinearSeparator::Kind::modular: j["kind"] = "MODULAR"; break;
      case LinearSeparator::Kind::extended: j["kind"] = "EXTENDED"; break;
    }
    if (s.kind == LinearSeparator::Kind::extended) {
      json coeffs = json::array();
      for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        coeffs.push_back(s.infinite[i] ? json("inf") : to_json(s.coeffs[i]));
      }
      j["coeffs"] = coeffs;
    } else {
      j["coeffs"] = to_json(s.coeffs);
    }
    if (s.kind == LinearSeparator::Kind::modular) {
      j["modulus"] = to_json(s.modulus);
    }
    return j;
  }

  json to_json(BudgetReport const& r) {
    return {{"states_visited", r.states_visited},
            {"state_cap_hit", r.state_cap_hit},
            {"coordinate_cap_hit", r.coordinate_cap_hit},
            {"component_exhausted", r.component_exhausted}};
  }

  json to_json(DecisionOutcome const& d) {
    json j = {{"verdict", verdict_name(d.verdict)}, {"budget", to_json(d.report)}};
    if (d.certificate) {
      j["certificate"] = to_json(*d.certificate);
    }
    if (d.separator) {
      j["separator"] = to_json(*d.separator);
    }
    if (d.remainder) {
      j["remainder"] = to_json(*d.remainder);
    }
    return j;
  }

  json to_json(StateCertificate const& s) {
    json values = json::array();
    for (std::size_t v = 0; v < s.vector.finite_values.size(); ++v) {
      values.push_back(s.vector.is_infinite(v) ? json("inf") : to_json(s.vector.finite_values[v]));
    }
    return {{"values", values},
            {"target", to_json(s.target)},
            {"normalization", to_json(s.normalization)}};
  }

  json to_json(StructuralReport const& s, std::vector<std::string> const& labels) {
    json sccs = json::array();
    for (auto const& scc : s.cyclic_sccs) {
      json block = json::array();
      for (auto v : scc) {
        block.push_back(labels[v]);
      }
      sccs.push_back(block);
    }
    return {{"cofinal", s.cofinal},
            {"condition_L", tristate_name(s.condition_L)},
            {"strongly_connected", s.strongly_connected},
            {"cyclic_sccs", sccs}};
  }

}  // namespace typesemi
