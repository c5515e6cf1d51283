#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "typesemi/graph.hpp"
#include "typesemi/groupoid.hpp"
#include "typesemi/monoid.hpp"
#include "typesemi/tarski.hpp"

namespace typesemi {

  struct ModelFile {
    enum class Kind { graph, kgraph, action };

    Kind                             kind = Kind::graph;
    std::string                      name;
    std::string                      description;
    std::optional<DirectedGraph>     graph;
    std::optional<KGraphModel>       kgraph;  // also set for graph models
    std::optional<FiniteGroupAction> action;

    // Vertex or point ids in declaration order.
    std::vector<std::string> labels() const;
    MonoidPresentation       presentation() const;
  };

  char const* kind_name(ModelFile::Kind k) noexcept;

  // Schema violations throw INVALID_INPUT; structural problems surface as
  // the validators' own codes (ROW_ZERO, BAD_REFERENCE, ...).
  ModelFile parse_model(std::string_view text);

  // Comma- and/or whitespace-separated nonnegative integers.
  MonoidElement parse_vector(std::string_view text, std::size_t dim);

  // Entries fitting in 64 bits are JSON numbers, larger ones strings.
  nlohmann::json to_json(Integer const& x);
  nlohmann::json to_json(MonoidElement const& x);
  nlohmann::json to_json(Rational const& x);
  nlohmann::json to_json(RationalVector const& v);
  nlohmann::json to_json(IntVector const& v);
  nlohmann::json to_json(MonoidPresentation const& p);
  nlohmann::json to_json(EquivCertificate const& c);
  nlohmann::json to_json(LinearSeparator const& s);
  nlohmann::json to_json(BudgetReport const& r);
  nlohmann::json to_json(DecisionOutcome const& d);
  nlohmann::json to_json(StateCertificate const& s);
  nlohmann::json to_json(StructuralReport const& s, std::vector<std::string> const& labels);

}  // namespace typesemi
