#include "rwde/bundled.hpp"

#include <array>
#include <utility>

namespace rwde {
namespace {

// Kept in sync with data/graphs/*.json by a unit test.
constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kGraphs{{
    {"two-edge", R"json({
  "name": "two-edge",
  "description": "Two parallel edges from the base to the cemetery.",
  "vertices": ["x0", "delta"],
  "cemetery": "delta",
  "base": "x0",
  "edges": [
    {"id": "e1", "tail": "x0", "head": "delta", "alpha": "1", "lambda": "1"},
    {"id": "e2", "tail": "x0", "head": "delta", "alpha": "1", "lambda": "0"}
  ]
}
)json"},
    {"triangle", R"json({
  "name": "triangle",
  "description": "x0 and a joined both ways, each with an edge to the cemetery.",
  "vertices": ["x0", "a", "delta"],
  "cemetery": "delta",
  "base": "x0",
  "edges": [
    {"id": "e1", "tail": "x0", "head": "a", "alpha": "1", "lambda": "1"},
    {"id": "e2", "tail": "a", "head": "x0", "alpha": "1", "lambda": "2"},
    {"id": "e3", "tail": "x0", "head": "delta", "alpha": "1", "lambda": "3"},
    {"id": "e4", "tail": "a", "head": "delta", "alpha": "1", "lambda": "4"}
  ]
}
)json"},
    {"chain", R"json({
  "name": "chain",
  "description": "x0 -> a -> cemetery.",
  "vertices": ["x0", "a", "delta"],
  "cemetery": "delta",
  "base": "x0",
  "edges": [
    {"id": "e1", "tail": "x0", "head": "a", "alpha": "1", "lambda": "1"},
    {"id": "e2", "tail": "a", "head": "delta", "alpha": "1", "lambda": "1"}
  ]
}
)json"},
    {"two-diamond", R"json({
  "name": "two-diamond",
  "description": "Two diamonds in series; their cycles share no vertex.",
  "vertices": ["x0", "a", "b", "c", "d", "f", "g", "delta"],
  "cemetery": "delta",
  "base": "x0",
  "edges": [
    {"id": "e1", "tail": "x0", "head": "a", "alpha": "1", "lambda": "1/2"},
    {"id": "e2", "tail": "x0", "head": "b", "alpha": "1", "lambda": "1"},
    {"id": "e3", "tail": "a", "head": "c", "alpha": "1", "lambda": "3/2"},
    {"id": "e4", "tail": "b", "head": "c", "alpha": "1", "lambda": "2"},
    {"id": "e5", "tail": "c", "head": "d", "alpha": "1", "lambda": "5/2"},
    {"id": "e6", "tail": "d", "head": "f", "alpha": "1", "lambda": "3"},
    {"id": "e7", "tail": "d", "head": "g", "alpha": "1", "lambda": "7/2"},
    {"id": "e8", "tail": "f", "head": "delta", "alpha": "1", "lambda": "4"},
    {"id": "e9", "tail": "g", "head": "delta", "alpha": "1", "lambda": "9/2"}
  ]
}
)json"},
}};

}  // namespace

std::vector<std::string> bundled_graph_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : kGraphs) names.emplace_back(name);
  return names;
}

std::optional<std::string_view> bundled_graph_json(std::string_view name) {
  for (const auto& [n, text] : kGraphs)
    if (n == name) return text;
  return std::nullopt;
}

GraphDocument bundled_graph(std::string_view name) {
  auto text = bundled_graph_json(name);
  if (!text) throw GraphError("no bundled graph named '" + std::string(name) + "'");
  return parse_graph_document(*text);
}

}  // namespace rwde
