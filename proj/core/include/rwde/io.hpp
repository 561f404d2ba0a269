#pragma once

// Graph files, edge maps and JSON serialization of results.
//
// Graph file:
//   {"vertices": ["x0", "a", "delta"], "cemetery": "delta", "base": "x0",
//    "edges": [{"id": "e1", "tail": "x0", "head": "a", "alpha": "1/2"}, ...]}
// alpha is a decimal or "p/q" string (or a JSON number) and defaults to 1.
// An edge may also carry "lambda", a default point for the Laplace variable.

#include "rwde/combinatorics.hpp"
#include "rwde/connection.hpp"
#include "rwde/graph.hpp"
#include "rwde/integrals.hpp"
#include "rwde/stats.hpp"

#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

namespace rwde {

using Json = nlohmann::ordered_json;

struct GraphDocument {
  DirectedGraph graph;
  /// Per-edge "lambda" entries, when present.
  std::map<std::string, Rational> lambda;
};

/// Throws ParseError carrying the 1-based line and the offending field
/// (for instance "edges[2].tail"). Does not run validate().
GraphDocument parse_graph_document(std::string_view text);
DirectedGraph parse_graph(std::string_view text);
/// Reads a file; an unreadable file is a ParseError at line 0.
GraphDocument load_graph_document(const std::filesystem::path& path);

Json graph_to_json(const DirectedGraph& g);

/// {edge id -> decimal or rational string} given as JSON text.
std::map<std::string, Rational> parse_edge_map(std::string_view json_text);
/// One "id=value" assignment, as used on the command line.
std::pair<std::string, Rational> parse_assignment(std::string_view text);

Json to_json(const McEstimate& estimate);
Json to_json(const IntegralEstimate& estimate);
Json to_json(const VerificationReport& report);
Json to_json(const DirectedGraph& g, const SpanningTree& tree);
Json to_json(const DirectedGraph& g, const SignedEdgeSet& set);
Json to_json(const CommutationReport& report);
/// Sparse triplets {rows, cols, entries: [[r, c, "p/q"], ...], basis: [[edge ids], ...]}.
Json to_json(const DirectedGraph& g, const TreeBasis& basis, const TreeMatrix& m);

}  // namespace rwde
