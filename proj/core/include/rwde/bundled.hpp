#pragma once

// Example graphs shipped with the library, also available as files under data/graphs.

#include "rwde/io.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rwde {

/// two-edge, triangle, chain, two-diamond.
std::vector<std::string> bundled_graph_names();
std::optional<std::string_view> bundled_graph_json(std::string_view name);
/// Throws GraphError for an unknown name.
GraphDocument bundled_graph(std::string_view name);

}  // namespace rwde
