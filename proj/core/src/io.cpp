#include "rwde/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

namespace rwde {
namespace {

/// Maps JSON pointers ("/edges/2/tail") to the line where each value starts.
/// Runs on text that nlohmann has already accepted, so it can be lenient.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) : text_(text) {
    skip_ws();
    if (pos_ < text_.size()) value("");
  }

  std::size_t line(const std::string& pointer) const {
    auto it = lines_.find(pointer);
    if (it != lines_.end()) return it->second;
    // Fall back to the nearest recorded ancestor.
    std::string p = pointer;
    while (!p.empty()) {
      p.erase(p.rfind('/'));
      if (auto a = lines_.find(p); a != lines_.end()) return a->second;
    }
    return 1;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void value(const std::string& pointer) {
    lines_.emplace(pointer, line_);
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '{' || c == '[') {
      const bool object = c == '{';
      ++pos_;
      for (std::size_t index = 0;; ++index) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == (object ? '}' : ']')) break;
        std::string child = pointer + "/";
        if (object) {
          child += string_token();
          skip_ws();
          ++pos_;  // ':'
          skip_ws();
        } else {
          child += std::to_string(index);
        }
        value(child);
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && !std::strchr(",]} \t\r\n", text_[pos_])) ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::map<std::string, std::size_t> lines_;
};

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

/// "/edges/2/tail" -> "edges[2].tail"
std::string field_name(const std::string& pointer) {
  std::string out;
  std::size_t start = 1;
  while (start <= pointer.size()) {
    std::size_t end = pointer.find('/', start);
    if (end == std::string::npos) end = pointer.size();
    const std::string part = pointer.substr(start, end - start);
    const bool index = !part.empty() && std::all_of(part.begin(), part.end(), ::isdigit);
    out += index ? "[" + part + "]" : (out.empty() ? part : "." + part);
    start = end + 1;
  }
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t line = line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(line) + ": malformed JSON: " + e.what(), line);
  }
}

class Reader {
 public:
  Reader(std::string_view text) : index_(text) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    const std::size_t line = index_.line(pointer);
    const std::string field = field_name(pointer);
    throw ParseError("line " + std::to_string(line) + ", field '" + field + "': " + message, line, field);
  }

  const Json& require(const Json& object, const std::string& pointer, const char* key) const {
    if (!object.is_object()) fail(pointer, "expected an object");
    auto it = object.find(key);
    if (it == object.end()) fail(pointer + "/" + key, std::string("missing required field '") + key + "'");
    return *it;
  }

  std::string string(const Json& v, const std::string& pointer) const {
    if (!v.is_string()) fail(pointer, "expected a string");
    return v.get<std::string>();
  }

  Rational rational(const Json& v, const std::string& pointer) const {
    std::string text;
    if (v.is_string()) text = v.get<std::string>();
    else if (v.is_number()) text = v.dump();
    else fail(pointer, "expected a decimal or rational string");
    try {
      return parse_rational(text);
    } catch (const std::invalid_argument& e) {
      fail(pointer, e.what());
    }
  }

 private:
  LineIndex index_;
};

}  // namespace

GraphDocument parse_graph_document(std::string_view text) {
  const Json doc = parse_json(text);
  const Reader r(text);
  if (!doc.is_object()) r.fail("", "top level must be an object");

  const Json& vertices = r.require(doc, "", "vertices");
  if (!vertices.is_array() || vertices.empty()) r.fail("/vertices", "expected a non-empty list of vertex names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    names.push_back(r.string(vertices[i], "/vertices/" + std::to_string(i)));
    if (std::count(names.begin(), names.end(), names.back()) > 1)
      r.fail("/vertices/" + std::to_string(i), "duplicate vertex '" + names.back() + "'");
  }
  auto vertex = [&](const Json& v, const std::string& pointer) {
    std::string name = r.string(v, pointer);
    if (std::find(names.begin(), names.end(), name) == names.end()) r.fail(pointer, "unknown vertex '" + name + "'");
    return name;
  };
  const std::string cemetery = vertex(r.require(doc, "", "cemetery"), "/cemetery");
  const std::string base = vertex(r.require(doc, "", "base"), "/base");

  const Json& edges = r.require(doc, "", "edges");
  if (!edges.is_array()) r.fail("/edges", "expected a list of edges");
  if (edges.size() > kMaxEdges) r.fail("/edges", "at most " + std::to_string(kMaxEdges) + " edges are supported");
  std::vector<EdgeSpec> specs;
  std::map<std::string, Rational> lambda;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string at = "/edges/" + std::to_string(i);
    const Json& e = edges[i];
    if (!e.is_object()) r.fail(at, "expected an edge object");
    EdgeSpec spec;
    spec.id = r.string(r.require(e, at, "id"), at + "/id");
    spec.tail = vertex(r.require(e, at, "tail"), at + "/tail");
    spec.head = vertex(r.require(e, at, "head"), at + "/head");
    if (auto a = e.find("alpha"); a != e.end()) {
      spec.alpha = r.rational(*a, at + "/alpha");
      if (sgn(spec.alpha) <= 0) r.fail(at + "/alpha", "alpha must be positive");
    }
    if (auto l = e.find("lambda"); l != e.end()) lambda[spec.id] = r.rational(*l, at + "/lambda");
    for (const auto& [key, value] : e.items())
      if (key != "id" && key != "tail" && key != "head" && key != "alpha" && key != "lambda")
        r.fail(at + "/" + key, "unknown edge field '" + key + "'");
    specs.push_back(std::move(spec));
  }
  for (const auto& [key, value] : doc.items())
    if (key != "vertices" && key != "cemetery" && key != "base" && key != "edges" && key != "name" &&
        key != "description")
      r.fail("/" + key, "unknown field '" + key + "'");

  return {DirectedGraph(std::move(names), cemetery, base, specs), std::move(lambda)};
}

DirectedGraph parse_graph(std::string_view text) { return parse_graph_document(text).graph; }

GraphDocument load_graph_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read graph file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_graph_document(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.field());
  }
}

Json graph_to_json(const DirectedGraph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& name : g.vertex_names()) j["vertices"].push_back(name);
  j["cemetery"] = g.vertex_name(g.cemetery());
  j["base"] = g.vertex_name(g.base());
  j["edges"] = Json::array();
  for (const auto& e : g.edges())
    j["edges"].push_back(
        {{"id", e.id}, {"tail", g.vertex_name(e.tail)}, {"head", g.vertex_name(e.head)}, {"alpha", to_string(e.alpha)}});
  return j;
}

std::map<std::string, Rational> parse_edge_map(std::string_view json_text) {
  const Json doc = parse_json(json_text);
  const Reader r(json_text);
  if (!doc.is_object()) r.fail("", "expected an object {edge id: value}");
  std::map<std::string, Rational> out;
  for (const auto& [key, value] : doc.items()) out[key] = r.rational(value, "/" + key);
  return out;
}

std::pair<std::string, Rational> parse_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ParseError("expected id=value, got '" + std::string(text) + "'", 0, std::string(text));
  const std::string id(text.substr(0, eq));
  try {
    return {id, parse_rational(text.substr(eq + 1))};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()), 0, id);
  }
}

Json to_json(const McEstimate& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"n_samples", e.n_samples}, {"seed", e.seed}};
}

Json to_json(const IntegralEstimate& e) {
  return {{"value", e.value}, {"error", e.error}, {"method", to_string(e.method)}, {"n_evals", e.n_evals}};
}

Json to_json(const VerificationReport& r) {
  return {{"lhs", {{"value", r.lhs.value}, {"error", r.lhs.error}}},
          {"rhs", {{"value", r.rhs.value}, {"error", r.rhs.error}}},
          {"diff", r.diff},
          {"threshold", r.threshold},
          {"lhs_method", r.lhs_method},
          {"pass", r.pass}};
}

namespace {

Json edge_ids(const DirectedGraph& g, const std::vector<EdgeIndex>& edges) {
  Json ids = Json::array();
  for (EdgeIndex e : edges) ids.push_back(g.edge(e).id);
  return ids;
}

}  // namespace

Json to_json(const DirectedGraph& g, const SpanningTree& tree) {
  return {{"edges", edge_ids(g, tree.edges)}, {"directed", tree.directed}};
}

Json to_json(const DirectedGraph& g, const SignedEdgeSet& set) {
  Json signs = Json::object();
  for (const auto& step : set.steps) signs[g.edge(step.edge).id] = step.sign;
  return {{"kind", set.kind == SignedEdgeSet::Kind::Cycle ? "cycle" : "path"},
          {"edges", edge_ids(g, set.sorted_edges())},
          {"signs", signs},
          {"directed", set.directed}};
}

Json to_json(const CommutationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"family", c.family}, {"instance", c.description}, {"pass", c.holds}});
  return {{"n_checks", report.checks.size()}, {"n_failures", report.failures()}, {"checks", checks},
          {"pass", report.pass()}};
}

Json to_json(const DirectedGraph& g, const TreeBasis& basis, const TreeMatrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) entries.push_back(Json::array({r, c, to_string(v)}));
  Json trees = Json::array();
  for (const auto& t : basis.trees) trees.push_back(edge_ids(g, t.edges));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}, {"basis", trees}};
}

}  // namespace rwde
