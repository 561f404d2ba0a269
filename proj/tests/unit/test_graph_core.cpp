#include "fixtures.hpp"

#include "rwde/bundled.hpp"
#include "rwde/hat_graph.hpp"
#include "rwde/io.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace rwde;
using namespace rwde::test;

namespace {

std::vector<std::string> ids(const DirectedGraph& g, const std::vector<EdgeIndex>& edges) {
  std::vector<std::string> out;
  for (EdgeIndex e : edges) out.push_back(g.edge(e).id);
  return out;
}

using Ids = std::vector<std::string>;

bool has_violation(const ValidationReport& r, Violation::Kind kind) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("010/3") == Rational(10, 3));
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("validate") {
  CHECK(validate(triangle()).ok());

  SUBCASE("edge leaving the cemetery") {
    DirectedGraph g({"x0", "delta"}, "delta", "x0", {{"e1", "x0", "delta"}, {"e2", "delta", "x0"}});
    const auto r = validate(g);
    CHECK(has_violation(r, Violation::Kind::EdgeFromCemetery));
    CHECK_THROWS_AS(require_valid(g), GraphError);
  }
  SUBCASE("isolated transient vertex") {
    DirectedGraph g({"x0", "y", "delta"}, "delta", "x0", {{"e1", "x0", "delta"}});
    const auto r = validate(g);
    CHECK(has_violation(r, Violation::Kind::NoPathToCemetery));
    CHECK(has_violation(r, Violation::Kind::NotReachableFromBase));
  }
  SUBCASE("loops and duplicate ids") {
    DirectedGraph g({"x0", "delta"}, "delta", "x0",
                    {{"e1", "x0", "delta"}, {"e1", "x0", "delta"}, {"e3", "x0", "x0"}});
    const auto r = validate(g);
    CHECK(has_violation(r, Violation::Kind::DuplicateEdgeId));
    CHECK(has_violation(r, Violation::Kind::LoopEdge));
  }
  CHECK_THROWS_AS(DirectedGraph({"x0", "delta"}, "delta", "x0", {{"e1", "x0", "nowhere"}}), GraphError);
}

TEST_CASE("divergence") {
  const auto g2 = two_edge();
  const std::vector<double> theta{0.4, 0.6};
  CHECK(divergence<double>(g2, theta)[0] == doctest::Approx(1.0));

  const auto g = triangle();
  const std::vector<Rational> z{Rational(2, 3), Rational(1, 3), Rational(2, 3), Rational(1, 3)};
  const auto div = divergence<Rational>(g, z);
  CHECK(div == std::vector<Rational>{1, 0});

  for (const auto& c : enumerate_cycles(g)) {
    const auto chi = c.indicator<Rational>(g.num_edges());
    for (const auto& d : divergence<Rational>(g, chi)) CHECK(d == 0);
  }
  const std::vector<double> short_theta{1.0};
  CHECK_THROWS_AS(divergence<double>(g, short_theta), MissingEdgeValue);
  CHECK_THROWS_AS(edge_vector<double>(g, {{"e1", 1.0}}), MissingEdgeValue);
}

TEST_CASE("enumerate_cycles") {
  const auto g2 = two_edge();
  const auto c2 = enumerate_cycles(g2);
  REQUIRE(c2.size() == 1);
  CHECK(ids(g2, c2[0].sorted_edges()) == Ids{"e1", "e2"});
  CHECK_FALSE(c2[0].directed);

  const auto g = triangle();
  const auto cycles = enumerate_cycles(g);
  REQUIRE(cycles.size() == 3);
  CHECK(ids(g, cycles[0].sorted_edges()) == Ids{"e1", "e2"});
  CHECK(cycles[0].directed);
  CHECK(ids(g, cycles[1].sorted_edges()) == Ids{"e1", "e3", "e4"});
  CHECK(ids(g, cycles[2].sorted_edges()) == Ids{"e2", "e3", "e4"});
  CHECK_FALSE(cycles[1].directed);
  for (const auto& c : cycles) CHECK(c.sign(c.sorted_edges().front()) == 1);

  // A spanning tree viewed as a graph has no cycles.
  DirectedGraph t({"x0", "a", "delta"}, "delta", "x0", {{"e1", "x0", "a"}, {"e4", "a", "delta"}});
  CHECK(enumerate_cycles(t).empty());
}

TEST_CASE("enumerate_paths") {
  const auto g2 = two_edge();
  const auto p2 = enumerate_paths(g2);
  REQUIRE(p2.size() == 2);
  CHECK(p2[0].directed);
  CHECK(p2[1].directed);

  const auto g = triangle();
  const auto paths = enumerate_paths(g);
  REQUIRE(paths.size() == 3);
  std::vector<Ids> sets;
  for (const auto& p : paths) sets.push_back(ids(g, p.sorted_edges()));
  std::sort(sets.begin(), sets.end());
  CHECK(sets == std::vector<Ids>{{"e1", "e4"}, {"e2", "e4"}, {"e3"}});
  for (const auto& p : paths)
    if (p.sign(g.edge_index("e2")) != 0) {
      CHECK(p.sign(g.edge_index("e2")) == -1);
      CHECK(p.sign(g.edge_index("e4")) == 1);
      CHECK_FALSE(p.directed);
    }
  CHECK(enumerate_paths(chain()).size() == 1);
}

TEST_CASE("enumerate_spanning_trees") {
  const auto g = triangle();
  const auto trees = enumerate_spanning_trees(g);
  REQUIRE(trees.size() == 5);
  const auto directed = enumerate_spanning_trees(g, true);
  REQUIRE(directed.size() == 3);
  std::vector<Ids> sets;
  for (const auto& t : directed) {
    CHECK(t.directed);
    sets.push_back(ids(g, t.edges));
  }
  std::sort(sets.begin(), sets.end());
  CHECK(sets == std::vector<Ids>{{"e1", "e4"}, {"e2", "e3"}, {"e3", "e4"}});

  const auto g2 = two_edge();
  CHECK(enumerate_spanning_trees(g2).size() == 2);
  CHECK(enumerate_spanning_trees(g2, true).size() == 2);

  const auto d = two_diamond();
  CHECK(enumerate_spanning_trees(d).size() == 16);
  CHECK(enumerate_spanning_trees(d, true).size() == 4);
  CHECK(enumerate_cycles(d).size() == 2);
  CHECK(enumerate_paths(d).size() == 4);

  CHECK_THROWS_AS(make_spanning_tree(g, {g.edge_index("e1"), g.edge_index("e2")}), DomainError);
}

TEST_CASE("hat graph trees") {
  const auto g = triangle();
  const auto hat = hat_graph(g);
  const auto directed = enumerate_spanning_trees(hat.graph, true);
  REQUIRE(directed.size() == 3);
  for (const auto& t : directed) {
    for (EdgeIndex e : hat.vertex_edge) CHECK(t.contains(e));
    CHECK(hat.restrict_tree(g, t).directed);
  }
  for (const auto& t : enumerate_spanning_trees(g, true)) CHECK(hat.lift_tree(t).directed);
}

TEST_CASE("fundamental_cycle and tree_path") {
  const auto g2 = two_edge();
  const auto c = fundamental_cycle(g2, tree_of(g2, {"e1"}), g2.edge_index("e2"));
  CHECK(c.sign(g2.edge_index("e2")) == 1);
  CHECK(c.sign(g2.edge_index("e1")) == -1);

  const auto g = triangle();
  const auto t34 = tree_of(g, {"e3", "e4"});
  const auto c1 = fundamental_cycle(g, t34, g.edge_index("e1"));
  CHECK(ids(g, c1.sorted_edges()) == Ids{"e1", "e3", "e4"});
  CHECK(c1.sign(g.edge_index("e1")) == 1);
  CHECK(c1.sign(g.edge_index("e4")) == 1);
  CHECK(c1.sign(g.edge_index("e3")) == -1);
  const auto c2 = fundamental_cycle(g, t34, g.edge_index("e2"));
  CHECK(c2.sign(g.edge_index("e2")) == 1);
  CHECK(c2.sign(g.edge_index("e3")) == 1);
  CHECK(c2.sign(g.edge_index("e4")) == -1);
  CHECK_THROWS_AS(fundamental_cycle(g, t34, g.edge_index("e3")), DomainError);

  CHECK(ids(g, tree_path(g, t34).sorted_edges()) == Ids{"e3"});
  const auto p14 = tree_path(g, tree_of(g, {"e1", "e4"}));
  CHECK(ids(g, p14.sorted_edges()) == Ids{"e1", "e4"});
  CHECK(p14.sign(g.edge_index("e1")) == 1);
  CHECK(p14.sign(g.edge_index("e4")) == 1);
  CHECK(ids(g, tree_path(g, tree_of(g, {"e2", "e3"})).sorted_edges()) == Ids{"e3"});
}

TEST_CASE("genus") {
  const auto g = triangle();
  CHECK(genus(g, mask_of(g, {"e1", "e2"})) == 1);
  CHECK(genus(g, g.all_edges_mask()) == 2);
  for (const auto& t : enumerate_spanning_trees(g)) CHECK(genus(g, t.mask()) == 0);
  CHECK(genus(two_edge(), two_edge().all_edges_mask()) == 1);
}

TEST_CASE("hat_graph") {
  const auto g2 = two_edge(Rational(2), Rational(5, 3));
  const auto hat2 = hat_graph(g2);
  CHECK(hat2.graph.num_vertices() == 3);
  CHECK(hat2.graph.num_edges() == 3);
  CHECK(hat2.graph.edge(hat2.vertex_edge[0]).alpha == -(Rational(2) + Rational(5, 3)));
  CHECK(hat2.graph.vertex_name(hat2.graph.base()) == "x0-");

  const auto g = triangle();
  const auto hat = hat_graph(g);
  CHECK(hat.graph.num_vertices() == 5);
  CHECK(hat.graph.num_edges() == 6);
  CHECK(hat.graph.edge(hat.vertex_edge[0]).alpha == -2);
  CHECK(hat.graph.edge(hat.vertex_edge[1]).alpha == -2);
  CHECK(validate(hat.graph).ok());
  for (std::size_t e = 0; e < g.num_edges(); ++e) CHECK(hat.graph.edge(hat.lifted[e]).id == g.edge(e).id);

  const std::vector<double> alpha{1, 2, 3, 4};
  const auto lifted = hat.lift_weights<double>(g, alpha);
  CHECK(lifted[hat.vertex_edge[0]] == -4.0);
  CHECK(lifted[hat.vertex_edge[1]] == -6.0);
}

TEST_CASE("solve_tree_coordinates") {
  const auto g = triangle();
  const auto t = tree_of(g, {"e3", "e4"});
  const std::vector<Rational> u{Rational(1, 2), Rational(1, 4)};
  const auto z = solve_tree_coordinates<Rational>(g, t, u);
  CHECK(z == std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(3, 4), Rational(1, 4)});
  const std::vector<Rational> far{10, Rational(19, 2)};
  const auto z2 = solve_tree_coordinates<Rational>(g, t, far);
  CHECK(z2[2] == Rational(1, 2));
  CHECK(z2[3] == Rational(1, 2));

  const auto g2 = two_edge();
  const std::vector<double> tt{0.3};
  const auto z3 = solve_tree_coordinates<double>(g2, tree_of(g2, {"e1"}), tt);
  CHECK(z3[0] == doctest::Approx(0.7));

  const TreeChart<Rational> chart(g, t);
  CHECK(chart.dimension() == 2);
  CHECK(chart.flow(u) == z);
}

TEST_CASE("is_arrangement_basis matches cotrees") {
  for (const char* name : {"two-edge", "triangle", "chain"}) {
    const auto g = bundled(name);
    const std::size_t d = g.num_edges() - g.transient_vertices().size();
    for (EdgeMask s = 0; s < (EdgeMask{1} << g.num_edges()); ++s) {
      if (static_cast<std::size_t>(std::popcount(s)) != d) continue;
      CHECK(is_arrangement_basis(g, s) == is_spanning_tree_oracle(g, g.all_edges_mask() & ~s));
    }
  }
}

TEST_CASE("graph files") {
  SUBCASE("malformed JSON reports a line") {
    const std::string text = "{\n  \"vertices\": [\"x0\", \"delta\"],\n  \"cemetery\": \"delta\"\n  \"base\": \"x0\"\n}";
    try {
      parse_graph(text);
      FAIL("no exception");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
    }
  }
  SUBCASE("missing field names the field and line") {
    const std::string text =
        "{\n \"vertices\": [\"x0\", \"delta\"],\n \"cemetery\": \"delta\",\n \"base\": \"x0\",\n"
        " \"edges\": [\n  {\"id\": \"e1\", \"tail\": \"x0\", \"head\": \"delta\"},\n  {\"id\": \"e2\", \"tail\": \"x0\"}\n ]\n}";
    try {
      parse_graph(text);
      FAIL("no exception");
    } catch (const ParseError& e) {
      CHECK(e.field() == "edges[1].head");
      CHECK(e.line() == 7);
    }
  }
  SUBCASE("bad alpha") {
    const std::string text = R"({"vertices": ["x0", "delta"], "cemetery": "delta", "base": "x0",
      "edges": [{"id": "e1", "tail": "x0", "head": "delta", "alpha": "-1"}]})";
    CHECK_THROWS_AS(parse_graph(text), ParseError);
  }
  SUBCASE("unknown vertex and unknown field") {
    CHECK_THROWS_AS(parse_graph(R"({"vertices": ["x0", "delta"], "cemetery": "delta", "base": "y", "edges": []})"),
                    ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"vertices": ["x0", "delta"], "cemetery": "delta", "base": "x0", "edges": [],
                                    "colour": 1})"),
                    ParseError);
  }
  SUBCASE("round trip") {
    const auto g = two_diamond();
    const auto again = parse_graph(graph_to_json(g).dump());
    REQUIRE(again.num_edges() == g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      CHECK(again.edge(e).id == g.edge(e).id);
      CHECK(again.edge(e).alpha == g.edge(e).alpha);
    }
  }
  CHECK(parse_assignment("e2=3/4") == std::pair<std::string, Rational>{"e2", Rational(3, 4)});
  CHECK_THROWS_AS(parse_assignment("e2"), ParseError);
  CHECK(parse_edge_map(R"({"e1": "1/3", "e2": 0.5})").at("e2") == Rational(1, 2));
}

TEST_CASE("bundled graphs match data files") {
  for (const auto& name : bundled_graph_names()) {
    std::ifstream in(std::string(RWDE_DATA_DIR) + "/graphs/" + name + ".json");
    REQUIRE(in);
    std::ostringstream text;
    text << in.rdbuf();
    CHECK(std::string(*bundled_graph_json(name)) == text.str());
    CHECK(validate(bundled_graph(name).graph).ok());
  }
  CHECK_THROWS_AS(bundled_graph("nope"), GraphError);
}
