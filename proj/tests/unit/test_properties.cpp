// Randomized invariants on small valid graphs (|E| <= 8) with random rational data.

#include "fixtures.hpp"

#include "rwde/connection.hpp"
#include "rwde/environment.hpp"
#include "rwde/hat_graph.hpp"
#include "rwde/integrals.hpp"

#include <doctest.h>

using namespace rwde;
using namespace rwde::test;

namespace {

const std::vector<DirectedGraph>& graphs() {
  static const auto gs = [] {
    auto v = random_valid_graphs(30, 7);
    v.push_back(two_edge());
    v.push_back(triangle());
    v.push_back(chain());
    return v;
  }();
  return gs;
}

std::vector<Rational> unit_at_base(const DirectedGraph& g) {
  std::vector<Rational> d(g.transient_vertices().size(), Rational(0));
  d[*g.transient_index(g.base())] = 1;
  return d;
}

}  // namespace

TEST_CASE("random graphs are valid and small") {
  for (const auto& g : graphs()) {
    CHECK(validate(g).ok());
    CHECK(g.num_edges() <= 8);
  }
}

TEST_CASE("enumerations agree with brute force") {
  for (const auto& g : graphs()) {
    const auto trees = enumerate_spanning_trees(g);
    std::vector<EdgeMask> masks;
    for (const auto& t : trees) {
      masks.push_back(t.mask());
      CHECK(t.directed == is_directed_oracle(g, t.mask()));
    }
    std::sort(masks.begin(), masks.end());
    CHECK(masks == spanning_trees_oracle(g, false));
    CHECK(enumerate_spanning_trees(g, true).size() == spanning_trees_oracle(g, true).size());
    CHECK(enumerate_cycles(g).size() == count_cycles_oracle(g));
    CHECK(enumerate_paths(g).size() == count_paths_oracle(g));
  }
}

TEST_CASE("genus is the rank of the cycles inside the subset") {
  SplitMix64 rng(3);
  for (const auto& g : graphs()) {
    const auto cycles = enumerate_cycles(g);
    for (int k = 0; k < 10; ++k) {
      const EdgeMask s = rng() & g.all_edges_mask();
      std::vector<std::vector<Rational>> rows;
      for (const auto& c : cycles)
        if ((c.mask() & ~s) == 0) rows.push_back(c.indicator<Rational>(g.num_edges()));
      DenseMatrix<Rational> m(rows.size(), g.num_edges());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t e = 0; e < g.num_edges(); ++e) m(r, e) = rows[r][e];
      CHECK(genus(g, s) == rank(m));
    }
  }
}

TEST_CASE("arrangement bases are tree complements") {
  for (const auto& g : graphs()) {
    const std::size_t d = g.num_edges() - g.transient_vertices().size();
    for (EdgeMask s = 0; s < (EdgeMask{1} << g.num_edges()); ++s)
      if (static_cast<std::size_t>(std::popcount(s)) == d)
        CHECK(is_arrangement_basis(g, s) == is_spanning_tree_oracle(g, g.all_edges_mask() & ~s));
  }
}

TEST_CASE("tree coordinates, cycles and paths respect the divergence") {
  SplitMix64 rng(5);
  for (const auto& g : graphs()) {
    const auto target = unit_at_base(g);
    const std::vector<Rational> zero(target.size(), Rational(0));
    for (const auto& t : enumerate_spanning_trees(g)) {
      const auto co = cotree(g, t);
      std::vector<Rational> u;
      for (std::size_t i = 0; i < co.size(); ++i) u.push_back(random_positive_rational(rng) - 3);
      const auto z = solve_tree_coordinates<Rational>(g, t, u);
      CHECK(divergence<Rational>(g, z) == target);
      for (std::size_t i = 0; i < co.size(); ++i) CHECK(z[co[i]] == u[i]);

      const auto path = tree_path(g, t);
      CHECK((path.mask() & ~t.mask()) == 0);
      CHECK(divergence<Rational>(g, path.indicator<Rational>(g.num_edges())) == target);
      for (EdgeIndex e0 : co) {
        const auto c = fundamental_cycle(g, t, e0);
        CHECK(c.sign(e0) == 1);
        CHECK((c.mask() & ~(t.mask() | edge_bit(e0))) == 0);
        CHECK(divergence<Rational>(g, c.indicator<Rational>(g.num_edges())) == zero);
      }

      std::vector<Rational> lambda;
      for (std::size_t e = 0; e < g.num_edges(); ++e) lambda.push_back(random_positive_rational(rng) - 2);
      CHECK(pairing_identity_residual<Rational>(g, t, z, lambda) == 0);
    }
  }
}

TEST_CASE("edge occupation is a unit flow and the matrix-tree identity holds") {
  SplitMix64 rng(9);
  for (const auto& g : graphs()) {
    const auto directed = spanning_trees_oracle(g, true);
    for (int k = 0; k < 5; ++k) {
      const auto env = random_rational_environment(g, rng);
      CHECK(divergence<Rational>(g, edge_occupation(g, env)) == unit_at_base(g));
      Rational sum(0);
      for (EdgeMask m : directed) {
        Rational prod(1);
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
          if (m & edge_bit(e)) prod *= env.p[e];
        sum += prod;
      }
      CHECK(survival_determinant(g, env) == sum);
      Rational total(0);
      for (const auto& t : enumerate_spanning_trees(g, true)) total += tree_probability(g, env, t);
      CHECK(total == 1);
    }
  }
}

TEST_CASE("hat graphs") {
  for (const auto& g : graphs()) {
    const auto hat = hat_graph(g);
    CHECK(validate(hat.graph).ok());
    CHECK(hat.graph.num_edges() == g.num_edges() + g.transient_vertices().size());
    CHECK(hat.graph.num_vertices() == 2 * g.transient_vertices().size() + 1);
    CHECK(enumerate_spanning_trees(hat.graph, true).size() == enumerate_spanning_trees(g, true).size());
    for (const auto& t : enumerate_spanning_trees(g)) {
      const auto lifted = hat.lift_tree(t);
      CHECK(lifted.directed == t.directed);
      CHECK(hat.restrict_tree(g, lifted).mask() == t.mask());
    }
    const auto betas = g.betas();
    const auto transient = g.transient_vertices();
    for (std::size_t i = 0; i < transient.size(); ++i)
      CHECK(hat.graph.edge(hat.vertex_edge[i]).alpha == -betas[transient[i]]);
  }
}

TEST_CASE("commutation relations and flatness with random weights") {
  SplitMix64 rng(21);
  for (const auto& g : graphs()) {
    const auto alpha = random_alpha(g, rng);
    const auto report = check_commutation(g, alpha);
    CHECK_MESSAGE(report.pass(), "commutation failures: ", report.failures());
    const auto conn = build_connection(g, alpha);
    std::vector<std::vector<Rational>> samples;
    for (int k = 0; k < 5; ++k) samples.push_back(random_lambda_off_locus(conn, rng));
    CHECK(check_flatness(conn, samples) == 0);
  }
}
