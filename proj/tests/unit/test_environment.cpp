#include "fixtures.hpp"

#include "rwde/environment.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace rwde;
using namespace rwde::test;

namespace {

Environment half_environment(const DirectedGraph& g) { return {std::vector<double>(g.num_edges(), 0.5)}; }

RationalEnvironment half_rational(const DirectedGraph& g) {
  return {std::vector<Rational>(g.num_edges(), Rational(1, 2))};
}

}  // namespace

TEST_CASE("sample_environment") {
  const auto g = triangle();
  SUBCASE("single out-edge") {
    const auto c = chain();
    const auto env = sample_environment(c, DirichletWeights::from_graph(c), 3);
    CHECK(env.p == std::vector<double>{1.0, 1.0});
  }
  SUBCASE("Dirichlet means") {
    for (const auto& [a1, mean] : {std::pair{1.0, 0.5}, std::pair{2.0, 2.0 / 3.0}}) {
      const auto w = DirichletWeights::from_alpha(g, {a1, 1.0, 1.0, 1.0});
      RunningStats s;
      for (std::size_t i = 0; i < 100'000; ++i) {
        SplitMix64 rng = substream(17, i);
        const auto env = sample_environment(g, w, rng);
        check_environment(g, env);
        s.add(env.p[0]);
      }
      CHECK(std::abs(s.mean() - mean) <= 3 * s.std_error());
    }
  }
  CHECK_THROWS_AS(DirichletWeights::from_alpha(g, {1.0, 0.0, 1.0, 1.0}), DomainError);
  CHECK(mean_environment(g, DirichletWeights::from_alpha(g, {1, 3, 1, 1})).p[1] == doctest::Approx(0.75));
}

TEST_CASE("check_environment") {
  const auto g = triangle();
  RationalEnvironment bad{{Rational(1, 2), Rational(1, 2), Rational(1, 3), Rational(1, 2)}};
  CHECK_THROWS_AS(check_environment(g, bad), DomainError);
  CHECK_NOTHROW(check_environment(g, half_rational(g)));
}

TEST_CASE("Green function and occupation") {
  const auto g2 = two_edge();
  const Environment e2{{0.3, 0.7}};
  const auto G2 = green_function(g2, e2);
  CHECK(G2(0, 0) == doctest::Approx(1.0));
  const auto z2 = edge_occupation(g2, e2);
  CHECK(z2[0] == doctest::Approx(0.3));
  CHECK(z2[1] == doctest::Approx(0.7));

  const auto g = triangle();
  const auto G = green_function(g, half_rational(g));
  CHECK(G(0, 0) == Rational(4, 3));
  CHECK(G(0, 1) == Rational(2, 3));
  CHECK(edge_occupation(g, half_rational(g)) ==
        std::vector<Rational>{Rational(2, 3), Rational(1, 3), Rational(2, 3), Rational(1, 3)});
  CHECK(survival_determinant(g, half_rational(g)) == Rational(3, 4));

  // No U -> U edges: G is the identity and the determinant is 1.
  DirectedGraph star({"x0", "a", "delta"}, "delta", "x0",
                     {{"e1", "x0", "delta"}, {"e2", "a", "delta"}, {"e3", "x0", "delta"}});
  RationalEnvironment es{{Rational(1, 3), 1, Rational(2, 3)}};
  const auto Gs = green_function(star, es);
  CHECK(Gs(0, 0) == 1);
  CHECK(Gs(0, 1) == 0);
  CHECK(Gs(1, 1) == 1);
  CHECK(survival_determinant(star, es) == 1);
}

TEST_CASE("tree_probability") {
  const auto g = triangle();
  for (const auto& t : enumerate_spanning_trees(g, true)) CHECK(tree_probability(g, half_rational(g), t) == Rational(1, 3));
  const auto c = chain();
  CHECK(tree_probability(c, RationalEnvironment{{1, 1}}, enumerate_spanning_trees(c, true)[0]) == 1);
  const auto g2 = two_edge();
  const RationalEnvironment e2{{Rational(1, 5), Rational(4, 5)}};
  CHECK(tree_probability(g2, e2, tree_of(g2, {"e1"})) == Rational(1, 5));
  CHECK(tree_probability(g2, e2, tree_of(g2, {"e2"})) == Rational(4, 5));
  // Non-directed trees are outside the domain.
  CHECK_THROWS_AS(tree_probability(g, half_rational(g), tree_of(g, {"e1", "e3"})), DomainError);
}

TEST_CASE("matrix-tree identity on rational environments") {
  std::vector<DirectedGraph> graphs{two_edge(), triangle(), chain(), two_diamond()};
  for (auto& g : random_valid_graphs(5, 99)) graphs.push_back(g);
  SplitMix64 rng(2024);
  for (const auto& g : graphs) {
    const auto directed = spanning_trees_oracle(g, true);
    for (int k = 0; k < 20; ++k) {
      const auto env = random_rational_environment(g, rng);
      Rational sum(0);
      for (EdgeMask m : directed) {
        Rational prod(1);
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
          if (m & edge_bit(e)) prod *= env.p[e];
        sum += prod;
      }
      CHECK(survival_determinant(g, env) == sum);
    }
  }
}

TEST_CASE("simulate_chain") {
  const auto c = chain();
  const auto traj = simulate_chain(c, Environment{{1.0, 1.0}}, 5);
  CHECK(traj.edges == std::vector<EdgeIndex>{0, 1});
  CHECK(traj.hitting_time() == 2);

  const auto g = triangle();
  const auto env = half_environment(g);
  const auto z = edge_occupation(g, env);
  std::vector<RunningStats> counts(g.num_edges());
  for (std::size_t i = 0; i < 100'000; ++i) {
    std::vector<double> n(g.num_edges(), 0.0);
    SplitMix64 rng = substream(8, i);
    for (EdgeIndex e : simulate_chain(g, env, rng).edges) n[e] += 1;
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) counts[e].add(n[e]);
  }
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) CHECK(std::abs(counts[e].mean() - z[e]) <= 3 * counts[e].std_error());

  // Cannot escape from a -> x0 -> a ... when the exits are removed.
  DirectedGraph trap({"x0", "a", "delta"}, "delta", "x0",
                     {{"e1", "x0", "a"}, {"e2", "a", "x0"}, {"e3", "x0", "delta"}});
  CHECK_THROWS_AS(simulate_chain(trap, Environment{{1.0, 1.0, 0.0}}, 1, 1000), IterationCapExceeded);
}

TEST_CASE("loop_erasure") {
  const auto g = triangle();
  // x0 -e1-> a -e2-> x0 -e1-> a -e4-> delta erases to e1, e4.
  const Trajectory t{{0, 1, 0, 3}};
  const auto path = loop_erasure(g, t);
  CHECK(path.sorted_edges() == std::vector<EdgeIndex>{0, 3});
  const Trajectory u{{0, 1, 2}};
  CHECK(loop_erasure(g, u).sorted_edges() == std::vector<EdgeIndex>{2});
}

TEST_CASE("wilson_sample_tree") {
  const auto g = triangle();
  const auto env = half_environment(g);
  const auto trees = enumerate_spanning_trees(g, true);
  std::map<EdgeMask, double> freq;
  const std::size_t n = 100'000;
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng = substream(4, i);
    const auto t = wilson_sample_tree(g, env, rng);
    CHECK_MESSAGE(t.directed, "Wilson returned a non-directed tree");
    freq[t.mask()] += 1.0;
  }
  REQUIRE(freq.size() == 3);
  for (const auto& [m, count] : freq) {
    const double p = count / n;
    CHECK(std::abs(p - 1.0 / 3.0) <= 3 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / n));
  }

  const auto c = chain();
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(wilson_sample_tree(c, Environment{{1.0, 1.0}}, s).mask() == 0b11);
}

TEST_CASE("mc_estimate_rhs") {
  const auto g2 = two_edge();
  const auto t1 = tree_of(g2, {"e1"});
  const std::size_t n = 200'000;
  SUBCASE("lambda = 0, symmetric") {
    const std::vector<double> zero{0, 0};
    const auto est = mc_estimate_rhs(g2, DirichletWeights::from_graph(g2), zero, t1, n, 1);
    CHECK(std::abs(est.value - 0.5) <= 3 * est.std_error);
  }
  SUBCASE("lambda = (1, 0)") {
    const std::vector<double> lambda{1, 0};
    const auto est = mc_estimate_rhs(g2, DirichletWeights::from_graph(g2), lambda, t1, n, 2);
    CHECK(std::abs(est.value - (1 - 2 / std::exp(1.0))) <= 3 * est.std_error);
  }
  SUBCASE("Beta moment") {
    const std::vector<double> zero{0, 0};
    const auto est = mc_estimate_rhs(g2, DirichletWeights::from_alpha(g2, {2.5, 0.5}), zero, t1, n, 3);
    CHECK(std::abs(est.value - 2.5 / 3.0) <= 3 * est.std_error);
  }
  SUBCASE("reproducible") {
    const std::vector<double> lambda{0.3, 0.1};
    const auto a = mc_estimate_rhs(g2, DirichletWeights::from_graph(g2), lambda, t1, 1000, 9);
    const auto b = mc_estimate_rhs(g2, DirichletWeights::from_graph(g2), lambda, t1, 1000, 9);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
  }
  const auto g = triangle();
  const std::vector<double> lambda{1, 1, 1, 1};
  CHECK_THROWS_AS(mc_estimate_rhs(g, DirichletWeights::from_graph(g), lambda, tree_of(g, {"e1", "e3"}), 10, 1),
                  DomainError);
  const std::vector<double> negative{-1, 1, 1, 1};
  CHECK_THROWS_AS(mc_estimate_rhs(g, DirichletWeights::from_graph(g), negative, tree_of(g, {"e3", "e4"}), 10, 1),
                  DomainError);
}

TEST_CASE("mc_laplace") {
  const auto g2 = two_edge();
  const std::vector<double> zero{0, 0};
  const auto one = mc_laplace(g2, DirichletWeights::from_graph(g2), zero, 100, 1);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-15));

  // z1 + z2 = 1, so the transform is e^{-1} without noise.
  const std::vector<double> ones{1, 1};
  const auto e = mc_laplace(g2, DirichletWeights::from_graph(g2), ones, 1000, 1);
  CHECK(e.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  const auto g = triangle();
  const std::vector<double> lambda{0.5, 1.0, 0.25, 2.0};
  const auto d = mc_laplace_by_tree(g, DirichletWeights::from_alpha(g, {1.5, 0.5, 2.0, 1.0}), lambda, 20'000, 6);
  CHECK(d.trees.size() == 3);
  CHECK(std::abs(d.sum_over_trees - d.total.value) <= 1e-12);
}

TEST_CASE("nested sampling agrees with mc_laplace") {
  // Outer: environments. Inner: chains, whose mean crossing counts estimate z.
  const auto g = triangle();
  const auto w = DirichletWeights::from_graph(g);
  const std::vector<double> lambda{0.05, 0.05, 0.05, 0.05};
  const std::size_t outer = 4000, inner = 200;
  RunningStats nested;
  for (std::size_t i = 0; i < outer; ++i) {
    SplitMix64 rng = substream(77, i);
    const auto env = sample_environment(g, w, rng);
    double total = 0;
    for (std::size_t k = 0; k < inner; ++k)
      for (EdgeIndex e : simulate_chain(g, env, rng).edges) total += lambda[e];
    nested.add(std::exp(-total / inner));
  }
  const auto direct = mc_laplace(g, w, lambda, 100'000, 78);
  const double sigma = std::hypot(nested.std_error(), direct.std_error);
  CHECK(std::abs(nested.mean() - direct.value) <= 3 * sigma + 1e-3);
}

TEST_CASE("statistics helpers") {
  const std::vector<std::size_t> counts{50, 50};
  const std::vector<double> probs{0.5, 0.5};
  const auto chi = chi_square_gof(counts, probs);
  CHECK(chi.statistic == doctest::Approx(0.0));
  CHECK(chi.degrees_of_freedom == 1);
  CHECK(chi.p_value == doctest::Approx(1.0));
  const std::vector<std::size_t> skew{90, 10};
  CHECK(chi_square_gof(skew, probs).p_value < 1e-10);
  const std::vector<double> a{0.2, 0.8}, b{0.5, 0.5};
  CHECK(total_variation(a, b) == doctest::Approx(0.3));
}
