#include "rwde/bundled.hpp"
#include "rwde/connection.hpp"
#include "rwde/environment.hpp"
#include "rwde/hat_graph.hpp"
#include "rwde/integrals.hpp"
#include "rwde/transport.hpp"

#include <benchmark/benchmark.h>

using namespace rwde;

namespace {

SpanningTree tree(const DirectedGraph& g, std::vector<const char*> ids) {
  std::vector<EdgeIndex> edges;
  for (const char* id : ids) edges.push_back(g.edge_index(id));
  return make_spanning_tree(g, edges);
}

void BM_QuadratureTriangleHat(benchmark::State& state) {
  const auto g = bundled_graph("triangle").graph;
  const std::vector<double> alpha{1, 1, 1, 1}, lambda{1, 2, 3, 4};
  const auto spec = make_hat_spec(g, alpha, lambda, tree(g, {"e3", "e4"}));
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_quadrature(spec, tol).value);
}
BENCHMARK(BM_QuadratureTriangleHat)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_MonteCarloRhs(benchmark::State& state) {
  const auto g = bundled_graph("triangle").graph;
  const std::vector<double> lambda{1, 2, 3, 4};
  const auto t = tree(g, {"e3", "e4"});
  const auto w = DirichletWeights::from_graph(g);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_estimate_rhs(g, w, lambda, t, n, 1).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloRhs)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_BuildConnection(benchmark::State& state) {
  const auto g = bundled_graph(state.range(0) == 0 ? "triangle" : "two-diamond").graph;
  for (auto _ : state) benchmark::DoNotOptimize(build_connection(g).basis.size());
}
BENCHMARK(BM_BuildConnection)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_CheckCommutation(benchmark::State& state) {
  const auto g = bundled_graph(state.range(0) == 0 ? "triangle" : "two-diamond").graph;
  const auto alpha = g.alphas();
  for (auto _ : state) benchmark::DoNotOptimize(check_commutation(g, alpha).pass());
}
BENCHMARK(BM_CheckCommutation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FlatnessExact(benchmark::State& state) {
  const auto g = bundled_graph("two-diamond").graph;
  const auto conn = build_connection(g);
  std::vector<std::vector<Rational>> samples;
  for (int k = 0; k < 10; ++k) {
    std::vector<Rational> l;
    for (std::size_t e = 0; e < g.num_edges(); ++e) l.emplace_back(static_cast<long>(e + 1), k + 2);
    samples.push_back(l);
  }
  for (auto _ : state) benchmark::DoNotOptimize(check_flatness(conn, samples));
}
BENCHMARK(BM_FlatnessExact)->Unit(benchmark::kMillisecond);

void BM_TransportTwoEdgeHat(benchmark::State& state) {
  const auto g = bundled_graph("two-edge").graph;
  const auto hat = hat_graph(g);
  const auto conn = build_connection(hat.graph);
  auto lift = [&](std::complex<double> a, std::complex<double> b) {
    return hat.lift_edge_values<std::complex<double>>(ComplexVector{a, b});
  };
  const std::vector<ComplexVector> path{lift(1, 2), lift(1.5, {1.5, 1.0}), lift(2, 1)};
  TransportOptions options;
  options.zero_edges = hat.vertex_edge;
  const ComplexVector initial{0.3, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(transport(conn, initial, path, options).steps);
}
BENCHMARK(BM_TransportTwoEdgeHat)->Unit(benchmark::kMillisecond);

void BM_WilsonTwoDiamond(benchmark::State& state) {
  const auto g = bundled_graph("two-diamond").graph;
  const auto env = mean_environment(g, DirichletWeights::from_graph(g));
  std::uint64_t i = 0;
  for (auto _ : state) {
    SplitMix64 rng = substream(3, i++);
    benchmark::DoNotOptimize(wilson_sample_tree(g, env, rng).edges.size());
  }
}
BENCHMARK(BM_WilsonTwoDiamond);

}  // namespace
BENCHMARK_MAIN();
