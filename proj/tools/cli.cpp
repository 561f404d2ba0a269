#include "cli.hpp"

#include "rwde/bundled.hpp"
#include "rwde/connection.hpp"
#include "rwde/environment.hpp"
#include "rwde/hat_graph.hpp"
#include "rwde/integrals.hpp"
#include "rwde/transport.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace rwde::cli {
namespace {

/// Configuration problems that are not parse errors (status 3).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A graph that fails validate(); carries the report.
class InvalidGraph : public Error {
 public:
  InvalidGraph(const std::string& what, Json violations) : Error(what), violations_(std::move(violations)) {}
  const Json& violations() const { return violations_; }

 private:
  Json violations_;
};

using Complex = std::complex<double>;

GraphDocument load(const std::string& graph) {
  if (graph.empty()) throw ConfigError("--graph is required");
  if (std::filesystem::exists(graph)) return load_graph_document(graph);
  if (bundled_graph_json(graph)) return bundled_graph(graph);
  throw ParseError("'" + graph + "' is neither a readable file nor a bundled graph", 0, "graph");
}

Json violations_json(const ValidationReport& report) {
  Json v = Json::array();
  for (const auto& violation : report.violations)
    v.push_back({{"kind", std::string(to_string(violation.kind))}, {"message", violation.message}});
  return v;
}

void require_valid_graph(const DirectedGraph& g) {
  const auto report = validate(g);
  if (!report.ok()) throw InvalidGraph("graph violates the model assumptions", violations_json(report));
}

std::map<std::string, Rational> assignments(const std::vector<std::string>& items) {
  std::map<std::string, Rational> out;
  for (const auto& item : items) {
    auto [id, value] = parse_assignment(item);
    out[id] = value;
  }
  return out;
}

/// The graph with its weights replaced by --alpha overrides.
DirectedGraph with_alpha(const DirectedGraph& g, const std::map<std::string, Rational>& overrides) {
  for (const auto& [id, value] : overrides) {
    (void)g.edge_index(id);
    if (sgn(value) <= 0) throw ConfigError("alpha of " + id + " must be positive");
  }
  std::vector<std::string> names(g.vertex_names().begin(), g.vertex_names().end());
  std::vector<EdgeSpec> specs;
  for (const auto& e : g.edges()) {
    auto it = overrides.find(e.id);
    specs.push_back({e.id, g.vertex_name(e.tail), g.vertex_name(e.head), it == overrides.end() ? e.alpha : it->second});
  }
  return DirectedGraph(std::move(names), g.vertex_name(g.cemetery()), g.vertex_name(g.base()), specs);
}

std::vector<double> to_doubles(std::span<const Rational> values) {
  std::vector<double> out;
  for (const auto& v : values) out.push_back(to_double(v));
  return out;
}

Complex parse_complex(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw ParseError("empty complex number", 0, std::string(text));
  if (s.back() != 'i') return {to_double(parse_rational(s)), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  auto imag_part = [](std::string t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return to_double(parse_rational(t));
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  return {to_double(parse_rational(s.substr(0, split))), imag_part(s.substr(split))};
}

std::string format_complex(Complex c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

/// Rational in [-bound, bound] with denominator at most 12.
Rational random_rational(SplitMix64& rng, int bound) {
  std::uniform_int_distribution<int> num(-12 * bound, 12 * bound);
  std::uniform_int_distribution<int> den(1, 12);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

struct Context {
  const RunConfig& config;
  GraphDocument doc;
  DirectedGraph g;
  std::map<std::string, Rational> alpha_overrides;
  Json inputs;

  explicit Context(const RunConfig& c) : config(c), doc(load(c.graph)), g(doc.graph) {
    alpha_overrides = assignments(c.alpha);
    inputs["graph"] = c.graph;
    if (!alpha_overrides.empty()) {
      g = with_alpha(doc.graph, alpha_overrides);
      Json a;
      for (const auto& [id, v] : alpha_overrides) a[id] = to_string(v);
      inputs["alpha"] = a;
    }
    if (!c.lambda.empty()) inputs["lambda"] = c.lambda;
    if (!c.tree.empty()) inputs["tree"] = c.tree;
    inputs["seed"] = c.seed;
    if (c.samples) inputs["samples"] = *c.samples;
    if (c.tol) inputs["tol"] = *c.tol;
    inputs["mode"] = c.exact ? "exact" : "float";
  }

  std::size_t samples(std::size_t fallback) const {
    const std::size_t n = config.samples.value_or(fallback);
    if (n == 0) throw ConfigError("--samples must be positive");
    return n;
  }

  double tol(double fallback) const {
    const double t = config.tol.value_or(fallback);
    if (!(t > 0.0)) throw ConfigError("--tol must be positive");
    return t;
  }

  /// Graph defaults overridden by --lambda; every edge must end up with a value.
  std::vector<Rational> lambda() const {
    auto values = doc.lambda;
    for (const auto& [id, v] : assignments(config.lambda)) {
      (void)g.edge_index(id);
      values[id] = v;
    }
    return edge_vector(g, values);
  }

  std::vector<Complex> complex_point(const std::vector<std::string>& items, bool with_defaults) const {
    std::map<std::string, Complex> values;
    if (with_defaults)
      for (const auto& [id, v] : doc.lambda) values[id] = to_double(v);
    for (const auto& item : items) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw ParseError("expected id=value, got '" + item + "'", 0, item);
      const std::string id = item.substr(0, eq);
      (void)g.edge_index(id);
      values[id] = parse_complex(item.substr(eq + 1));
    }
    return edge_vector(g, values);
  }

  std::optional<SpanningTree> tree() const {
    if (config.tree.empty()) return std::nullopt;
    std::vector<EdgeIndex> edges;
    for (const auto& id : config.tree) edges.push_back(g.edge_index(id));
    return make_spanning_tree(g, std::move(edges));
  }

  DirichletWeights weights() const { return DirichletWeights::from_alpha(g, to_doubles(g.alphas())); }
};

Json edge_map(const DirectedGraph& g, std::span<const double> values) {
  Json out = Json::object();
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) out[g.edge(e).id] = values[e];
  return out;
}

// ---------------------------------------------------------------------------

bool cmd_enumerate(Context& ctx, Json& results) {
  const auto& g = ctx.g;
  const auto trees = enumerate_spanning_trees(g);
  const auto directed = enumerate_spanning_trees(g, true);
  const auto cycles = enumerate_cycles(g);
  const auto paths = enumerate_paths(g);
  const auto hat = hat_graph(g);
  results["counts"] = {{"spanning_trees", trees.size()},
                       {"directed_trees", directed.size()},
                       {"cycles", cycles.size()},
                       {"paths", paths.size()},
                       {"genus_E", genus(g, g.all_edges_mask())}};
  auto list = [&](const auto& items) {
    Json a = Json::array();
    for (const auto& item : items) a.push_back(to_json(g, item));
    return a;
  };
  results["spanning_trees"] = list(trees);
  results["cycles"] = list(cycles);
  results["paths"] = list(paths);
  results["hat_graph"] = {{"vertices", hat.graph.num_vertices()},
                          {"edges", hat.graph.num_edges()},
                          {"spanning_trees", enumerate_spanning_trees(hat.graph).size()},
                          {"directed_trees", enumerate_spanning_trees(hat.graph, true).size()},
                          {"graph", graph_to_json(hat.graph)}};
  return true;
}

bool cmd_sample_env(Context& ctx, Json& results) {
  const auto& g = ctx.g;
  const auto w = ctx.weights();
  const std::size_t n = ctx.samples(1);
  const auto directed = enumerate_spanning_trees(g, true);
  bool pass = true;
  Json envs = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng = substream(ctx.config.seed, i);
    const Environment env = sample_environment(g, w, rng);
    const auto z = edge_occupation(g, env);
    const double det = survival_determinant(g, env);
    double tree_sum = 0.0;
    for (const auto& t : directed) {
      double prod = 1.0;
      for (EdgeIndex e : t.edges) prod *= env.p[e];
      tree_sum += prod;
    }
    const auto div = divergence<double>(g, z);
    double div_residual = 0.0;
    for (std::size_t k = 0; k < div.size(); ++k) {
      const double target = g.transient_vertices()[k] == g.base() ? 1.0 : 0.0;
      div_residual = std::max(div_residual, std::abs(div[k] - target));
    }
    const double tree_residual = std::abs(det - tree_sum) / std::max(1.0, std::abs(det));
    const bool ok = div_residual <= 1e-10 && tree_residual <= 1e-12;
    pass = pass && ok;
    envs.push_back({{"p", edge_map(g, env.p)},
                    {"z", edge_map(g, z)},
                    {"det_I_minus_P", det},
                    {"directed_tree_sum", tree_sum},
                    {"divergence_residual", div_residual},
                    {"matrix_tree_residual", tree_residual},
                    {"pass", ok}});
  }
  results["environments"] = envs;
  return pass;
}

bool cmd_verify_thm21(Context& ctx, Json& results) {
  const auto& g = ctx.g;
  const auto w = ctx.weights();
  const auto lambda = to_doubles(ctx.lambda());
  const std::size_t n = ctx.samples(100'000);
  const double tol = ctx.tol(kDefaultIntegrationTol);
  std::vector<SpanningTree> trees;
  if (auto t = ctx.tree()) trees.push_back(*t);
  else trees = enumerate_spanning_trees(g, true);

  results["C_alpha"] = constant_C_alpha(g, w.alpha);
  results["lambda"] = edge_map(g, lambda);
  Json reports = Json::array();
  bool pass = true;
  for (const auto& t : trees) {
    const auto report = verify_theorem_2_1(g, w, lambda, t, n, ctx.config.seed, tol);
    pass = pass && report.pass;
    Json entry = {{"tree", to_json(g, t)}};
    entry.update(to_json(report));
    reports.push_back(entry);
  }
  results["trees"] = reports;
  return pass;
}

bool cmd_verify_identities(Context& ctx, Json& results) {
  const auto& g = ctx.g;
  const std::size_t n = ctx.samples(100);
  const double tol = ctx.tol(kDefaultIntegrationTol);
  const auto trees = enumerate_spanning_trees(g);

  SplitMix64 rng = substream(ctx.config.seed, 0);
  Rational worst(0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = trees[std::uniform_int_distribution<std::size_t>(0, trees.size() - 1)(rng)];
    std::vector<Rational> u, lambda;
    for (std::size_t k = 0; k < cotree(g, t).size(); ++k) u.push_back(random_rational(rng, 5));
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) lambda.push_back(random_rational(rng, 5));
    const auto z = solve_tree_coordinates<Rational>(g, t, u);
    const Rational r = pairing_identity_residual<Rational>(g, t, z, lambda);
    if (r > worst) worst = r;
  }
  const bool pairing_pass = sgn(worst) == 0;
  results["pairing"] = {{"samples", n}, {"max_residual", to_string(worst)}, {"pass", pairing_pass}};

  const auto alpha = to_doubles(g.alphas());
  const auto lambda = to_doubles(ctx.lambda());
  std::vector<SpanningTree> chosen;
  if (auto t = ctx.tree()) chosen.push_back(*t);
  else chosen = trees;
  bool cohomology_pass = true;
  Json checks = Json::array();
  for (const auto& t : chosen) {
    const auto spec = make_integrand_spec(g, alpha, lambda, t);
    for (EdgeIndex e0 : cotree(g, t)) {
      Json entry = {{"tree", to_json(g, t)}, {"e0", g.edge(e0).id}};
      try {
        entry.update(to_json(cohomology_identity_check(spec, e0, tol)));
      } catch (const QuadratureError& e) {
        entry["error"] = e.what();
        entry["pass"] = false;
      }
      cohomology_pass = cohomology_pass && entry["pass"].get<bool>();
      checks.push_back(entry);
    }
  }
  results["cohomology"] = {{"lambda", edge_map(g, lambda)}, {"checks", checks}, {"pass", cohomology_pass}};
  return pairing_pass && cohomology_pass;
}

bool cmd_check_commutation(Context& ctx, Json& results) {
  const auto& g = ctx.g;
  const auto alpha = g.alphas();
  const auto report = check_commutation(g, alpha);
  Json counts = Json::object();
  for (const char* family : {"i", "ii", "iii", "iv", "v", "projector-path", "projector-cycle"})
    counts[family] = report.count(family);
  results["counts"] = counts;
  results.update(to_json(report));

  const auto conn = build_connection(g, alpha);
  Json omegas = Json::array();
  for (const auto& term : conn.path_terms)
    omegas.push_back({{"path", to_json(g, term.set)}, {"matrix", to_json(g, conn.basis, term.omega)}});
  for (const auto& term : conn.cycle_terms)
    omegas.push_back({{"cycle", to_json(g, term.set)}, {"matrix", to_json(g, conn.basis, term.omega)}});
  results["omega"] = omegas;
  return report.pass();
}

bool cmd_check_flatness(Context& ctx, Json& results) {
  const auto& g = ctx.g;
  const std::size_t n = ctx.samples(100);
  const auto conn = build_connection(g);
  SplitMix64 rng = substream(ctx.config.seed, 0);
  std::vector<std::vector<Rational>> samples;
  while (samples.size() < n) {
    std::vector<Rational> lambda;
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) lambda.push_back(random_rational(rng, 5));
    if (!excluded_cycle<Rational>(conn, lambda)) samples.push_back(std::move(lambda));
  }
  results["samples"] = n;
  results["commuting_pairs"] = g.num_edges() * (g.num_edges() - 1) / 2;
  if (ctx.config.exact) {
    const Rational residual = check_flatness(conn, samples);
    results["max_residual"] = to_string(residual);
    results["pass"] = sgn(residual) == 0;
    return sgn(residual) == 0;
  }
  std::vector<std::vector<double>> float_samples;
  for (const auto& s : samples) float_samples.push_back(to_doubles(s));
  const double residual = check_flatness_float(conn, float_samples);
  results["max_relative_residual"] = residual;
  results["threshold"] = 1e-12;
  results["pass"] = residual <= 1e-12;
  return residual <= 1e-12;
}

bool cmd_transport(Context& ctx, Json& results) {
  const auto& g = ctx.g;
  const double tol = ctx.tol(1e-10);
  const bool hat_system = ctx.config.system == "hat";
  if (!hat_system && ctx.config.system != "graph") throw ConfigError("--system must be 'hat' or 'graph'");
  if (ctx.config.to.empty()) throw ConfigError("transport needs an endpoint --to");

  auto split = [](const std::string& point) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= point.size()) {
      std::size_t end = point.find(',', start);
      if (end == std::string::npos) end = point.size();
      if (end > start) items.push_back(point.substr(start, end - start));
      start = end + 1;
    }
    return items;
  };
  std::vector<std::vector<Complex>> points{ctx.complex_point(ctx.config.lambda, true)};
  for (const auto& v : ctx.config.via) points.push_back(ctx.complex_point(split(v), false));
  points.push_back(ctx.complex_point(split(ctx.config.to), false));

  const auto alpha = to_doubles(g.alphas());
  const HatGraph hat = hat_graph(g);
  const DirectedGraph& system_graph = hat_system ? hat.graph : g;
  const auto conn = build_connection(system_graph);

  auto real_point = [&](const std::vector<Complex>& p) {
    std::vector<double> out;
    for (const auto& c : p) {
      if (c.imag() != 0.0) return std::optional<std::vector<double>>{};
      out.push_back(c.real());
    }
    return std::optional<std::vector<double>>{out};
  };
  auto direct = [&](const std::vector<double>& lambda, std::vector<double>& errors) {
    ComplexVector values;
    errors.clear();
    for (const auto& t : conn.basis.trees) {
      const auto spec = hat_system ? make_hat_spec(hat, g, alpha, lambda, t) : make_integrand_spec(g, alpha, lambda, t);
      const auto est = integrate_quadrature(spec, tol);
      values.push_back(est.value);
      errors.push_back(est.error);
    }
    return values;
  };

  const auto start = real_point(points.front());
  if (!start) throw ConfigError("the starting point must be real to integrate the initial vector");
  std::vector<double> start_errors, end_errors;
  const ComplexVector initial = direct(*start, start_errors);

  std::vector<ComplexVector> waypoints;
  for (const auto& p : points) {
    ComplexVector w(p.begin(), p.end());
    if (hat_system) w = hat.lift_edge_values<Complex>(w);
    waypoints.push_back(std::move(w));
  }
  TransportOptions options;
  options.tol = tol;
  if (hat_system) options.zero_edges = hat.vertex_edge;
  const auto transported = transport(conn, initial, waypoints, options);

  Json path = Json::array();
  for (const auto& p : points) {
    Json point = Json::object();
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) point[g.edge(e).id] = format_complex(p[e]);
    path.push_back(point);
  }
  results["system"] = ctx.config.system;
  results["path"] = path;
  results["steps"] = transported.steps;
  results["rejected_steps"] = transported.rejected_steps;
  results["min_locus_distance"] = transported.min_locus_distance;

  const auto end = real_point(points.back());
  Json components = Json::array();
  bool pass = true;
  const ComplexVector expected = end ? direct(*end, end_errors) : ComplexVector{};
  const double start_error = *std::max_element(start_errors.begin(), start_errors.end());
  for (std::size_t k = 0; k < conn.basis.size(); ++k) {
    Json c = {{"tree", to_json(system_graph, conn.basis.trees[k])},
              {"initial", initial[k].real()},
              {"transported", format_complex(transported.value[k])}};
    if (end) {
      const double diff = std::abs(transported.value[k] - expected[k]);
      const double threshold = 3.0 * (start_error + end_errors[k]) + 10.0 * tol;
      c["direct"] = expected[k].real();
      c["diff"] = diff;
      c["threshold"] = threshold;
      c["pass"] = diff <= threshold;
      pass = pass && diff <= threshold;
    }
    components.push_back(c);
  }
  results["components"] = components;
  if (!end) results["note"] = "endpoint is not real; no direct comparison";
  return pass;
}

bool cmd_wilson_test(Context& ctx, Json& results) {
  const auto& g = ctx.g;
  const auto w = ctx.weights();
  const Environment env = mean_environment(g, w);
  const std::size_t n = ctx.samples(100'000);
  const auto trees = enumerate_spanning_trees(g, true);

  std::map<EdgeMask, std::size_t> index;
  std::vector<double> probabilities;
  for (std::size_t k = 0; k < trees.size(); ++k) {
    index[trees[k].mask()] = k;
    probabilities.push_back(tree_probability(g, env, trees[k]));
  }
  std::vector<std::size_t> counts(trees.size(), 0);
  std::map<EdgeMask, double> wilson_paths, lerw_paths;
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng = substream(ctx.config.seed, i);
    const auto tree = wilson_sample_tree(g, env, rng);
    ++counts.at(index.at(tree.mask()));
    wilson_paths[tree_path(g, tree).mask()] += 1.0 / static_cast<double>(n);
  }
  const std::uint64_t chain_seed = SplitMix64::mix(ctx.config.seed);
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng = substream(chain_seed, i);
    lerw_paths[loop_erasure(g, simulate_chain(g, env, rng)).mask()] += 1.0 / static_cast<double>(n);
  }
  std::map<EdgeMask, double> exact_paths;
  for (std::size_t k = 0; k < trees.size(); ++k) exact_paths[tree_path(g, trees[k]).mask()] += probabilities[k];

  auto aligned_tv = [](const std::map<EdgeMask, double>& a, const std::map<EdgeMask, double>& b) {
    std::vector<double> pa, pb;
    std::map<EdgeMask, bool> keys;
    for (const auto& [k, v] : a) keys[k] = true;
    for (const auto& [k, v] : b) keys[k] = true;
    for (const auto& [k, unused] : keys) {
      pa.push_back(a.count(k) ? a.at(k) : 0.0);
      pb.push_back(b.count(k) ? b.at(k) : 0.0);
    }
    return total_variation(pa, pb);
  };

  // A single directed tree leaves nothing to test: every draw must be that tree.
  const auto chi = trees.size() > 1 ? chi_square_gof(counts, probabilities)
                                    : ChiSquareResult{0.0, 0, counts[0] == n ? 1.0 : 0.0};
  const double tv = aligned_tv(wilson_paths, lerw_paths);
  Json per_tree = Json::array();
  for (std::size_t k = 0; k < trees.size(); ++k)
    per_tree.push_back({{"tree", to_json(g, trees[k])},
                        {"probability", probabilities[k]},
                        {"count", counts[k]},
                        {"frequency", static_cast<double>(counts[k]) / static_cast<double>(n)}});
  const bool chi_pass = chi.p_value >= 1e-3;
  const bool tv_pass = tv <= 0.01;
  results["environment"] = edge_map(g, env.p);
  results["trees"] = per_tree;
  results["chi_square"] = {{"statistic", chi.statistic},
                           {"degrees_of_freedom", chi.degrees_of_freedom},
                           {"p_value", chi.p_value},
                           {"significance", 1e-3},
                           {"pass", chi_pass}};
  results["tree_path_vs_loop_erasure"] = {{"total_variation", tv},
                                          {"wilson_vs_exact", aligned_tv(wilson_paths, exact_paths)},
                                          {"loop_erasure_vs_exact", aligned_tv(lerw_paths, exact_paths)},
                                          {"threshold", 0.01},
                                          {"pass", tv_pass}};
  return chi_pass && tv_pass;
}

bool cmd_laplace(Context& ctx, Json& results) {
  const auto& g = ctx.g;
  const auto w = ctx.weights();
  const auto lambda = to_doubles(ctx.lambda());
  const std::size_t n = ctx.samples(100'000);
  const auto d = mc_laplace_by_tree(g, w, lambda, n, ctx.config.seed);
  Json per_tree = Json::array();
  for (std::size_t k = 0; k < d.trees.size(); ++k)
    per_tree.push_back({{"tree", to_json(g, d.trees[k])}, {"estimate", to_json(d.per_tree[k])}});
  const double diff = std::abs(d.sum_over_trees - d.total.value);
  const bool pass = diff <= 1e-12 * std::max(1.0, std::abs(d.total.value));
  results["lambda"] = edge_map(g, lambda);
  results["laplace"] = to_json(d.total);
  results["trees"] = per_tree;
  results["sum_over_trees"] = d.sum_over_trees;
  results["diff"] = diff;
  results["pass"] = pass;
  return pass;
}

using Handler = bool (*)(Context&, Json&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"enumerate", cmd_enumerate},           {"sample-env", cmd_sample_env},
      {"verify-thm21", cmd_verify_thm21},     {"verify-identities", cmd_verify_identities},
      {"check-commutation", cmd_check_commutation}, {"check-flatness", cmd_check_flatness},
      {"transport", cmd_transport},           {"wilson-test", cmd_wilson_test},
      {"laplace", cmd_laplace}};
  return table;
}

Json error_json(const char* kind, const std::string& message) { return {{"kind", kind}, {"message", message}}; }

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate",          "enumerate",         "sample-env",
                                              "verify-thm21",      "verify-identities", "check-commutation",
                                              "check-flatness",    "transport",         "wilson-test",
                                              "laplace"};
  return names;
}

RunOutcome run(const RunConfig& config) {
  RunOutcome outcome;
  Json& report = outcome.report;
  report["command"] = config.command;
  report["inputs"] = {{"graph", config.graph}};
  report["results"] = Json::object();
  report["pass"] = false;

  try {
    if (std::find(command_names().begin(), command_names().end(), config.command) == command_names().end())
      throw ConfigError("unknown command '" + config.command + "'");
    Context ctx(config);
    report["inputs"] = ctx.inputs;
    Json& results = report["results"];
    const auto validation = validate(ctx.g);
    if (config.command == "validate") {
      results["vertices"] = ctx.g.num_vertices();
      results["edges"] = ctx.g.num_edges();
      results["violations"] = violations_json(validation);
      report["pass"] = validation.ok();
      outcome.status = validation.ok() ? kPass : kValidationFailed;
    } else {
      require_valid_graph(ctx.g);
      const bool pass = handlers().at(config.command)(ctx, results);
      report["pass"] = pass;
      outcome.status = pass ? kPass : kCheckFailed;
    }
  } catch (const ParseError& e) {
    Json err = error_json("parse", e.what());
    if (e.line() > 0) err["line"] = e.line();
    if (!e.field().empty()) err["field"] = e.field();
    report["error"] = err;
    outcome.status = kParseError;
  } catch (const InvalidGraph& e) {
    Json err = error_json("validation", e.what());
    err["violations"] = e.violations();
    report["error"] = err;
    outcome.status = kValidationFailed;
  } catch (const ExcludedLocusError& e) {
    report["error"] = error_json("excluded-locus", e.what());
    outcome.status = kValidationFailed;
  } catch (const ConfigError& e) {
    report["error"] = error_json("config", e.what());
    outcome.status = kValidationFailed;
  } catch (const GraphError& e) {
    report["error"] = error_json("graph", e.what());
    outcome.status = kValidationFailed;
  } catch (const MissingEdgeValue& e) {
    report["error"] = error_json("missing-edge-value", e.what());
    outcome.status = kValidationFailed;
  } catch (const DomainError& e) {
    report["error"] = error_json("domain", e.what());
    outcome.status = kValidationFailed;
  } catch (const std::exception& e) {
    report["error"] = error_json("runtime", e.what());
    outcome.status = kCheckFailed;
  }

  if (!config.out.empty()) {
    std::ofstream out(config.out);
    out << report.dump(2) << "\n";
    if (!out) {
      report["error"] = error_json("io", "cannot write report to '" + config.out + "'");
      outcome.status = kCheckFailed;
    }
  }
  return outcome;
}

std::optional<RunConfig> parse_command_line(int argc, char** argv, int& status) {
  RunConfig config;
  CLI::App app{"Random walks in Dirichlet environment: hypergeometric integrals, their connection, and checks"};
  app.add_option("command", config.command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("--graph", config.graph, "Graph file, or one of: two-edge, triangle, chain, two-diamond")
      ->required();
  app.add_option("--alpha", config.alpha, "Weight overrides, id=value")->expected(1, -1);
  app.add_option("--lambda", config.lambda, "Laplace variable, id=value (complex a+bi for transport)")
      ->expected(1, -1);
  app.add_option("--tree", config.tree, "Spanning tree as a list of edge ids")->expected(1, -1);
  app.add_option("--seed", config.seed, "Random seed");
  app.add_option("--samples", config.samples, "Sample count");
  app.add_option("--tol", config.tol, "Numerical tolerance");
  app.add_option("--out", config.out, "Write the report to this path");
  auto* exact = app.add_flag("--exact", "Exact rational arithmetic (default)");
  auto* floating = app.add_flag("--float", "Floating-point arithmetic");
  exact->excludes(floating);
  app.add_option("--via", config.via, "transport: waypoint id=value,id=value (repeatable)");
  app.add_option("--to", config.to, "transport: endpoint id=value,id=value");
  app.add_option("--system", config.system, "transport: 'hat' (default) or 'graph'");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    status = app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    status = kParseError;
    return std::nullopt;
  }
  config.exact = floating->count() == 0;
  status = kPass;
  return config;
}

}  // namespace rwde::cli
