#include "rwde/connection.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace rwde {
namespace {

template <class S>
S from_rational(const Rational& q) {
  if constexpr (is_exact_v<S>) {
    return q;
  } else {
    return S(to_double(q));
  }
}

template <class S>
double magnitude(const S& x) {
  if constexpr (is_exact_v<S>) {
    return to_double(abs(x));
  } else {
    return std::abs(x);
  }
}

std::string describe(const DirectedGraph& g, const char* tag, EdgeMask mask) {
  std::string out = std::string(tag) + "{";
  bool first = true;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (!(mask & edge_bit(e))) continue;
    if (!first) out += ",";
    out += g.edge(e).id;
    first = false;
  }
  return out + "}";
}

bool edge_disjoint(EdgeMask a, EdgeMask b) { return (a & b) == 0; }

}  // namespace

LinearForm linear_form(const DirectedGraph& g, const SignedEdgeSet& set) {
  LinearForm form{std::vector<int>(g.num_edges(), 0)};
  for (const auto& step : set.steps) form.coeffs.at(step.edge) = step.sign;
  return form;
}

std::optional<std::size_t> TreeBasis::find(EdgeMask mask) const {
  auto it = index.find(mask);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

TreeBasis tree_basis(const DirectedGraph& g) {
  TreeBasis basis{enumerate_spanning_trees(g), {}};
  for (std::size_t i = 0; i < basis.trees.size(); ++i) basis.index.emplace(basis.trees[i].mask(), i);
  return basis;
}

TreeMatrix omega_cycle(const DirectedGraph& g, const TreeBasis& basis, const SignedEdgeSet& cycle,
                       std::span<const Rational> alpha) {
  if (alpha.size() != g.num_edges()) throw MissingEdgeValue("omega_cycle: one alpha per edge required");
  const EdgeMask c = cycle.mask();
  TreeMatrix omega(basis.size(), basis.size());
  for (std::size_t row = 0; row < basis.size(); ++row) {
    const EdgeMask t = basis.trees[row].mask();
    const EdgeMask outside = c & ~t;
    if (std::popcount(outside) != 1) continue;
    const auto e0 = static_cast<EdgeIndex>(std::countr_zero(outside));
    const int s0 = cycle.sign(e0);
    for (const auto& step : cycle.steps) {
      const EdgeMask target = (t | edge_bit(e0)) & ~edge_bit(step.edge);
      const auto col = basis.find(target);
      if (!col) throw DomainError("omega_cycle: exchange left the tree basis");
      omega.add_to(row, *col, Rational(s0 * step.sign) * alpha[step.edge]);
    }
  }
  return omega;
}

TreeMatrix omega_path(const DirectedGraph&, const TreeBasis& basis, const SignedEdgeSet& path) {
  const EdgeMask p = path.mask();
  TreeMatrix omega(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if ((basis.trees[i].mask() & p) == p) omega.set(i, i, Rational(1));
  return omega;
}

ConnectionForm build_connection(const DirectedGraph& g, std::span<const Rational> alpha) {
  ConnectionForm conn;
  conn.num_edges = g.num_edges();
  conn.basis = tree_basis(g);
  for (auto& path : enumerate_paths(g)) {
    LinearForm form = linear_form(g, path);
    TreeMatrix omega = omega_path(g, conn.basis, path);
    conn.path_terms.push_back({std::move(path), std::move(form), std::move(omega)});
  }
  for (auto& cycle : enumerate_cycles(g)) {
    LinearForm form = linear_form(g, cycle);
    TreeMatrix omega = omega_cycle(g, conn.basis, cycle, alpha);
    conn.cycle_terms.push_back({std::move(cycle), std::move(form), std::move(omega)});
  }
  return conn;
}

ConnectionForm build_connection(const DirectedGraph& g) {
  const auto alpha = g.alphas();
  return build_connection(g, alpha);
}

template <class S>
std::optional<std::size_t> excluded_cycle(const ConnectionForm& conn, std::span<const S> lambda, double threshold) {
  if (lambda.size() != conn.num_edges) throw MissingEdgeValue("lambda must have one value per edge");
  for (std::size_t k = 0; k < conn.cycle_terms.size(); ++k) {
    const S l = conn.cycle_terms[k].form(lambda);
    if (is_zero(l) || magnitude(l) <= threshold) return k;
  }
  return std::nullopt;
}

template <class S>
std::vector<SparseMatrix<S>> connection_coefficients(const ConnectionForm& conn, std::span<const S> lambda) {
  if (auto k = excluded_cycle(conn, lambda)) {
    const auto& cycle = conn.cycle_terms[*k].set;
    std::string ids;
    for (EdgeIndex e : cycle.sorted_edges()) ids += (ids.empty() ? "" : ",") + std::to_string(e);
    throw ExcludedLocusError("lambda lies on ker l_C for the cycle with edge indices {" + ids + "}", *k);
  }
  const std::size_t n = conn.basis.size();
  std::vector<SparseMatrix<S>> m(conn.num_edges, SparseMatrix<S>(n, n));
  auto convert = [](const Rational& q) { return from_rational<S>(q); };
  for (const auto& term : conn.path_terms) {
    const auto omega = term.omega.template map<S>(convert);
    for (EdgeIndex i = 0; i < conn.num_edges; ++i)
      if (term.form.coeffs[i] != 0) m[i].axpy(S(term.form.coeffs[i]), omega);
  }
  for (const auto& term : conn.cycle_terms) {
    const auto omega = term.omega.template map<S>(convert);
    const S l = term.form(lambda);
    for (EdgeIndex i = 0; i < conn.num_edges; ++i)
      if (term.form.coeffs[i] != 0) m[i].axpy(S(term.form.coeffs[i]) / l, omega);
  }
  return m;
}

DenseMatrix<std::complex<double>> connection_along(const ConnectionForm& conn,
                                                   std::span<const std::complex<double>> lambda,
                                                   std::span<const std::complex<double>> dlambda) {
  using C = std::complex<double>;
  if (lambda.size() != conn.num_edges || dlambda.size() != conn.num_edges)
    throw MissingEdgeValue("connection_along: lambda and direction need one value per edge");
  const std::size_t n = conn.basis.size();
  DenseMatrix<C> a(n, n);
  auto accumulate = [&](const TreeMatrix& omega, C factor) {
    if (factor == C(0)) return;
    for (std::size_t r = 0; r < n; ++r)
      for (const auto& [c, v] : omega.row(r)) a(r, c) += factor * to_double(v);
  };
  for (const auto& term : conn.path_terms) accumulate(term.omega, term.form(dlambda));
  for (std::size_t k = 0; k < conn.cycle_terms.size(); ++k) {
    const auto& term = conn.cycle_terms[k];
    const C l = term.form(lambda);
    if (l == C(0)) throw ExcludedLocusError("connection_along: lambda lies on ker l_C", k);
    accumulate(term.omega, term.form(dlambda) / l);
  }
  return a;
}

bool CommutationReport::pass() const { return failures() == 0; }

std::size_t CommutationReport::count(const std::string& family) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const auto& c) { return c.family == family; }));
}

std::size_t CommutationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.holds; }));
}

CommutationReport check_commutation(const DirectedGraph& g, std::span<const Rational> alpha) {
  const ConnectionForm conn = build_connection(g, alpha);
  const auto& cycles = conn.cycle_terms;
  const auto& paths = conn.path_terms;
  CommutationReport report;
  auto add = [&](const char* family, std::string description, const TreeMatrix& a, const TreeMatrix& b) {
    report.checks.push_back({family, std::move(description), commutator(a, b).is_zero_matrix()});
  };

  for (const auto& p : paths)
    report.checks.push_back({"projector-path", describe(g, "sigma", p.set.mask()), p.omega * p.omega == p.omega});
  for (const auto& c : cycles) {
    Rational total(0);
    for (const auto& step : c.set.steps) total += alpha[step.edge];
    report.checks.push_back(
        {"projector-cycle", describe(g, "C", c.set.mask()), c.omega * c.omega == total * c.omega});
  }

  std::set<std::vector<std::size_t>> triples;
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      const EdgeMask a = cycles[i].set.mask(), b = cycles[j].set.mask();
      const std::size_t gen = genus(g, a | b);
      const std::string pair = describe(g, "C", a) + " " + describe(g, "C", b);
      if (edge_disjoint(a, b) || gen != 2) {
        add("i", pair, cycles[i].omega, cycles[j].omega);
        continue;
      }
      std::vector<std::size_t> inside;
      for (std::size_t k = 0; k < cycles.size(); ++k)
        if ((cycles[k].set.mask() & ~(a | b)) == 0) inside.push_back(k);
      if (inside.size() != 3) {
        report.checks.push_back({"iv", pair + ": union of genus 2 without exactly 3 cycles", false});
        continue;
      }
      if (!triples.insert(inside).second) continue;
      TreeMatrix sum = cycles[inside[0]].omega + cycles[inside[1]].omega + cycles[inside[2]].omega;
      for (std::size_t k : inside)
        add("iv", "sum over " + describe(g, "C", a | b) + " with " + describe(g, "C", cycles[k].set.mask()), sum,
            cycles[k].omega);
    }

  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      const EdgeMask a = paths[i].set.mask(), b = paths[j].set.mask();
      const std::string pair = describe(g, "sigma", a) + " " + describe(g, "sigma", b);
      add("ii", pair, paths[i].omega, paths[j].omega);
      if (genus(g, a | b) != 1) continue;
      std::vector<std::size_t> inside;
      for (std::size_t k = 0; k < cycles.size(); ++k)
        if ((cycles[k].set.mask() & ~(a | b)) == 0) inside.push_back(k);
      if (inside.size() != 1) {
        report.checks.push_back({"v", pair + ": union of genus 1 without a unique cycle", false});
        continue;
      }
      add("v", pair + " with " + describe(g, "C", cycles[inside[0]].set.mask()), paths[i].omega + paths[j].omega,
          cycles[inside[0]].omega);
    }

  for (const auto& c : cycles)
    for (const auto& p : paths) {
      const EdgeMask a = c.set.mask(), b = p.set.mask();
      if (edge_disjoint(a, b) || genus(g, a | b) != 1)
        add("iii", describe(g, "C", a) + " " + describe(g, "sigma", b), c.omega, p.omega);
    }
  return report;
}

Rational check_flatness(const ConnectionForm& conn, std::span<const std::vector<Rational>> lambda_samples) {
  Rational worst(0);
  for (const auto& lambda : lambda_samples) {
    const auto m = connection_coefficients<Rational>(conn, lambda);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        if (m[i].is_zero_matrix() || m[j].is_zero_matrix()) continue;
        const Rational r = commutator(m[i], m[j]).max_abs();
        if (r > worst) worst = r;
      }
  }
  return worst;
}

double check_flatness_float(const ConnectionForm& conn, std::span<const std::vector<double>> lambda_samples) {
  double worst = 0.0;
  for (const auto& lambda : lambda_samples) {
    const auto m = connection_coefficients<double>(conn, lambda);
    std::vector<double> norms;
    for (const auto& mi : m) norms.push_back(mi.max_abs());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        const double scale = norms[i] * norms[j];
        if (scale == 0.0) continue;
        worst = std::max(worst, commutator(m[i], m[j]).max_abs() / scale);
      }
  }
  return worst;
}

template std::optional<std::size_t> excluded_cycle(const ConnectionForm&, std::span<const Rational>, double);
template std::optional<std::size_t> excluded_cycle(const ConnectionForm&, std::span<const double>, double);
template std::optional<std::size_t> excluded_cycle(const ConnectionForm&, std::span<const std::complex<double>>,
                                                   double);
template std::vector<SparseMatrix<Rational>> connection_coefficients(const ConnectionForm&,
                                                                     std::span<const Rational>);
template std::vector<SparseMatrix<double>> connection_coefficients(const ConnectionForm&, std::span<const double>);
template std::vector<SparseMatrix<std::complex<double>>> connection_coefficients(
    const ConnectionForm&, std::span<const std::complex<double>>);

}  // namespace rwde
