#include "phml/invariants.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "phml/distances.hpp"
#include "phml/errors.hpp"
#include "phml/filtration.hpp"
#include "phml/inclusion.hpp"
#include "phml/oracle.hpp"
#include "phml/persistence.hpp"

namespace phml {

namespace {

using Violations = std::vector<Violation>;

std::string pair_str(int v, int w) {
  return "(" + std::to_string(v) + "," + std::to_string(w) + ")";
}

bool entrywise_equal(const DistanceMatrix& a, const DistanceMatrix& b) {
  return a.n == b.n && a.entries == b.entries;
}

// Pairs compared with the kind tag ignored.
bool barcode_pairs_equal(const BarcodeSet& a, const BarcodeSet& b) {
  if (a.pairs.size() != b.pairs.size()) return false;
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    const auto& x = a.pairs[i];
    const auto& y = b.pairs[i];
    if (x.dim != y.dim || x.birth != y.birth || x.death != y.death ||
        !(x.birth_simplex == y.birth_simplex) ||
        x.death_simplex != y.death_simplex || x.cycle != y.cycle)
      return false;
  }
  return true;
}

void check_matrix_shape(const DistanceMatrix& D, Violations& out) {
  const std::string tag = to_string(D.kind);
  for (int i = 0; i < D.n; ++i) {
    if (D.at(i, i) != 0)
      out.push_back({"matrix-diagonal", tag + " nonzero at " + pair_str(i, i)});
    for (int j = i + 1; j < D.n; ++j) {
      if (D.at(i, j) != D.at(j, i))
        out.push_back({"matrix-symmetry", tag + " at " + pair_str(i, j)});
      if (D.at(i, j) <= 0)
        out.push_back(
            {"matrix-positivity", tag + " non-positive at " + pair_str(i, j)});
    }
  }
}

void check_distance_inequality(const DistanceMatrix& D2, const DistanceMatrix& D3,
                 const DistanceMatrix& D1, Violations& out) {
  for (int i = 0; i < D2.n; ++i)
    for (int j = i + 1; j < D2.n; ++j) {
      if (D2.at(i, j) > D3.at(i, j))
        out.push_back({"distance-inequality", "d2 > d3 at " + pair_str(i, j) + ": " +
                                    rational_to_string(D2.at(i, j)) + " > " +
                                    rational_to_string(D3.at(i, j))});
      if (D3.at(i, j) > D1.at(i, j))
        out.push_back({"distance-inequality", "d3 > d1 at " + pair_str(i, j) + ": " +
                                    rational_to_string(D3.at(i, j)) + " > " +
                                    rational_to_string(D1.at(i, j))});
    }
}

void check_oracle(const WeightedGraph& g, const DistanceMatrix& D1,
                  const DistanceMatrix& D2, const DistanceMatrix& D3,
                  int bound, Violations& out) {
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int w = v + 1; w < g.vertex_count(); ++w) {
      BruteForceDistances bf = brute_force_all(g, v, w, bound);
      if (bf.d1 != D1.at(v, w))
        out.push_back({"oracle-d1", pair_str(v, w) + ": fast " +
                                        rational_to_string(D1.at(v, w)) +
                                        " vs oracle " +
                                        rational_to_string(bf.d1)});
      if (bf.d2 != D2.at(v, w))
        out.push_back({"oracle-d2", pair_str(v, w) + ": fast " +
                                        rational_to_string(D2.at(v, w)) +
                                        " vs oracle " +
                                        rational_to_string(bf.d2)});
      if (bf.d3 != D3.at(v, w))
        out.push_back({"oracle-d3", pair_str(v, w) + ": fast " +
                                        rational_to_string(D3.at(v, w)) +
                                        " vs oracle " +
                                        rational_to_string(bf.d3)});
    }
}

void check_transforms(const WeightedGraph& g, Rng& rng, Violations& out) {
  const WeightTransform reciprocal = WeightTransform::reciprocal();
  WeightedGraph gr = apply_transform(g, reciprocal);

  if (!(apply_transform(gr, reciprocal) == g))
    out.push_back({"reciprocal-involution", "double reciprocal changed graph"});
  if (is_connected(gr) != is_connected(g))
    out.push_back({"transform-connectivity", "reciprocal changed connectivity"});

  // A random edgewise table stands in for an arbitrary composition f(W).
  std::map<Edge, Rational> table;
  for (const Edge& e : g.edges()) {
    Rational value(static_cast<unsigned long>(rng.uniform(1, 9)),
                   static_cast<unsigned long>(rng.uniform(1, 9)));
    value.canonicalize();
    table[e] = std::move(value);
  }
  WeightedGraph gf = apply_transform(g, WeightTransform::from_table(table));

  for (int v = 0; v < g.vertex_count(); ++v)
    for (int w = v + 1; w < g.vertex_count(); ++w) {
      PathWitness p = d1_path(g, v, w);
      Rational reciprocal_sum = 0;
      Rational table_sum = 0;
      for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        Edge e(p.vertices[i], p.vertices[i + 1]);
        reciprocal_sum += 1 / g.weight(e);
        table_sum += table.at(e);
      }
      // The minimal edge path depends only on (V, E) and the ordering, so
      // composing the weights commutes with taking d1.
      if (d1(gr, v, w) != reciprocal_sum)
        out.push_back({"reciprocal-congruence", "reciprocal congruence fails at " +
                                    pair_str(v, w)});
      if (d1(gf, v, w) != table_sum)
        out.push_back({"composition-congruence", "composition congruence fails at " +
                                    pair_str(v, w)});
    }
}

// Bars containing epsilon: birth <= eps < death (essential bars never die).
int bars_at(const BarcodeSet& b, int dim, const Rational& eps) {
  int count = 0;
  for (const auto& p : b.pairs)
    if (p.dim == dim && p.birth <= eps && (!p.death || *p.death > eps))
      ++count;
  return count;
}

void check_persistence_validity(const WeightedGraph& g, const Filtration& f,
                                const ReducedMatrix& rm, const BarcodeSet& b,
                                Violations& out) {
  const std::string tag = to_string(b.kind);
  const long n = g.vertex_count();
  const long expected =
      n + n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6;
  if (static_cast<long>(f.entries.size()) != expected)
    out.push_back({"filtration-count",
                   tag + ": " + std::to_string(f.entries.size()) + " vs " +
                       std::to_string(expected)});
  if (!faces_first(f))
    out.push_back({"filtration-order", tag + ": faces-first violated"});

  // R = boundary * V over Z/2.
  auto boundary = boundary_columns(f);
  const int m = static_cast<int>(f.entries.size());
  for (int j = 0; j < m; ++j) {
    std::set<int> acc;
    for (int k : rm.v_columns[j])
      for (int row : boundary[k]) {
        auto it = acc.find(row);
        if (it == acc.end())
          acc.insert(row);
        else
          acc.erase(it);
      }
    std::vector<int> prod(acc.begin(), acc.end());
    if (prod != rm.r_columns[j]) {
      out.push_back({"reduction-rdv", tag + ": R != dV at column " +
                                          std::to_string(j)});
      break;
    }
  }

  // Pivots distinct; every simplex is a creator or a destroyer exactly once.
  std::set<int> pivots;
  int destroyers = 0;
  for (int j = 0; j < m; ++j) {
    if (rm.low[j] == -1) continue;
    ++destroyers;
    if (!pivots.insert(rm.low[j]).second)
      out.push_back({"reduction-pivots", tag + ": duplicate pivot row " +
                                             std::to_string(rm.low[j])});
  }
  const int creators = m - destroyers;
  const int essentials = creators - destroyers;
  if (destroyers * 2 + essentials != m)
    out.push_back({"reduction-partition", tag + ": creator/destroyer counts"});

  int essential_dim0 = 0;
  std::size_t pairs_dim0 = 0;
  for (const auto& p : b.pairs) {
    if (p.death && *p.death < p.birth)
      out.push_back({"pair-order", tag + ": death < birth"});
    if (p.dim == 0) {
      ++pairs_dim0;
      if (p.is_essential()) ++essential_dim0;
      continue;
    }
    // dim-1 pair checks
    if (p.is_positive()) {
      Edge birth(p.birth_simplex.vertices[0], p.birth_simplex.vertices[1]);
      if (!g.has_edge(birth.u, birth.v))
        out.push_back({"birth-edge-membership", tag + ": positive birth edge (" +
                                    std::to_string(birth.u) + "," +
                                    std::to_string(birth.v) +
                                    ") not in the graph"});
    }
    if (p.cycle_edges.empty()) {
      out.push_back({"cycle-empty", tag + ": dim-1 pair without chain"});
      continue;
    }
    if (!is_z2_cycle(p.cycle_edges))
      out.push_back({"cycle-boundary", tag + ": representative has boundary"});
    Edge birth(p.birth_simplex.vertices[0], p.birth_simplex.vertices[1]);
    if (std::find(p.cycle_edges.begin(), p.cycle_edges.end(), birth) ==
        p.cycle_edges.end())
      out.push_back(
          {"cycle-birth-edge", tag + ": representative misses its birth edge"});
  }
  if (essential_dim0 != 1)
    out.push_back({"h0-essential", tag + ": " +
                                       std::to_string(essential_dim0) +
                                       " essential components"});
  if (pairs_dim0 != static_cast<std::size_t>(n))
    out.push_back({"h0-count", tag + ": " + std::to_string(pairs_dim0) +
                                   " dim-0 pairs for " + std::to_string(n) +
                                   " vertices"});
}

void check_betti_consistency(const Filtration& f, const BarcodeSet& b,
                             Violations& out) {
  std::set<Rational> values;
  for (const auto& entry : f.entries) values.insert(entry.value);
  for (const Rational& eps : values)
    for (int dim = 0; dim <= 1; ++dim) {
      const int from_bars = bars_at(b, dim, eps);
      const int from_rank = betti_at(f, dim, eps);
      if (from_bars != from_rank)
        out.push_back({"betti",
                       to_string(b.kind) + ": dim " + std::to_string(dim) +
                           " at eps=" + rational_to_string(eps) + ": bars " +
                           std::to_string(from_bars) + " vs rank " +
                           std::to_string(from_rank)});
    }
}

void check_inclusions(const BarcodeSet& b2, const BarcodeSet& b3,
                      const BarcodeSet& b1, Violations& out) {
  InclusionReport inc = verify_inclusion(b2, b3, b1);
  for (const Edge& e : inc.b2_minus_b3)
    out.push_back({"birth-edge-inclusion", "birth edge (" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + ") in B2 but not B3"});
  for (const Edge& e : inc.b3_minus_b1)
    out.push_back({"birth-edge-inclusion", "birth edge (" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + ") in B3 but not B1"});

  try {
    InjectionReport report = build_injection(b2, b3, b1);
    for (const std::string& v : report.violations)
      out.push_back({"injection", v});
  } catch (const UnmatchedPair& e) {
    out.push_back({"injection-unmatched", e.what()});
  }

  const auto h1 = [](const BarcodeSet& b) {
    return b.dim_pairs(1, /*positive_only=*/true).size();
  };
  if (h1(b2) > h1(b3) || h1(b3) > h1(b1))
    out.push_back({"cardinality",
                   "|H1(d2)|=" + std::to_string(h1(b2)) +
                       " |H1(d3)|=" + std::to_string(h1(b3)) +
                       " |H1(d1)|=" + std::to_string(h1(b1))});
}

void check_family_cases(const GeneratedGraph& gg, const DistanceMatrix& D1,
                        const DistanceMatrix& D2, const DistanceMatrix& D3,
                        const BarcodeSet& b1, const BarcodeSet& b2,
                        const BarcodeSet& b3, Violations& out) {
  const int n = gg.graph.vertex_count();
  switch (gg.family) {
    case GraphFamily::kTree:
      if (!entrywise_equal(D1, D2) || !entrywise_equal(D2, D3))
        out.push_back({"special-tree", "distances differ on a tree"});
      if (!barcode_pairs_equal(b1, b2) || !barcode_pairs_equal(b2, b3))
        out.push_back({"special-tree", "barcodes differ on a tree"});
      break;
    case GraphFamily::kComplete:
      // Adjacent vertices have the direct edge as their unique one-hop
      // path, so d1 and d3 always coincide; d2 may shortcut through
      // detours unless the weights are uniform.
      if (!entrywise_equal(D1, D3))
        out.push_back({"special-complete", "d1 != d3 on a complete graph"});
      if (gg.uniform_weights &&
          (!entrywise_equal(D1, D2) || !barcode_pairs_equal(b1, b2) ||
           !barcode_pairs_equal(b2, b3)))
        out.push_back(
            {"special-complete-uniform",
             "distances or barcodes differ on a uniform complete graph"});
      break;
    case GraphFamily::kCycle:
      if (n % 2 == 1 && !entrywise_equal(D1, D3))
        out.push_back({"special-odd-cycle", "d1 != d3 on an odd cycle"});
      if (n % 2 == 1 && !barcode_pairs_equal(b1, b3))
        out.push_back({"special-odd-cycle", "barcodes differ on an odd cycle"});
      if (gg.uniform_weights &&
          (!entrywise_equal(D1, D2) || !entrywise_equal(D2, D3)))
        out.push_back(
            {"special-uniform-cycle", "distances differ on a uniform cycle"});
      break;
    default:
      break;
  }
}

void check_ordering_invariance(const WeightedGraph& g,
                               const DistanceMatrix& D2,
                               const DistanceMatrix& D3, Rng& rng,
                               Violations& out) {
  const int n = g.vertex_count();
  std::vector<VertexId> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.uniform(0, i)]);

  WeightedGraph gp = permute_vertices(g, perm);
  DistanceMatrix P1 = all_pairs(gp, DistanceKind::kD1);
  DistanceMatrix P2 = all_pairs(gp, DistanceKind::kD2);
  DistanceMatrix P3 = all_pairs(gp, DistanceKind::kD3);

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (P2.at(perm[i], perm[j]) != D2.at(i, j))
        out.push_back({"ordering-invariance-d2",
                       "relabeled d2 differs at " + pair_str(i, j)});
      if (P3.at(perm[i], perm[j]) != D3.at(i, j))
        out.push_back({"ordering-invariance-d3",
                       "relabeled d3 differs at " + pair_str(i, j)});
      // d1 may change under reordering but must stay sandwiched.
      if (P2.at(perm[i], perm[j]) > P3.at(perm[i], perm[j]) ||
          P3.at(perm[i], perm[j]) > P1.at(perm[i], perm[j]))
        out.push_back({"inequality-permuted",
                       "inequality fails after reordering at " +
                           pair_str(i, j)});
    }
}

}  // namespace

std::vector<Violation> check_invariants(const GeneratedGraph& gg, Rng& rng,
                                        const InvariantOptions& options) {
  const WeightedGraph& g = gg.graph;
  Violations out;
  if (!is_connected(g)) {
    out.push_back({"connectivity", "generated graph is not connected"});
    return out;
  }

  DistanceMatrix D1 = all_pairs(g, DistanceKind::kD1);
  DistanceMatrix D2 = all_pairs(g, DistanceKind::kD2);
  DistanceMatrix D3 = all_pairs(g, DistanceKind::kD3);
  check_matrix_shape(D1, out);
  check_matrix_shape(D2, out);
  check_matrix_shape(D3, out);
  check_distance_inequality(D2, D3, D1, out);

  MetricReport metric = metric_check(D2);
  if (!metric.is_metric())
    out.push_back({"d2-metric",
                   std::to_string(metric.triangle_violations.size()) +
                       " triangle violations"});

  if (options.with_oracle && g.vertex_count() <= options.oracle_bound)
    check_oracle(g, D1, D2, D3, options.oracle_bound, out);
  if (options.with_transforms) check_transforms(g, rng, out);

  if (options.with_persistence) {
    Filtration f1 = build_filtration(D1);
    Filtration f2 = build_filtration(D2);
    Filtration f3 = build_filtration(D3);
    ReducedMatrix r1 = reduce(f1);
    ReducedMatrix r2 = reduce(f2);
    ReducedMatrix r3 = reduce(f3);
    BarcodeSet b1 = extract_pairs(f1, r1, DistanceKind::kD1, g.labels());
    BarcodeSet b2 = extract_pairs(f2, r2, DistanceKind::kD2, g.labels());
    BarcodeSet b3 = extract_pairs(f3, r3, DistanceKind::kD3, g.labels());

    check_persistence_validity(g, f1, r1, b1, out);
    check_persistence_validity(g, f2, r2, b2, out);
    check_persistence_validity(g, f3, r3, b3, out);
    if (g.vertex_count() <= options.betti_oracle_max_n) {
      check_betti_consistency(f1, b1, out);
      check_betti_consistency(f2, b2, out);
      check_betti_consistency(f3, b3, out);
    }
    check_inclusions(b2, b3, b1, out);
    check_family_cases(gg, D1, D2, D3, b1, b2, b3, out);
  }

  if (options.with_permutation)
    check_ordering_invariance(g, D2, D3, rng, out);
  return out;
}

std::vector<Violation> check_invariants(const WeightedGraph& g, Rng& rng,
                                        const InvariantOptions& options) {
  return check_invariants(
      GeneratedGraph{g, GraphFamily::kRandomConnected, false}, rng, options);
}

namespace {

// Induced subgraph without vertex `drop`, or nothing when the result is
// not a valid connected analysis graph.
std::optional<WeightedGraph> without_vertex(const WeightedGraph& g,
                                            VertexId drop) {
  if (g.vertex_count() <= 2) return std::nullopt;
  std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
  for (const Edge& e : g.edges()) {
    if (e.u == drop || e.v == drop) continue;
    auto shift = [&](VertexId x) { return x > drop ? x - 1 : x; };
    edges.emplace_back(shift(e.u), shift(e.v), g.weight(e));
  }
  std::vector<std::string> labels;
  if (!g.labels().empty())
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (v != drop) labels.push_back(g.labels()[v]);
  try {
    WeightedGraph candidate(g.vertex_count() - 1, std::move(edges),
                            std::move(labels));
    if (!is_connected(candidate)) return std::nullopt;
    return candidate;
  } catch (const std::exception&) {
    return std::nullopt;  // isolated vertex or no edges left
  }
}

std::optional<WeightedGraph> without_edge(const WeightedGraph& g,
                                          const Edge& drop) {
  std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
  for (const Edge& e : g.edges())
    if (!(e == drop)) edges.emplace_back(e.u, e.v, g.weight(e));
  try {
    WeightedGraph candidate(g.vertex_count(), std::move(edges), g.labels());
    if (!is_connected(candidate)) return std::nullopt;
    return candidate;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

WeightedGraph shrink_counterexample(
    const WeightedGraph& g,
    const std::function<bool(const WeightedGraph&)>& still_violates) {
  WeightedGraph current = g;
  bool improved = true;
  while (improved) {
    improved = false;
    for (VertexId v = 0; v < current.vertex_count() && !improved; ++v) {
      auto candidate = without_vertex(current, v);
      if (candidate && still_violates(*candidate)) {
        current = std::move(*candidate);
        improved = true;
      }
    }
    if (improved) continue;
    for (const Edge& e : current.edges()) {
      auto candidate = without_edge(current, e);
      if (candidate && still_violates(*candidate)) {
        current = std::move(*candidate);
        improved = true;
        break;
      }
    }
  }
  return current;
}

}  // namespace phml
