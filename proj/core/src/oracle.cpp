#include "phml/oracle.hpp"

#include <algorithm>

#include "phml/errors.hpp"

namespace phml {

namespace {

// True when candidate precedes best in the d1 order: fewer hops, or equal
// hops and lexicographically smaller when read from the far endpoint
// backwards (paths are stored root..far).
bool d1_better(const std::vector<VertexId>& candidate,
               const std::vector<VertexId>& best) {
  if (best.empty()) return true;
  if (candidate.size() != best.size()) return candidate.size() < best.size();
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    VertexId a = candidate[candidate.size() - 1 - i];
    VertexId b = best[best.size() - 1 - i];
    if (a != b) return a < b;
  }
  return false;
}

struct Enumeration {
  const WeightedGraph* g = nullptr;
  VertexId target = 0;

  std::vector<VertexId> path;
  std::vector<char> on_path;
  Rational path_weight;

  bool any = false;
  Rational best_weight;            // d2: over all paths
  std::size_t min_hops = 0;        // minimum path length seen
  Rational best_minhop_weight;     // d3: among min-hop paths
  std::vector<VertexId> d1_choice; // min-hop path picked by the tie-break

  void visit(VertexId u) {
    path.push_back(u);
    on_path[u] = 1;
    if (u == target) {
      take(path);
    } else {
      for (VertexId x : g->adjacency()[u]) {
        if (on_path[x]) continue;
        path_weight += g->weight(u, x);
        visit(x);
        path_weight -= g->weight(u, x);
      }
    }
    on_path[u] = 0;
    path.pop_back();
  }

  void take(const std::vector<VertexId>& p) {
    const std::size_t hops = p.size() - 1;
    if (!any || path_weight < best_weight) best_weight = path_weight;
    if (!any || hops < min_hops) {
      min_hops = hops;
      best_minhop_weight = path_weight;
      d1_choice = p;
    } else if (hops == min_hops) {
      if (path_weight < best_minhop_weight) best_minhop_weight = path_weight;
      if (d1_better(p, d1_choice)) d1_choice = p;
    }
    any = true;
  }
};

}  // namespace

BruteForceDistances brute_force_all(const WeightedGraph& g, VertexId v,
                                    VertexId w, int max_vertices) {
  if (g.vertex_count() > max_vertices)
    throw TooLarge("brute-force oracle limited to " +
                   std::to_string(max_vertices) + " vertices, got " +
                   std::to_string(g.vertex_count()));
  if (v < 0 || v >= g.vertex_count() || w < 0 || w >= g.vertex_count())
    throw std::out_of_range("vertex id out of range");
  if (v == w) return {Rational(0), Rational(0), Rational(0)};

  Enumeration e;
  e.g = &g;
  // Enumerate from the smaller endpoint so the d1 tie-break replays the
  // root convention of the fast implementation.
  VertexId root = std::min(v, w);
  e.target = std::max(v, w);
  e.on_path.assign(g.vertex_count(), 0);
  e.path_weight = 0;
  e.visit(root);
  if (!e.any) throw NotConnected("no path between the queried vertices");

  Rational d1_weight = 0;
  for (std::size_t i = 0; i + 1 < e.d1_choice.size(); ++i)
    d1_weight += g.weight(e.d1_choice[i], e.d1_choice[i + 1]);
  return {d1_weight, e.best_weight, e.best_minhop_weight};
}

Rational brute_force_distance(const WeightedGraph& g, VertexId v, VertexId w,
                              DistanceKind kind, int max_vertices) {
  BruteForceDistances all = brute_force_all(g, v, w, max_vertices);
  switch (kind) {
    case DistanceKind::kD1: return all.d1;
    case DistanceKind::kD2: return all.d2;
    case DistanceKind::kD3: return all.d3;
  }
  throw std::logic_error("unreachable distance kind");
}

}  // namespace phml
