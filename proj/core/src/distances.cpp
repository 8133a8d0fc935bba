#include "phml/distances.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

#include "phml/detail/parallel.hpp"
#include "phml/errors.hpp"

namespace phml {

std::string to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kD1: return "d1";
    case DistanceKind::kD2: return "d2";
    case DistanceKind::kD3: return "d3";
  }
  return "?";
}

DistanceKind distance_kind_from_string(const std::string& s) {
  if (s == "d1") return DistanceKind::kD1;
  if (s == "d2") return DistanceKind::kD2;
  if (s == "d3") return DistanceKind::kD3;
  throw ParseError("unknown distance kind: '" + s + "' (want d1|d2|d3)");
}

namespace {

constexpr int kUnreached = -1;

// Hop counts from root by plain BFS.
std::vector<int> bfs_hops(const WeightedGraph& g, VertexId root) {
  std::vector<int> hops(g.vertex_count(), kUnreached);
  std::queue<VertexId> q;
  hops[root] = 0;
  q.push(root);
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    for (VertexId x : g.adjacency()[u])
      if (hops[x] == kUnreached) {
        hops[x] = hops[u] + 1;
        q.push(x);
      }
  }
  for (int h : hops)
    if (h == kUnreached) throw NotConnected("graph is not connected");
  return hops;
}

// The d1 tree: parent[x] is the smallest-indexed neighbor one layer closer
// to the root, i.e. the vertex that reaches x first when the BFS frontier
// pops ids in ascending order.
std::vector<VertexId> d1_parents(const WeightedGraph& g, VertexId root,
                                 const std::vector<int>& hops) {
  std::vector<VertexId> parent(g.vertex_count(), kUnreached);
  for (VertexId x = 0; x < g.vertex_count(); ++x) {
    if (x == root) continue;
    for (VertexId u : g.adjacency()[x])  // ascending ids
      if (hops[u] == hops[x] - 1) {
        parent[x] = u;
        break;
      }
  }
  return parent;
}

PathWitness witness_from_parents(const WeightedGraph& g,
                                 const std::vector<VertexId>& parent,
                                 VertexId root, VertexId v, VertexId w) {
  PathWitness out;
  if (v == w) {
    out.total_weight = 0;
    return out;
  }
  VertexId far = (root == v) ? w : v;
  std::vector<VertexId> back;
  for (VertexId x = far; x != root; x = parent[x]) back.push_back(x);
  back.push_back(root);
  // back runs far -> root; orient from v to w.
  if (far == w) std::reverse(back.begin(), back.end());
  out.vertices = std::move(back);
  out.hops = static_cast<int>(out.vertices.size()) - 1;
  out.total_weight = 0;
  for (std::size_t i = 0; i + 1 < out.vertices.size(); ++i)
    out.total_weight += g.weight(out.vertices[i], out.vertices[i + 1]);
  return out;
}

// O(n^2) Dijkstra; ties in the extraction step go to the smallest id, and a
// parent only changes on strict improvement, so the witness is
// deterministic. The distance values do not depend on these choices.
struct DijkstraResult {
  std::vector<Rational> dist;
  std::vector<VertexId> parent;
  std::vector<char> done;
};

DijkstraResult dijkstra(const WeightedGraph& g, VertexId source) {
  const int n = g.vertex_count();
  DijkstraResult r;
  r.dist.assign(n, Rational(0));
  r.parent.assign(n, kUnreached);
  r.done.assign(n, 0);
  std::vector<char> seen(n, 0);
  seen[source] = 1;
  for (int round = 0; round < n; ++round) {
    VertexId u = kUnreached;
    for (VertexId x = 0; x < n; ++x) {
      if (!seen[x] || r.done[x]) continue;
      if (u == kUnreached || r.dist[x] < r.dist[u]) u = x;
    }
    if (u == kUnreached) break;
    r.done[u] = 1;
    for (VertexId x : g.adjacency()[u]) {
      if (r.done[x]) continue;
      Rational cand = r.dist[u] + g.weight(u, x);
      if (!seen[x] || cand < r.dist[x]) {
        seen[x] = 1;
        r.dist[x] = std::move(cand);
        r.parent[x] = u;
      }
    }
  }
  for (int x = 0; x < n; ++x)
    if (!r.done[x]) throw NotConnected("graph is not connected");
  return r;
}

// Minimum weight among minimum-hop paths: restrict to the BFS shortest-path
// DAG (edges that advance one layer) and fold layer by layer.
struct HopDpResult {
  std::vector<int> hops;
  std::vector<Rational> min_weight;
  std::vector<VertexId> parent;
};

HopDpResult d3_dp(const WeightedGraph& g, VertexId source) {
  const int n = g.vertex_count();
  HopDpResult r;
  r.hops = bfs_hops(g, source);
  r.min_weight.assign(n, Rational(0));
  r.parent.assign(n, kUnreached);

  std::vector<VertexId> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return r.hops[a] != r.hops[b] ? r.hops[a] < r.hops[b] : a < b;
  });

  for (VertexId x : order) {
    if (x == source) continue;
    bool first = true;
    for (VertexId u : g.adjacency()[x]) {
      if (r.hops[u] != r.hops[x] - 1) continue;
      Rational cand = r.min_weight[u] + g.weight(u, x);
      if (first || cand < r.min_weight[x]) {
        r.min_weight[x] = std::move(cand);
        r.parent[x] = u;
        first = false;
      }
    }
  }
  return r;
}

void require_valid_pair(const WeightedGraph& g, VertexId v, VertexId w) {
  if (v < 0 || v >= g.vertex_count() || w < 0 || w >= g.vertex_count())
    throw std::out_of_range("vertex id out of range");
}

}  // namespace

PathWitness d1_path(const WeightedGraph& g, VertexId v, VertexId w) {
  require_valid_pair(g, v, w);
  if (v == w) return PathWitness{{}, 0, Rational(0)};
  VertexId root = std::min(v, w);
  auto hops = bfs_hops(g, root);
  auto parent = d1_parents(g, root, hops);
  return witness_from_parents(g, parent, root, v, w);
}

Rational d1(const WeightedGraph& g, VertexId v, VertexId w) {
  return d1_path(g, v, w).total_weight;
}

Rational d2(const WeightedGraph& g, VertexId v, VertexId w) {
  require_valid_pair(g, v, w);
  if (v == w) return Rational(0);
  return dijkstra(g, std::min(v, w)).dist[std::max(v, w)];
}

PathWitness d2_path(const WeightedGraph& g, VertexId v, VertexId w) {
  require_valid_pair(g, v, w);
  if (v == w) return PathWitness{{}, 0, Rational(0)};
  VertexId root = std::min(v, w);
  auto r = dijkstra(g, root);
  return witness_from_parents(g, r.parent, root, v, w);
}

Rational d3(const WeightedGraph& g, VertexId v, VertexId w) {
  require_valid_pair(g, v, w);
  if (v == w) return Rational(0);
  return d3_dp(g, std::min(v, w)).min_weight[std::max(v, w)];
}

PathWitness d3_path(const WeightedGraph& g, VertexId v, VertexId w) {
  require_valid_pair(g, v, w);
  if (v == w) return PathWitness{{}, 0, Rational(0)};
  VertexId root = std::min(v, w);
  auto r = d3_dp(g, root);
  return witness_from_parents(g, r.parent, root, v, w);
}

DistanceMatrix all_pairs(const WeightedGraph& g, DistanceKind kind) {
  const int n = g.vertex_count();
  DistanceMatrix D;
  D.n = n;
  D.kind = kind;
  D.ordering = g.labels();
  D.entries.assign(static_cast<std::size_t>(n) * n, Rational(0));

  // Root r serves exactly the pairs (r, w) with w > r, matching the
  // min-endpoint convention of the single-pair queries.
  detail::parallel_for_index(n, [&](int r) {
    switch (kind) {
      case DistanceKind::kD1: {
        auto hops = bfs_hops(g, r);
        auto parent = d1_parents(g, r, hops);
        for (VertexId w = r + 1; w < n; ++w)
          D.at(r, w) = witness_from_parents(g, parent, r, r, w).total_weight;
        break;
      }
      case DistanceKind::kD2: {
        auto res = dijkstra(g, r);
        for (VertexId w = r + 1; w < n; ++w) D.at(r, w) = res.dist[w];
        break;
      }
      case DistanceKind::kD3: {
        auto res = d3_dp(g, r);
        for (VertexId w = r + 1; w < n; ++w) D.at(r, w) = res.min_weight[w];
        break;
      }
    }
  });

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) D.at(j, i) = D.at(i, j);
  return D;
}

MetricReport metric_check(const DistanceMatrix& D) {
  MetricReport report;
  report.symmetric = true;
  report.zero_diagonal = true;
  for (int i = 0; i < D.n; ++i) {
    if (D.at(i, i) != 0) report.zero_diagonal = false;
    for (int j = i + 1; j < D.n; ++j)
      if (D.at(i, j) != D.at(j, i)) report.symmetric = false;
  }
  for (int v = 0; v < D.n; ++v)
    for (int w = v + 1; w < D.n; ++w)
      for (int z = 0; z < D.n; ++z) {
        if (z == v || z == w) continue;
        if (D.at(v, w) > D.at(v, z) + D.at(z, w))
          report.triangle_violations.push_back({v, z, w});
      }
  return report;
}

std::string matrix_to_csv(const DistanceMatrix& D) {
  std::ostringstream out;
  for (int i = 0; i < D.n; ++i) {
    for (int j = 0; j < D.n; ++j) {
      if (j) out << ',';
      out << rational_to_string(D.at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

DistanceMatrix matrix_from_csv(const std::string& text, DistanceKind kind) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<Rational>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Rational> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(parse_rational(cell));
    rows.push_back(std::move(row));
  }
  DistanceMatrix D;
  D.n = static_cast<int>(rows.size());
  D.kind = kind;
  D.entries.reserve(static_cast<std::size_t>(D.n) * D.n);
  for (auto& row : rows) {
    if (static_cast<int>(row.size()) != D.n)
      throw ParseError("matrix CSV is not square");
    for (auto& cell : row) D.entries.push_back(std::move(cell));
  }
  return D;
}

std::string heatmap_to_csv(const DistanceMatrix& D) {
  std::ostringstream out;
  for (int i = 0; i < D.n; ++i) {
    for (int j = 0; j < D.n; ++j) {
      if (j) out << ',';
      out << double_repr(rational_to_double(D.at(i, j)));
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::vector<double>> heatmap_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  for (const auto& row : rows)
    if (row.size() != rows.size()) throw ParseError("heatmap CSV is not square");
  return rows;
}

}  // namespace phml
