#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "phml/rational.hpp"

namespace phml {

// Index into the fixed vertex ordering v0 < v1 < ... < v(n-1). The ordering
// is part of the graph value, never an artifact of storage order.
using VertexId = int;

// Undirected edge in canonical form (u < v).
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Connected-or-not weighted undirected graph with strictly positive exact
// rational weights. Immutable after construction; safe to share across
// threads.
class WeightedGraph {
 public:
  // Validates: ids in [0,n), no self-loops, no duplicate edges, weights > 0,
  // no isolated vertex. `labels` is either empty or one label per vertex.
  WeightedGraph(int vertex_count,
                std::vector<std::tuple<VertexId, VertexId, Rational>> edges,
                std::vector<std::string> labels = {});

  int vertex_count() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(VertexId u, VertexId v) const;
  const Rational& weight(VertexId u, VertexId v) const;
  const Rational& weight(const Edge& e) const { return weight(e.u, e.v); }

  // Neighbor lists sorted by ascending VertexId.
  const std::vector<std::vector<VertexId>>& adjacency() const { return adj_; }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

 private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;               // sorted lexicographically
  std::vector<Rational> weights_;         // parallel to edges_
  std::vector<std::vector<VertexId>> adj_;

  std::size_t edge_index(VertexId u, VertexId v) const;
};

// Edgewise weight substitution (the composition operator, applied per edge).
struct WeightTransform {
  enum class Kind { kReciprocal, kScalarMultiply, kTable };

  Kind kind = Kind::kReciprocal;
  Rational scalar;                 // kScalarMultiply
  std::map<Edge, Rational> table;  // kTable: edge -> replacement value

  static WeightTransform reciprocal();
  static WeightTransform scalar_multiply(Rational c);
  static WeightTransform from_table(std::map<Edge, Rational> t);

  Rational operator()(const Edge& e, const Rational& w) const;
};

// True iff every vertex is reachable from vertex 0.
bool is_connected(const WeightedGraph& g);

// Same vertices and edges, weights replaced by t(e, w). Throws
// NonPositiveWeight if any transformed weight is <= 0.
WeightedGraph apply_transform(const WeightedGraph& g, const WeightTransform& t);

// Induced subgraph on the largest connected component (ties broken toward
// the component containing the smallest vertex), vertices reindexed but
// keeping their relative order.
WeightedGraph largest_component(const WeightedGraph& g);

// Relabels vertices: old id i becomes perm[i]. perm must be a permutation
// of 0..n-1. Edge set and weights follow the relabeling.
WeightedGraph permute_vertices(const WeightedGraph& g,
                               const std::vector<VertexId>& perm);

// Graph JSON:
//   {"vertices":[{"id":0,"label":"(60,1/4)"},...],
//    "edges":[{"u":0,"v":1,"weight":"1/3"},...]}
// Weights are exact rational strings. "label" is omitted when empty.
std::string graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const std::string& json_text);
WeightedGraph load_graph(const std::string& path);
void save_graph(const WeightedGraph& g, const std::string& path);

}  // namespace phml
