#pragma once

#include <array>
#include <string>
#include <vector>

#include "phml/graph.hpp"
#include "phml/rational.hpp"

namespace phml {

enum class DistanceKind { kD1, kD2, kD3 };

std::string to_string(DistanceKind kind);
DistanceKind distance_kind_from_string(const std::string& s);

// A concrete path realizing a distance value; vertices run from the query's
// first endpoint to the second, empty for v == w.
struct PathWitness {
  std::vector<VertexId> vertices;
  int hops = 0;
  Rational total_weight;
};

// Symmetric all-pairs matrix of one of the three distances, tied to the
// vertex ordering it was computed under.
struct DistanceMatrix {
  int n = 0;
  DistanceKind kind = DistanceKind::kD2;
  std::vector<std::string> ordering;  // vertex labels, may be empty
  std::vector<Rational> entries;      // row-major, n*n

  const Rational& at(int i, int j) const { return entries[i * n + j]; }
  Rational& at(int i, int j) { return entries[i * n + j]; }
};

// d1: the minimum-hop path made unique by the vertex ordering.
//
// Tie-break: in the breadth-first search the frontier pops the smallest
// VertexId first, so a vertex's parent is the smallest-indexed neighbor in
// the previous layer. A query (v, w) is answered from the tree rooted at
// min(v, w), hence (v, w) and (w, v) share one path and d1 is symmetric.
PathWitness d1_path(const WeightedGraph& g, VertexId v, VertexId w);
Rational d1(const WeightedGraph& g, VertexId v, VertexId w);

// d2: minimum total weight over all paths (weighted Dijkstra). The value is
// unique; the witness is one deterministic minimizer.
Rational d2(const WeightedGraph& g, VertexId v, VertexId w);
PathWitness d2_path(const WeightedGraph& g, VertexId v, VertexId w);

// d3: minimum total weight among minimum-hop paths, via the BFS-layered
// shortest-path DAG and a dynamic program over its layers.
Rational d3(const WeightedGraph& g, VertexId v, VertexId w);
PathWitness d3_path(const WeightedGraph& g, VertexId v, VertexId w);

// All-pairs matrix; sources run in parallel, result independent of schedule.
DistanceMatrix all_pairs(const WeightedGraph& g, DistanceKind kind);

struct MetricReport {
  bool symmetric = false;
  bool zero_diagonal = false;
  // Triples (v, z, w) with d(v,w) > d(v,z) + d(z,w), v < w.
  std::vector<std::array<int, 3>> triangle_violations;

  bool is_metric() const {
    return symmetric && zero_diagonal && triangle_violations.empty();
  }
};

// Exhaustive triangle-inequality check over all triples.
MetricReport metric_check(const DistanceMatrix& D);

// Matrix CSV: n rows of n exact rational strings.
std::string matrix_to_csv(const DistanceMatrix& D);
DistanceMatrix matrix_from_csv(const std::string& text, DistanceKind kind);

// Float-rendered copy of the matrix for heatmap plotting.
std::string heatmap_to_csv(const DistanceMatrix& D);
std::vector<std::vector<double>> heatmap_from_csv(const std::string& text);

}  // namespace phml
