#pragma once

#include "phml/distances.hpp"
#include "phml/graph.hpp"

namespace phml {

inline constexpr int kDefaultOracleBound = 12;

// All three distances for one pair, computed by exhaustive enumeration of
// simple paths. Kept independent of the Dijkstra/DAG implementations so it
// can serve as their oracle.
struct BruteForceDistances {
  Rational d1;
  Rational d2;
  Rational d3;
};

// Enumerates every simple path between v and w. d2 is the minimum total
// weight over all of them; d3 the minimum weight among minimum-hop ones;
// d1 replays the documented ordering tie-break: among minimum-hop paths
// from root min(v,w), the one whose vertex sequence read from the far
// endpoint back to the root is lexicographically smallest.
// Throws TooLarge when the graph exceeds max_vertices.
BruteForceDistances brute_force_all(const WeightedGraph& g, VertexId v,
                                    VertexId w,
                                    int max_vertices = kDefaultOracleBound);

Rational brute_force_distance(const WeightedGraph& g, VertexId v, VertexId w,
                              DistanceKind kind,
                              int max_vertices = kDefaultOracleBound);

}  // namespace phml
