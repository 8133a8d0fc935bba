#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "phml/graph.hpp"

namespace phml {

// Deterministic RNG facade. mt19937_64 is fully specified by the standard
// and the sampling below avoids std::uniform_int_distribution, whose output
// is implementation-defined, so equal seeds give equal graphs everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi], inclusive.
  long uniform(long lo, long hi);
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

enum class GraphFamily {
  kRandomConnected,  // random spanning tree plus up to n extra edges
  kTree,
  kCycle,            // odd or even order; sometimes uniformly weighted
  kComplete,         // sometimes uniformly weighted
  kMusicChain,       // note sequence walk run through build_graph
};

std::string to_string(GraphFamily family);
GraphFamily family_from_string(const std::string& s);

// Random weight in the frequency-reciprocal style: 1/k, k uniform in [1,12].
Rational random_weight(Rng& rng);

struct GeneratedGraph {
  WeightedGraph graph;
  GraphFamily family;
  bool uniform_weights = false;  // all edges share one weight value
};

// Draws a connected graph of the family with n in [n_min, n_max]; every
// choice comes from rng, so (family, n_min, n_max, seed) replays exactly.
GeneratedGraph random_graph(GraphFamily family, int n_min, int n_max, Rng& rng);

}  // namespace phml
