#pragma once

#include <functional>
#include <string>
#include <vector>

#include "phml/generators.hpp"
#include "phml/graph.hpp"

namespace phml {

struct Violation {
  std::string check;    // stable identifier, e.g. "distance-inequality", "oracle-d2"
  std::string details;
};

struct InvariantOptions {
  bool with_oracle = true;
  int oracle_bound = 12;
  bool with_persistence = true;
  // The rank-nullity Betti cross-check is cubic in the simplex count; it is
  // skipped above this vertex count.
  int betti_oracle_max_n = 10;
  bool with_transforms = true;
  bool with_permutation = true;
};

// Runs the full invariant suite on one connected graph: distance-matrix
// validity, the d2<=d3<=d1 inequality, d2 metric axioms, brute-force oracle
// agreement, weight-transform identities, per-distance persistence validity
// with the Betti cross-check, the birth-edge inclusions with the injection
// matching, ordering-invariance of d2/d3, and the family special cases
// (trees and uniform structures collapse the three distances). rng feeds
// the randomized sub-checks (table transform, vertex permutation).
std::vector<Violation> check_invariants(const GeneratedGraph& gg, Rng& rng,
                                        const InvariantOptions& options = {});

std::vector<Violation> check_invariants(const WeightedGraph& g, Rng& rng,
                                        const InvariantOptions& options = {});

// Greedily deletes vertices, then edges, while the predicate keeps holding
// and the graph stays connected with no isolated vertex. Deterministic.
WeightedGraph shrink_counterexample(
    const WeightedGraph& g,
    const std::function<bool(const WeightedGraph&)>& still_violates);

}  // namespace phml
