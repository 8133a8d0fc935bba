#include "phml/generators.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "phml/errors.hpp"
#include "phml/notes.hpp"

namespace phml {

long Rng::uniform(long lo, long hi) {
  if (lo > hi) throw std::invalid_argument("uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection sampling keeps the draw unbiased and fully determined by the
  // engine stream.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<long>(x % span);
}

std::string to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::kRandomConnected: return "random";
    case GraphFamily::kTree: return "tree";
    case GraphFamily::kCycle: return "cycle";
    case GraphFamily::kComplete: return "complete";
    case GraphFamily::kMusicChain: return "music-chain";
  }
  return "?";
}

GraphFamily family_from_string(const std::string& s) {
  if (s == "random") return GraphFamily::kRandomConnected;
  if (s == "tree") return GraphFamily::kTree;
  if (s == "cycle") return GraphFamily::kCycle;
  if (s == "complete") return GraphFamily::kComplete;
  if (s == "music-chain") return GraphFamily::kMusicChain;
  throw ParseError("unknown graph family: '" + s +
                   "' (want random|tree|cycle|complete|music-chain)");
}

Rational random_weight(Rng& rng) {
  return Rational(1, static_cast<unsigned long>(rng.uniform(1, 12)));
}

namespace {

using EdgeList = std::vector<std::tuple<VertexId, VertexId, Rational>>;

EdgeList random_tree_edges(int n, Rng& rng) {
  EdgeList edges;
  for (int v = 1; v < n; ++v)
    edges.emplace_back(static_cast<VertexId>(rng.uniform(0, v - 1)), v,
                       random_weight(rng));
  return edges;
}

GeneratedGraph make(WeightedGraph g, GraphFamily family, bool uniform) {
  return GeneratedGraph{std::move(g), family, uniform};
}

}  // namespace

GeneratedGraph random_graph(GraphFamily family, int n_min, int n_max,
                            Rng& rng) {
  if (n_min < 2 || n_max < n_min)
    throw std::invalid_argument("invalid vertex count range");
  int n = static_cast<int>(rng.uniform(n_min, n_max));

  switch (family) {
    case GraphFamily::kTree: {
      if (n < 2) n = 2;
      return make(WeightedGraph(n, random_tree_edges(n, rng)),
                  family, false);
    }
    case GraphFamily::kRandomConnected: {
      if (n < 2) n = 2;
      EdgeList edges = random_tree_edges(n, rng);
      std::set<Edge> present;
      for (auto& [u, v, w] : edges) present.insert(Edge(u, v));
      const long max_extra =
          std::min<long>(n, static_cast<long>(n) * (n - 1) / 2 - (n - 1));
      // Bounded density keeps the simple-path enumeration oracle tractable
      // on the fuzz corpus.
      long extra = max_extra > 0 ? rng.uniform(0, max_extra) : 0;
      while (extra > 0) {
        VertexId u = static_cast<VertexId>(rng.uniform(0, n - 1));
        VertexId v = static_cast<VertexId>(rng.uniform(0, n - 1));
        if (u == v || present.count(Edge(u, v))) continue;
        present.insert(Edge(u, v));
        edges.emplace_back(u, v, random_weight(rng));
        --extra;
      }
      return make(WeightedGraph(n, std::move(edges)), family, false);
    }
    case GraphFamily::kCycle: {
      if (n < 3) n = 3;
      const bool uniform = rng.coin();
      const Rational shared = random_weight(rng);
      EdgeList edges;
      for (int v = 0; v < n; ++v)
        edges.emplace_back(v, (v + 1) % n,
                           uniform ? shared : random_weight(rng));
      return make(WeightedGraph(n, std::move(edges)), family, uniform);
    }
    case GraphFamily::kComplete: {
      if (n < 3) n = 3;
      const bool uniform = rng.coin();
      const Rational shared = random_weight(rng);
      EdgeList edges;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          edges.emplace_back(u, v, uniform ? shared : random_weight(rng));
      return make(WeightedGraph(n, std::move(edges)), family, uniform);
    }
    case GraphFamily::kMusicChain: {
      if (n < 2) n = 2;
      // Distinct (pitch, duration) prototypes; the walk first visits each
      // one so every prototype becomes a vertex, then wanders.
      std::vector<NoteEvent> prototypes;
      static const long kDenominators[] = {1, 2, 4, 8};
      for (int i = 0; i < n; ++i)
        prototypes.push_back(NoteEvent{
            Pitch(static_cast<long>(48 + i)),
            Rational(1, static_cast<unsigned long>(
                            kDenominators[rng.uniform(0, 3)]))});
      NoteSequence seq;
      for (int i = 0; i < n; ++i) seq.events.push_back(prototypes[i]);
      const long steps = rng.uniform(2L * n, 4L * n);
      for (long s = 0; s < steps; ++s)
        seq.events.push_back(prototypes[rng.uniform(0, n - 1)]);
      return make(build_graph(seq), family, false);
    }
  }
  throw std::logic_error("unreachable graph family");
}

}  // namespace phml
