#pragma once

// Shared graph fixtures for the test suites. The vertex letters a,b,c,d map
// to ids 0,1,2,3 throughout.

#include <string>
#include <tuple>
#include <vector>

#include "phml/graph.hpp"
#include "phml/persistence.hpp"

namespace phml::test {

using EdgeSpec = std::tuple<VertexId, VertexId, Rational>;

// Unit square as a graph: 4-cycle a-b-c-d-a, all weights 1.
inline WeightedGraph square_unit() {
  return WeightedGraph(4, {EdgeSpec{0, 1, 1}, EdgeSpec{1, 2, 1},
                           EdgeSpec{2, 3, 1}, EdgeSpec{0, 3, 1}});
}

// 4-cycle where one edge undercuts the others: W(ad) = 1/2, rest 1.
inline WeightedGraph shortcut_square() {
  return WeightedGraph(4, {EdgeSpec{0, 1, 1}, EdgeSpec{1, 2, 1},
                           EdgeSpec{2, 3, 1}, EdgeSpec{0, 3, Rational(1, 2)}});
}

// Triangle with W(bc) = 10 and W(ab) = W(ac) = 1.
inline WeightedGraph heavy_triangle() {
  return WeightedGraph(3, {EdgeSpec{0, 1, 1}, EdgeSpec{0, 2, 1},
                           EdgeSpec{1, 2, 10}});
}

// The ordering-sensitivity pair: one abstract 4-cycle carrying weights
// 1, 2, 10, 20 around the loop, under two different vertex labelings.
// Under circular_labeling the loop reads 0-1-2-3-0, so the 1- and 2-weight
// edges lie on the path 0-1-2; under crossed_labeling the loop reads
// 0-3-2-1-0, putting the 20- and 10-weight edges on that path.
inline WeightedGraph ordering_cycle_circular() {
  return WeightedGraph(4, {EdgeSpec{0, 1, 1}, EdgeSpec{1, 2, 2},
                           EdgeSpec{2, 3, 10}, EdgeSpec{0, 3, 20}});
}

inline WeightedGraph ordering_cycle_crossed() {
  return WeightedGraph(4, {EdgeSpec{0, 3, 1}, EdgeSpec{2, 3, 2},
                           EdgeSpec{1, 2, 10}, EdgeSpec{0, 1, 20}});
}

// Relabeling that carries the circular labeling onto the crossed one.
inline std::vector<VertexId> ordering_cycle_permutation() {
  return {0, 3, 2, 1};
}

// Five vertices where the hop-minimal route and the weight-minimal route
// disagree: edges 0-1:5, 1-2:5, 0-3:1, 3-4:1, 4-2:1.
inline WeightedGraph five_node_detour() {
  return WeightedGraph(5, {EdgeSpec{0, 1, 5}, EdgeSpec{1, 2, 5},
                           EdgeSpec{0, 3, 1}, EdgeSpec{3, 4, 1},
                           EdgeSpec{4, 2, 1}});
}

// Hand-built barcode fixture shaped like a two-cycle song report: d1 has
// bars [1/11,1/8] on edge (4,8) and [1/5,1/4] on edge (1,11); d3 and d2
// share only the first bar.
struct SongFixture {
  BarcodeSet b1;
  BarcodeSet b2;
  BarcodeSet b3;
};

inline PersistencePair song_pair(Rational birth, Rational death,
                                 std::vector<VertexId> birth_edge,
                                 std::vector<VertexId> death_tri,
                                 std::vector<VertexId> cycle) {
  PersistencePair p;
  p.dim = 1;
  p.birth = std::move(birth);
  p.death = std::move(death);
  p.birth_simplex = Simplex(std::move(birth_edge));
  p.death_simplex = Simplex(std::move(death_tri));
  p.cycle = std::move(cycle);
  for (std::size_t i = 0; i + 1 < p.cycle.size(); ++i)
    p.cycle_edges.emplace_back(p.cycle[i], p.cycle[i + 1]);
  return p;
}

inline SongFixture song_fixture() {
  SongFixture f;
  const int n = 12;
  f.b1.kind = DistanceKind::kD1;
  f.b2.kind = DistanceKind::kD2;
  f.b3.kind = DistanceKind::kD3;
  f.b1.n = f.b2.n = f.b3.n = n;

  PersistencePair c1 = song_pair(Rational(1, 11), Rational(1, 8), {4, 8},
                                 {2, 7, 8}, {2, 4, 7, 8});
  PersistencePair c2 = song_pair(Rational(1, 5), Rational(1, 4), {1, 11},
                                 {6, 8, 11}, {0, 1, 6, 7, 8, 11});
  f.b1.pairs = {c1, c2};
  f.b2.pairs = {c1};
  f.b3.pairs = {c1};
  return f;
}

}  // namespace phml::test
