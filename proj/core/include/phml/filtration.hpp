#pragma once

#include <compare>
#include <iosfwd>
#include <vector>

#include "phml/distances.hpp"
#include "phml/rational.hpp"

namespace phml {

// Simplex of dimension 0..2 with strictly increasing vertex ids.
struct Simplex {
  std::vector<VertexId> vertices;

  Simplex() = default;
  explicit Simplex(std::vector<VertexId> vs);

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  // The (dim-1)-faces, in lexicographic order.
  std::vector<Simplex> faces() const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

struct FiltrationEntry {
  Simplex simplex;
  Rational value;
};

// Totally ordered simplex stream: values non-decreasing, faces before
// cofaces, vertices at value 0.
struct Filtration {
  int n = 0;
  std::vector<FiltrationEntry> entries;
};

// Vietoris-Rips clique filtration of the full matrix, dimensions 0..2:
// vertex {v} at 0, edge {u,v} at D[u][v], triangle at the max of its three
// edge values. Total order: value ascending, then dimension, then
// lexicographic vertex tuple. No distance threshold is applied, so the
// stream has n + C(n,2) + C(n,3) simplices.
//
// D may violate the triangle inequality (d1/d3 do); the construction only
// needs symmetry, a zero diagonal and positive off-diagonal entries.
Filtration build_filtration(const DistanceMatrix& D);

// Post-hoc check that every face of every simplex precedes it and values
// never decrease along the order.
bool faces_first(const Filtration& f);

// Debug dump, one simplex per line: value<TAB>v0[,v1[,v2]]
void dump_filtration(const Filtration& f, std::ostream& out);

}  // namespace phml
