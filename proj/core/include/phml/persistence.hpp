#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phml/filtration.hpp"
#include "phml/graph.hpp"

namespace phml {

// Result of reducing the filtered boundary matrix over Z/2 by the Standard
// Algorithm (plain left-to-right column reduction, no clearing/twist).
// Columns are sorted lists of filtration positions. r_columns is the reduced
// matrix R; v_columns the basis change V with R = boundary * V, V
// upper-triangular with unit diagonal.
struct ReducedMatrix {
  std::vector<std::vector<int>> r_columns;
  std::vector<std::vector<int>> v_columns;
  std::vector<int> low;           // low_R(j), or -1 for a zero column
  std::vector<int> killer_of;     // j with low_R(j) = i, or -1
};

ReducedMatrix reduce(const Filtration& f);

// The original (unreduced) boundary columns; column j holds the filtration
// positions of the faces of simplex j.
std::vector<std::vector<int>> boundary_columns(const Filtration& f);

struct PersistencePair {
  int dim = 0;
  Simplex birth_simplex;
  std::optional<Simplex> death_simplex;  // nullopt: essential
  Rational birth;
  std::optional<Rational> death;         // nullopt: +infinity
  std::vector<VertexId> cycle;           // dim-1 pairs: representative's vertex set
  std::vector<Edge> cycle_edges;         // dim-1 pairs: representative's edge chain

  bool is_essential() const { return !death.has_value(); }
  bool zero_persistence() const { return death.has_value() && *death == birth; }
  // Essential or strictly positive length; zero-length bars are retained in
  // the barcode but carry no homological content at any scale.
  bool is_positive() const { return is_essential() || *death > birth; }
};

struct BarcodeSet {
  DistanceKind kind = DistanceKind::kD2;
  int n = 0;
  std::vector<std::string> ordering;  // vertex labels, may be empty
  std::vector<PersistencePair> pairs;

  std::vector<const PersistencePair*> dim_pairs(int dim,
                                                bool positive_only) const;
};

// Reads persistence pairs for dimensions 0 and 1 off the reduced matrix.
// The dim-1 cycle representative is the V-column of the birth edge (its
// R-column is zero, so the chain is a genuine cycle containing the edge).
BarcodeSet extract_pairs(const Filtration& f, const ReducedMatrix& rm,
                         DistanceKind kind,
                         std::vector<std::string> ordering = {});

// Convenience: reduce + extract.
BarcodeSet barcode_of(const DistanceMatrix& D);

// Independent Betti oracle: restricts the complex to simplices with value
// <= epsilon, builds the boundary maps from scratch and returns
// nullity(d_dim) - rank(d_{dim+1}) by dense Z/2 Gaussian elimination. Shares
// no code with reduce().
int betti_at(const Filtration& f, int dim, const Rational& epsilon);

// True when the edge chain is a Z/2 cycle: every vertex meets an even
// number of chain edges.
bool is_z2_cycle(const std::vector<Edge>& chain);

// Barcode JSON, one object per pair; "death" is "inf" for essential pairs,
// zero-length pairs carry "zero": true, dim-1 pairs carry the cycle.
std::string barcode_to_json(const BarcodeSet& b);
BarcodeSet barcode_from_json(const std::string& text);

// Plot-ready diagram: header then one `dim,birth,death` float row per pair.
std::string diagram_to_csv(const BarcodeSet& b);
// Parses the diagram back as (dim, birth, death) float triples.
std::vector<std::array<double, 3>> diagram_from_csv(const std::string& text);

}  // namespace phml
