#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phml/persistence.hpp"

namespace phml {

// Classification of a matched H1 bar across the three distances: present in
// all three barcodes, in d3 and d1 only, or in d1 only.
enum class MatchType { kType1, kType2, kType3 };

std::string to_string(MatchType t);

// One pair's view inside a match. The full filtration kills every H1
// class, so deaths are finite in practice; nullopt keeps essential bars
// representable.
struct MatchSide {
  std::optional<Rational> death;
  Simplex death_simplex;
  std::vector<VertexId> cycle;
};

struct InjectionMatch {
  MatchType type = MatchType::kType3;
  Edge birth_edge;
  Rational birth;
  std::optional<MatchSide> in_d2;
  std::optional<MatchSide> in_d3;
  std::optional<MatchSide> in_d1;
};

struct InjectionReport {
  int type_counts[3] = {0, 0, 0};  // Type1, Type2, Type3
  std::vector<InjectionMatch> matches;
  std::vector<std::string> violations;  // empty when the exact relations hold
  // Set when some barcode contained two pairs with one birth edge and the
  // ascending-death fallback was used (not expected to be reachable).
  bool used_duplicate_fallback = false;

  int count(MatchType t) const { return type_counts[static_cast<int>(t)]; }
};

// Birth edges of the positive dim-1 pairs. Zero-length bars are excluded
// throughout this module: they have no extent, their births need not be
// shared across the distances, and the injection structure is defined on
// the positive bars only.
std::set<Edge> birth_edge_set(const BarcodeSet& b);

struct InclusionReport {
  std::vector<Edge> b2_minus_b3;  // birth edges of d2 missing from d3
  std::vector<Edge> b3_minus_b1;  // birth edges of d3 missing from d1
  bool holds() const { return b2_minus_b3.empty() && b3_minus_b1.empty(); }
};

// Checks the birth-edge inclusions B2 <= B3 <= B1. Throws MismatchedInputs
// when the three barcodes do not come from the same graph and ordering.
InclusionReport verify_inclusion(const BarcodeSet& b2, const BarcodeSet& b3,
                                 const BarcodeSet& b1);

// Matches positive H1 pairs across the three barcodes by birth edge and
// classifies each match. Violations of shared birth or of the death
// ordering death_d2 <= death_d3 <= death_d1 are recorded in the report.
// Throws UnmatchedPair when a d2 (resp. d3) pair has no d3 (resp. d1)
// counterpart, which would contradict the injection structure.
InjectionReport build_injection(const BarcodeSet& b2, const BarcodeSet& b3,
                                const BarcodeSet& b1);

// {"types":{"Type1":k1,...},"matches":[...],"violations":[...]}
std::string injection_report_to_json(const InjectionReport& report);
InjectionReport injection_report_from_json(const std::string& text);

// Overlay-plot CSV: header then one `type,kind,birth,death` float row per
// present side of each match.
std::string combined_diagram_csv(const InjectionReport& report);

}  // namespace phml
