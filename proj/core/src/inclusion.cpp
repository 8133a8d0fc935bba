#include "phml/inclusion.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phml/errors.hpp"

namespace phml {

std::string to_string(MatchType t) {
  switch (t) {
    case MatchType::kType1: return "Type1";
    case MatchType::kType2: return "Type2";
    case MatchType::kType3: return "Type3";
  }
  return "?";
}

namespace {

MatchType match_type_from_string(const std::string& s) {
  if (s == "Type1") return MatchType::kType1;
  if (s == "Type2") return MatchType::kType2;
  if (s == "Type3") return MatchType::kType3;
  throw ParseError("unknown match type: '" + s + "'");
}

Edge birth_edge_of(const PersistencePair& p) {
  return Edge(p.birth_simplex.vertices[0], p.birth_simplex.vertices[1]);
}

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

void require_same_graph(const BarcodeSet& a, const BarcodeSet& b) {
  if (a.n != b.n)
    throw MismatchedInputs("barcodes computed on different vertex counts (" +
                           std::to_string(a.n) + " vs " + std::to_string(b.n) +
                           ")");
  if (!a.ordering.empty() && !b.ordering.empty() && a.ordering != b.ordering)
    throw MismatchedInputs("barcodes computed under different vertex orderings");
}

// death(a) <= death(b), with a missing death meaning +infinity.
bool death_le(const std::optional<Rational>& a,
              const std::optional<Rational>& b) {
  if (!b) return true;
  if (!a) return false;
  return *a <= *b;
}

// Positive dim-1 pairs keyed by birth edge. The Standard Algorithm gives
// each creator simplex at most one pair, so the per-edge lists are
// singletons; should a degenerate input ever produce duplicates they are
// aligned by ascending death and the fallback is flagged.
std::map<Edge, std::vector<const PersistencePair*>> by_birth_edge(
    const BarcodeSet& b, bool* used_fallback) {
  std::map<Edge, std::vector<const PersistencePair*>> out;
  for (const PersistencePair* p : b.dim_pairs(1, /*positive_only=*/true))
    out[birth_edge_of(*p)].push_back(p);
  for (auto& [edge, pairs] : out) {
    if (pairs.size() <= 1) continue;
    *used_fallback = true;
    std::sort(pairs.begin(), pairs.end(),
              [](const PersistencePair* x, const PersistencePair* y) {
                if (x->death.has_value() != y->death.has_value())
                  return x->death.has_value();  // finite deaths first
                if (x->death && y->death && *x->death != *y->death)
                  return *x->death < *y->death;
                return x->birth < y->birth;
              });
  }
  return out;
}

MatchSide side_of(const PersistencePair& p) {
  MatchSide s;
  s.death = p.death;
  if (p.death_simplex) s.death_simplex = *p.death_simplex;
  s.cycle = p.cycle;
  return s;
}

}  // namespace

std::set<Edge> birth_edge_set(const BarcodeSet& b) {
  std::set<Edge> out;
  for (const PersistencePair* p : b.dim_pairs(1, /*positive_only=*/true))
    out.insert(birth_edge_of(*p));
  return out;
}

InclusionReport verify_inclusion(const BarcodeSet& b2, const BarcodeSet& b3,
                                 const BarcodeSet& b1) {
  require_same_graph(b2, b3);
  require_same_graph(b3, b1);

  InclusionReport report;
  std::set<Edge> e2 = birth_edge_set(b2);
  std::set<Edge> e3 = birth_edge_set(b3);
  std::set<Edge> e1 = birth_edge_set(b1);
  for (const Edge& e : e2)
    if (!e3.count(e)) report.b2_minus_b3.push_back(e);
  for (const Edge& e : e3)
    if (!e1.count(e)) report.b3_minus_b1.push_back(e);
  return report;
}

InjectionReport build_injection(const BarcodeSet& b2, const BarcodeSet& b3,
                                const BarcodeSet& b1) {
  require_same_graph(b2, b3);
  require_same_graph(b3, b1);

  InjectionReport report;
  auto m2 = by_birth_edge(b2, &report.used_duplicate_fallback);
  auto m3 = by_birth_edge(b3, &report.used_duplicate_fallback);
  auto m1 = by_birth_edge(b1, &report.used_duplicate_fallback);

  for (const auto& [edge, pairs] : m2)
    if (!m3.count(edge))
      throw UnmatchedPair("d2 pair with birth edge " + edge_str(edge) +
                          " has no d3 counterpart");
  for (const auto& [edge, pairs] : m3)
    if (!m1.count(edge))
      throw UnmatchedPair("d3 pair with birth edge " + edge_str(edge) +
                          " has no d1 counterpart");

  for (const auto& [edge, pairs1] : m1) {
    const auto it2 = m2.find(edge);
    const auto it3 = m3.find(edge);
    const auto& pairs2 =
        it2 == m2.end() ? std::vector<const PersistencePair*>{} : it2->second;
    const auto& pairs3 =
        it3 == m3.end() ? std::vector<const PersistencePair*>{} : it3->second;
    if (pairs2.size() > pairs3.size() || pairs3.size() > pairs1.size())
      throw UnmatchedPair("birth edge " + edge_str(edge) +
                          " carries more downstream pairs than the injections "
                          "allow");

    for (std::size_t i = 0; i < pairs1.size(); ++i) {
      const PersistencePair& p1 = *pairs1[i];
      const PersistencePair* p3 = i < pairs3.size() ? pairs3[i] : nullptr;
      const PersistencePair* p2 = i < pairs2.size() ? pairs2[i] : nullptr;

      InjectionMatch m;
      m.birth_edge = edge;
      m.birth = p1.birth;
      m.in_d1 = side_of(p1);
      if (p3) m.in_d3 = side_of(*p3);
      if (p2) m.in_d2 = side_of(*p2);
      m.type = p2   ? MatchType::kType1
               : p3 ? MatchType::kType2
                    : MatchType::kType3;

      if (p3 && p3->birth != p1.birth)
        report.violations.push_back("birth mismatch d3 vs d1 at " +
                                    edge_str(edge));
      if (p2 && p3 && p2->birth != p3->birth)
        report.violations.push_back("birth mismatch d2 vs d3 at " +
                                    edge_str(edge));
      if (p3 && !death_le(p3->death, p1.death))
        report.violations.push_back("death(d3) > death(d1) at " +
                                    edge_str(edge));
      if (p2 && p3 && !death_le(p2->death, p3->death))
        report.violations.push_back("death(d2) > death(d3) at " +
                                    edge_str(edge));
      report.matches.push_back(std::move(m));
    }
  }

  // Report order: fully shared bars first, then d3/d1-only, then
  // d1-only, by birth inside each group.
  std::sort(report.matches.begin(), report.matches.end(),
            [](const InjectionMatch& a, const InjectionMatch& b) {
              if (a.type != b.type)
                return static_cast<int>(a.type) < static_cast<int>(b.type);
              if (a.birth != b.birth) return a.birth < b.birth;
              return a.birth_edge < b.birth_edge;
            });
  for (const auto& m : report.matches)
    ++report.type_counts[static_cast<int>(m.type)];
  return report;
}

namespace {

nlohmann::ordered_json side_to_json(const MatchSide& s) {
  nlohmann::ordered_json j;
  j["death"] = s.death ? rational_to_string(*s.death) : "inf";
  if (!s.death_simplex.vertices.empty())
    j["death_simplex"] = s.death_simplex.vertices;
  if (!s.cycle.empty()) j["cycle"] = s.cycle;
  return j;
}

MatchSide side_from_json(const nlohmann::json& j) {
  MatchSide s;
  if (std::string d = j.at("death").get<std::string>(); d != "inf")
    s.death = parse_rational(d);
  if (j.contains("death_simplex"))
    s.death_simplex = Simplex(j["death_simplex"].get<std::vector<int>>());
  if (j.contains("cycle")) s.cycle = j["cycle"].get<std::vector<int>>();
  return s;
}

}  // namespace

std::string injection_report_to_json(const InjectionReport& report) {
  nlohmann::ordered_json out;
  out["types"] = {{"Type1", report.count(MatchType::kType1)},
                  {"Type2", report.count(MatchType::kType2)},
                  {"Type3", report.count(MatchType::kType3)}};
  out["matches"] = nlohmann::ordered_json::array();
  for (const auto& m : report.matches) {
    nlohmann::ordered_json jm;
    jm["type"] = to_string(m.type);
    jm["birth_edge"] = {m.birth_edge.u, m.birth_edge.v};
    jm["birth"] = rational_to_string(m.birth);
    if (m.in_d2) jm["d2"] = side_to_json(*m.in_d2);
    if (m.in_d3) jm["d3"] = side_to_json(*m.in_d3);
    if (m.in_d1) jm["d1"] = side_to_json(*m.in_d1);
    out["matches"].push_back(std::move(jm));
  }
  out["violations"] = report.violations;
  if (report.used_duplicate_fallback) out["duplicate_fallback"] = true;
  return out.dump(2) + "\n";
}

InjectionReport injection_report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("injection report JSON: ") + e.what());
  }
  InjectionReport report;
  for (const auto& jm : j.at("matches")) {
    InjectionMatch m;
    m.type = match_type_from_string(jm.at("type").get<std::string>());
    auto be = jm.at("birth_edge").get<std::vector<int>>();
    m.birth_edge = Edge(be.at(0), be.at(1));
    m.birth = parse_rational(jm.at("birth").get<std::string>());
    if (jm.contains("d2")) m.in_d2 = side_from_json(jm["d2"]);
    if (jm.contains("d3")) m.in_d3 = side_from_json(jm["d3"]);
    if (jm.contains("d1")) m.in_d1 = side_from_json(jm["d1"]);
    ++report.type_counts[static_cast<int>(m.type)];
    report.matches.push_back(std::move(m));
  }
  report.violations = j.at("violations").get<std::vector<std::string>>();
  report.used_duplicate_fallback = j.value("duplicate_fallback", false);
  return report;
}

std::string combined_diagram_csv(const InjectionReport& report) {
  std::ostringstream out;
  out << "type,kind,birth,death\n";
  for (const auto& m : report.matches) {
    auto row = [&](const char* kind, const MatchSide& s) {
      out << to_string(m.type) << ',' << kind << ','
          << double_repr(rational_to_double(m.birth)) << ',';
      if (s.death)
        out << double_repr(rational_to_double(*s.death));
      else
        out << "inf";
      out << '\n';
    };
    if (m.in_d2) row("d2", *m.in_d2);
    if (m.in_d3) row("d3", *m.in_d3);
    if (m.in_d1) row("d1", *m.in_d1);
  }
  return out.str();
}

}  // namespace phml
