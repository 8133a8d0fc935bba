#include "phml/persistence.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phml/errors.hpp"

namespace phml {

namespace {

// Symmetric difference of two sorted index lists (Z/2 column addition).
std::vector<int> xor_columns(const std::vector<int>& a,
                             const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<std::vector<int>> boundary_columns(const Filtration& f) {
  std::map<Simplex, int> position;
  for (std::size_t i = 0; i < f.entries.size(); ++i)
    position.emplace(f.entries[i].simplex, static_cast<int>(i));

  std::vector<std::vector<int>> columns(f.entries.size());
  for (std::size_t j = 0; j < f.entries.size(); ++j) {
    for (const Simplex& face : f.entries[j].simplex.faces()) {
      auto it = position.find(face);
      if (it == position.end())
        throw std::invalid_argument("filtration is missing a face");
      columns[j].push_back(it->second);
    }
    std::sort(columns[j].begin(), columns[j].end());
  }
  return columns;
}

ReducedMatrix reduce(const Filtration& f) {
  const int m = static_cast<int>(f.entries.size());
  ReducedMatrix rm;
  rm.r_columns = boundary_columns(f);
  rm.v_columns.assign(m, {});
  rm.low.assign(m, -1);
  rm.killer_of.assign(m, -1);

  std::vector<int> owner_of_pivot(m, -1);
  for (int j = 0; j < m; ++j) {
    rm.v_columns[j] = {j};
    auto& col = rm.r_columns[j];
    while (!col.empty()) {
      int pivot = col.back();
      int other = owner_of_pivot[pivot];
      if (other == -1) break;
      col = xor_columns(col, rm.r_columns[other]);
      rm.v_columns[j] = xor_columns(rm.v_columns[j], rm.v_columns[other]);
    }
    if (!col.empty()) {
      rm.low[j] = col.back();
      owner_of_pivot[col.back()] = j;
      rm.killer_of[col.back()] = j;
    }
  }
  return rm;
}

std::vector<const PersistencePair*> BarcodeSet::dim_pairs(
    int dim, bool positive_only) const {
  std::vector<const PersistencePair*> out;
  for (const auto& p : pairs)
    if (p.dim == dim && (!positive_only || p.is_positive())) out.push_back(&p);
  return out;
}

BarcodeSet extract_pairs(const Filtration& f, const ReducedMatrix& rm,
                         DistanceKind kind, std::vector<std::string> ordering) {
  const int m = static_cast<int>(f.entries.size());
  BarcodeSet out;
  out.kind = kind;
  out.n = f.n;
  out.ordering = std::move(ordering);

  for (int i = 0; i < m; ++i) {
    // Creators are exactly the zero columns.
    if (rm.low[i] != -1) continue;
    const auto& birth_entry = f.entries[i];
    const int dim = birth_entry.simplex.dim();
    if (dim > 1) continue;  // H2 and above out of scope

    PersistencePair pair;
    pair.dim = dim;
    pair.birth_simplex = birth_entry.simplex;
    pair.birth = birth_entry.value;
    if (int j = rm.killer_of[i]; j != -1) {
      pair.death_simplex = f.entries[j].simplex;
      pair.death = f.entries[j].value;
    }
    if (dim == 1) {
      for (int pos : rm.v_columns[i])
        pair.cycle_edges.emplace_back(f.entries[pos].simplex.vertices[0],
                                      f.entries[pos].simplex.vertices[1]);
      std::set<VertexId> support;
      for (const Edge& e : pair.cycle_edges) {
        support.insert(e.u);
        support.insert(e.v);
      }
      pair.cycle.assign(support.begin(), support.end());
    }
    out.pairs.push_back(std::move(pair));
  }

  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const PersistencePair& a, const PersistencePair& b) {
              if (a.dim != b.dim) return a.dim < b.dim;
              if (a.birth != b.birth) return a.birth < b.birth;
              return a.birth_simplex < b.birth_simplex;
            });
  return out;
}

BarcodeSet barcode_of(const DistanceMatrix& D) {
  Filtration f = build_filtration(D);
  ReducedMatrix rm = reduce(f);
  return extract_pairs(f, rm, D.kind, D.ordering);
}

namespace {

// Rank of a Z/2 matrix given as rows of sorted column indices.
int z2_rank(std::vector<std::vector<int>> rows) {
  int rank = 0;
  std::map<int, std::vector<int>> pivots;  // leading column -> row
  for (auto& row : rows) {
    while (!row.empty()) {
      auto it = pivots.find(row.front());
      if (it == pivots.end()) break;
      row = xor_columns(row, it->second);
    }
    if (!row.empty()) {
      ++rank;
      pivots.emplace(row.front(), std::move(row));
    }
  }
  return rank;
}

}  // namespace

int betti_at(const Filtration& f, int dim, const Rational& epsilon) {
  if (dim < 0 || dim > 2) throw std::invalid_argument("dimension must be 0..2");

  // Index the simplices of each dimension that are present at epsilon.
  std::map<Simplex, int> index[4];
  int count[4] = {0, 0, 0, 0};
  for (const auto& entry : f.entries) {
    if (entry.value > epsilon) continue;
    int d = entry.simplex.dim();
    index[d].emplace(entry.simplex, count[d]++);
  }

  // rank of the boundary map C_d -> C_{d-1} at epsilon, rows = d-simplices.
  auto boundary_rank = [&](int d) {
    if (d <= 0 || d > 2) return 0;
    std::vector<std::vector<int>> rows;
    rows.reserve(index[d].size());
    for (const auto& [simplex, pos] : index[d]) {
      std::vector<int> row;
      for (const Simplex& face : simplex.faces())
        row.push_back(index[d - 1].at(face));
      std::sort(row.begin(), row.end());
      rows.push_back(std::move(row));
    }
    return z2_rank(std::move(rows));
  };

  const int nullity = count[dim] - boundary_rank(dim);
  return nullity - boundary_rank(dim + 1);
}

bool is_z2_cycle(const std::vector<Edge>& chain) {
  std::map<VertexId, int> degree;
  for (const Edge& e : chain) {
    ++degree[e.u];
    ++degree[e.v];
  }
  for (const auto& [v, d] : degree)
    if (d % 2 != 0) return false;
  return true;
}

std::string barcode_to_json(const BarcodeSet& b) {
  nlohmann::ordered_json out;
  out["kind"] = to_string(b.kind);
  out["n"] = b.n;
  out["tie_order"] = "value-dim-lex";
  if (!b.ordering.empty()) out["ordering"] = b.ordering;
  out["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : b.pairs) {
    nlohmann::ordered_json jp;
    jp["dim"] = p.dim;
    jp["birth"] = rational_to_string(p.birth);
    jp["death"] = p.death ? rational_to_string(*p.death) : "inf";
    jp["birth_simplex"] = p.birth_simplex.vertices;
    if (p.death_simplex) jp["death_simplex"] = p.death_simplex->vertices;
    if (p.dim == 1) jp["cycle"] = p.cycle;
    if (p.zero_persistence()) jp["zero"] = true;
    out["pairs"].push_back(std::move(jp));
  }
  return out.dump(2) + "\n";
}

BarcodeSet barcode_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("barcode JSON: ") + e.what());
  }
  BarcodeSet b;
  b.kind = distance_kind_from_string(j.at("kind").get<std::string>());
  b.n = j.value("n", 0);
  if (j.contains("ordering"))
    b.ordering = j["ordering"].get<std::vector<std::string>>();
  for (const auto& jp : j.at("pairs")) {
    PersistencePair p;
    p.dim = jp.at("dim").get<int>();
    p.birth = parse_rational(jp.at("birth").get<std::string>());
    if (std::string d = jp.at("death").get<std::string>(); d != "inf")
      p.death = parse_rational(d);
    p.birth_simplex = Simplex(jp.at("birth_simplex").get<std::vector<int>>());
    if (jp.contains("death_simplex"))
      p.death_simplex = Simplex(jp["death_simplex"].get<std::vector<int>>());
    if (jp.contains("cycle")) {
      p.cycle = jp["cycle"].get<std::vector<int>>();
      // The edge chain is not serialized; the vertex set is the exported
      // representative.
    }
    b.pairs.push_back(std::move(p));
  }
  return b;
}

std::string diagram_to_csv(const BarcodeSet& b) {
  std::ostringstream out;
  out << "dim,birth,death\n";
  for (const auto& p : b.pairs) {
    out << p.dim << ',' << double_repr(rational_to_double(p.birth)) << ',';
    if (p.death)
      out << double_repr(rational_to_double(*p.death));
    else
      out << "inf";
    out << '\n';
  }
  return out.str();
}

std::vector<std::array<double, 3>> diagram_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::array<double, 3>> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      if (line != "dim,birth,death")
        throw ParseError("diagram CSV: unexpected header '" + line + "'");
      header = false;
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    std::array<double, 3> row{};
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(ls, cell, ','))
        throw ParseError("diagram CSV: short row '" + line + "'");
      row[i] = (cell == "inf")
                   ? std::numeric_limits<double>::infinity()
                   : std::stod(cell);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace phml
