#include "phml/filtration.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

#include "phml/errors.hpp"

namespace phml {

Simplex::Simplex(std::vector<VertexId> vs) : vertices(std::move(vs)) {
  if (vertices.empty() || vertices.size() > 3)
    throw std::invalid_argument("simplex must have 1 to 3 vertices");
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i - 1] >= vertices[i])
      throw std::invalid_argument("simplex vertices must strictly increase");
}

std::vector<Simplex> Simplex::faces() const {
  if (dim() == 0) return {};
  std::vector<Simplex> out;
  // Dropping the last vertex first yields lexicographic face order.
  for (int skip = dim(); skip >= 0; --skip) {
    std::vector<VertexId> f;
    for (int i = 0; i <= dim(); ++i)
      if (i != skip) f.push_back(vertices[i]);
    out.emplace_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Filtration build_filtration(const DistanceMatrix& D) {
  const int n = D.n;
  if (n < 1) throw std::invalid_argument("empty distance matrix");
  for (int i = 0; i < n; ++i) {
    if (D.at(i, i) != 0)
      throw std::invalid_argument("distance matrix diagonal must be zero");
    for (int j = i + 1; j < n; ++j) {
      if (D.at(i, j) != D.at(j, i))
        throw std::invalid_argument("distance matrix must be symmetric");
      if (D.at(i, j) <= 0)
        throw std::invalid_argument("off-diagonal distances must be positive");
    }
  }

  Filtration f;
  f.n = n;
  f.entries.reserve(static_cast<std::size_t>(n) + n * (n - 1) / 2 +
                    static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6);
  for (int v = 0; v < n; ++v)
    f.entries.push_back({Simplex({v}), Rational(0)});
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      f.entries.push_back({Simplex({u, v}), D.at(u, v)});
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        Rational value = std::max({D.at(u, v), D.at(u, w), D.at(v, w)});
        f.entries.push_back({Simplex({u, v, w}), std::move(value)});
      }

  std::sort(f.entries.begin(), f.entries.end(),
            [](const FiltrationEntry& a, const FiltrationEntry& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.simplex.dim() != b.simplex.dim())
                return a.simplex.dim() < b.simplex.dim();
              return a.simplex < b.simplex;
            });
  return f;
}

bool faces_first(const Filtration& f) {
  std::map<Simplex, std::size_t> position;
  for (std::size_t i = 0; i < f.entries.size(); ++i) {
    const auto& entry = f.entries[i];
    if (i > 0 && entry.value < f.entries[i - 1].value) return false;
    for (const Simplex& face : entry.simplex.faces()) {
      auto it = position.find(face);
      if (it == position.end() || it->second >= i) return false;
    }
    position.emplace(entry.simplex, i);
  }
  return true;
}

void dump_filtration(const Filtration& f, std::ostream& out) {
  for (const auto& entry : f.entries) {
    out << rational_to_string(entry.value) << '\t';
    for (std::size_t i = 0; i < entry.simplex.vertices.size(); ++i) {
      if (i) out << ',';
      out << entry.simplex.vertices[i];
    }
    out << '\n';
  }
}

}  // namespace phml
