#include "phml/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phml/errors.hpp"

namespace phml {

WeightedGraph::WeightedGraph(
    int vertex_count, std::vector<std::tuple<VertexId, VertexId, Rational>> edges,
    std::vector<std::string> labels)
    : n_(vertex_count), labels_(std::move(labels)) {
  if (n_ < 2) throw ParseError("graph needs at least two vertices");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    throw ParseError("label count does not match vertex count");

  std::vector<std::pair<Edge, Rational>> canon;
  canon.reserve(edges.size());
  for (auto& [u, v, w] : edges) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw ParseError("edge endpoint out of range");
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u));
    w.canonicalize();  // raw p/q input may arrive unreduced
    if (w <= 0)
      throw NonPositiveWeight("edge {" + std::to_string(u) + "," +
                              std::to_string(v) + "} has non-positive weight");
    canon.emplace_back(Edge(u, v), std::move(w));
  }
  std::sort(canon.begin(), canon.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < canon.size(); ++i)
    if (canon[i].first == canon[i - 1].first)
      throw ParseError("duplicate edge {" + std::to_string(canon[i].first.u) +
                       "," + std::to_string(canon[i].first.v) + "}");

  edges_.reserve(canon.size());
  weights_.reserve(canon.size());
  adj_.assign(n_, {});
  for (auto& [e, w] : canon) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
    edges_.push_back(e);
    weights_.push_back(std::move(w));
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

  for (VertexId v = 0; v < n_; ++v)
    if (adj_[v].empty())
      throw ParseError("isolated vertex " + std::to_string(v));
}

std::size_t WeightedGraph::edge_index(VertexId u, VertexId v) const {
  Edge e(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || !(*it == e))
    throw std::out_of_range("no edge {" + std::to_string(u) + "," +
                            std::to_string(v) + "}");
  return static_cast<std::size_t>(it - edges_.begin());
}

bool WeightedGraph::has_edge(VertexId u, VertexId v) const {
  if (u == v) return false;
  Edge e(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

const Rational& WeightedGraph::weight(VertexId u, VertexId v) const {
  return weights_[edge_index(u, v)];
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
  return a.n_ == b.n_ && a.labels_ == b.labels_ && a.edges_ == b.edges_ &&
         a.weights_ == b.weights_;
}

WeightTransform WeightTransform::reciprocal() {
  WeightTransform t;
  t.kind = Kind::kReciprocal;
  return t;
}

WeightTransform WeightTransform::scalar_multiply(Rational c) {
  WeightTransform t;
  t.kind = Kind::kScalarMultiply;
  t.scalar = std::move(c);
  return t;
}

WeightTransform WeightTransform::from_table(std::map<Edge, Rational> tbl) {
  WeightTransform t;
  t.kind = Kind::kTable;
  t.table = std::move(tbl);
  for (auto& [e, w] : t.table) w.canonicalize();
  return t;
}

Rational WeightTransform::operator()(const Edge& e, const Rational& w) const {
  switch (kind) {
    case Kind::kReciprocal:
      return 1 / w;
    case Kind::kScalarMultiply:
      return scalar * w;
    case Kind::kTable: {
      auto it = table.find(e);
      if (it == table.end())
        throw std::invalid_argument("table transform missing edge {" +
                                    std::to_string(e.u) + "," +
                                    std::to_string(e.v) + "}");
      return it->second;
    }
  }
  throw std::logic_error("unreachable transform kind");
}

bool is_connected(const WeightedGraph& g) {
  const int n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::queue<VertexId> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    for (VertexId x : g.adjacency()[u])
      if (!seen[x]) {
        seen[x] = 1;
        ++reached;
        q.push(x);
      }
  }
  return reached == n;
}

WeightedGraph apply_transform(const WeightedGraph& g, const WeightTransform& t) {
  std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    Rational w = t(e, g.weight(e));
    if (w <= 0)
      throw NonPositiveWeight("transform produced non-positive weight on {" +
                              std::to_string(e.u) + "," + std::to_string(e.v) +
                              "}");
    edges.emplace_back(e.u, e.v, std::move(w));
  }
  return WeightedGraph(g.vertex_count(), std::move(edges), g.labels());
}

WeightedGraph largest_component(const WeightedGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  int n_comp = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = n_comp;
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId x : g.adjacency()[u])
        if (comp[x] == -1) {
          comp[x] = n_comp;
          q.push(x);
        }
    }
    ++n_comp;
  }

  std::vector<int> size(n_comp, 0);
  for (VertexId v = 0; v < n; ++v) ++size[comp[v]];
  // Components are discovered in order of their smallest vertex, so the
  // first maximal one wins ties.
  int best = 0;
  for (int c = 1; c < n_comp; ++c)
    if (size[c] > size[best]) best = c;

  std::vector<VertexId> new_id(n, -1);
  std::vector<std::string> labels;
  int next = 0;
  for (VertexId v = 0; v < n; ++v)
    if (comp[v] == best) {
      new_id[v] = next++;
      if (!g.labels().empty()) labels.push_back(g.labels()[v]);
    }

  std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
  for (const Edge& e : g.edges())
    if (comp[e.u] == best && comp[e.v] == best)
      edges.emplace_back(new_id[e.u], new_id[e.v], g.weight(e));
  return WeightedGraph(next, std::move(edges), std::move(labels));
}

WeightedGraph permute_vertices(const WeightedGraph& g,
                               const std::vector<VertexId>& perm) {
  const int n = g.vertex_count();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation size mismatch");
  std::vector<char> hit(n, 0);
  for (VertexId p : perm) {
    if (p < 0 || p >= n || hit[p])
      throw std::invalid_argument("not a permutation");
    hit[p] = 1;
  }
  std::vector<std::string> labels;
  if (!g.labels().empty()) {
    labels.resize(n);
    for (VertexId v = 0; v < n; ++v) labels[perm[v]] = g.labels()[v];
  }
  std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges())
    edges.emplace_back(perm[e.u], perm[e.v], g.weight(e));
  return WeightedGraph(n, std::move(edges), std::move(labels));
}

std::string graph_to_json(const WeightedGraph& g) {
  nlohmann::ordered_json out;
  out["vertices"] = nlohmann::ordered_json::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    nlohmann::ordered_json vx;
    vx["id"] = v;
    if (!g.labels().empty() && !g.labels()[v].empty())
      vx["label"] = g.labels()[v];
    out["vertices"].push_back(std::move(vx));
  }
  out["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    nlohmann::ordered_json ed;
    ed["u"] = e.u;
    ed["v"] = e.v;
    ed["weight"] = rational_to_string(g.weight(e));
    out["edges"].push_back(std::move(ed));
  }
  return out.dump(2) + "\n";
}

WeightedGraph graph_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ParseError("graph JSON: expected object with 'vertices' and 'edges'");

  const auto& jv = j["vertices"];
  const int n = static_cast<int>(jv.size());
  std::vector<std::string> labels(n);
  std::vector<char> seen(n, 0);
  bool any_label = false;
  for (const auto& vx : jv) {
    if (!vx.contains("id") || !vx["id"].is_number_integer())
      throw ParseError("graph JSON: vertex without integer 'id'");
    int id = vx["id"].get<int>();
    if (id < 0 || id >= n || seen[id])
      throw ParseError("graph JSON: vertex ids must be 0..n-1, unique");
    seen[id] = 1;
    if (vx.contains("label")) {
      labels[id] = vx["label"].get<std::string>();
      any_label = true;
    }
  }
  if (!any_label) labels.clear();

  std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
  for (const auto& ed : j["edges"]) {
    if (!ed.contains("u") || !ed.contains("v") || !ed.contains("weight"))
      throw ParseError("graph JSON: edge needs 'u', 'v', 'weight'");
    edges.emplace_back(ed["u"].get<int>(), ed["v"].get<int>(),
                       parse_rational(ed["weight"].get<std::string>()));
  }
  return WeightedGraph(n, std::move(edges), std::move(labels));
}

WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return graph_from_json(buf.str());
}

void save_graph(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write graph file: " + path);
  out << graph_to_json(g);
}

}  // namespace phml
