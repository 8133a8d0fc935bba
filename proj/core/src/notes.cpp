#include "phml/notes.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phml/errors.hpp"

namespace phml {

std::string pitch_to_string(const Pitch& p) {
  if (std::holds_alternative<long>(p)) return std::to_string(std::get<long>(p));
  return std::get<std::string>(p);
}

bool NoteEvent::is_rest() const {
  return std::holds_alternative<std::string>(pitch) &&
         std::get<std::string>(pitch) == kRestToken;
}

std::string NoteEvent::label() const {
  return "(" + pitch_to_string(pitch) + "," + rational_to_string(duration) + ")";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool looks_like_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Pitch parse_pitch_token(const std::string& raw, int line_no) {
  std::string s = trim(raw);
  if (s.empty())
    throw ParseError("line " + std::to_string(line_no) + ": empty pitch field");
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);  // quoted tokens stay tokens
  if (looks_like_integer(s)) return std::stol(s);
  return s;
}

Rational parse_duration(const std::string& raw, int line_no) {
  Rational d;
  try {
    d = parse_rational(raw);
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(line_no) + ": duration: " +
                     e.what());
  }
  if (d <= 0)
    throw ParseError("line " + std::to_string(line_no) +
                     ": duration must be positive, got '" + trim(raw) + "'");
  return d;
}

NoteSequence parse_csv(std::istream& in) {
  NoteSequence seq;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;

    // A quoted pitch token may itself contain a comma.
    std::size_t split;
    if (t[0] == '"') {
      std::size_t close = t.find('"', 1);
      if (close == std::string::npos)
        throw ParseError("line " + std::to_string(line_no) +
                         ": unterminated quoted pitch");
      split = t.find(',', close);
    } else {
      split = t.find(',');
    }
    if (split == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'pitch,duration'");
    seq.events.push_back(NoteEvent{parse_pitch_token(t.substr(0, split), line_no),
                                   parse_duration(t.substr(split + 1), line_no)});
  }
  if (seq.events.empty()) throw EmptySequence("no note events in CSV input");
  return seq;
}

NoteEvent event_from_json(const nlohmann::json& item, int index) {
  const std::string where = "event " + std::to_string(index);
  nlohmann::json pitch, duration;
  if (item.is_object()) {
    if (!item.contains("pitch") || !item.contains("duration"))
      throw ParseError(where + ": expected 'pitch' and 'duration'");
    pitch = item["pitch"];
    duration = item["duration"];
  } else if (item.is_array() && item.size() == 2) {
    pitch = item[0];
    duration = item[1];
  } else {
    throw ParseError(where + ": expected object or [pitch, duration] pair");
  }

  NoteEvent ev;
  if (pitch.is_number_integer())
    ev.pitch = pitch.get<long>();
  else if (pitch.is_string())
    ev.pitch = parse_pitch_token(pitch.get<std::string>(), index);
  else
    throw ParseError(where + ": pitch must be an integer or a string");

  if (duration.is_number_integer())
    ev.duration = Rational(duration.get<long>());
  else if (duration.is_string())
    ev.duration = parse_rational(duration.get<std::string>());
  else
    throw ParseError(where +
                     ": duration must be an integer or a rational string "
                     "like \"1/4\"");
  if (ev.duration <= 0)
    throw ParseError(where + ": duration must be positive");
  return ev;
}

NoteSequence parse_json(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("notes JSON: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("notes JSON: expected an array of events");
  NoteSequence seq;
  int index = 0;
  for (const auto& item : j) seq.events.push_back(event_from_json(item, index++));
  if (seq.events.empty()) throw EmptySequence("no note events in JSON input");
  return seq;
}

}  // namespace

NoteSequence parse_notes(std::istream& in, NoteFormat format) {
  return format == NoteFormat::kCsv ? parse_csv(in) : parse_json(in);
}

NoteSequence parse_notes_file(const std::string& path, NoteFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open notes file: " + path);
  return parse_notes(in, format);
}

WeightedGraph build_graph(const NoteSequence& seq,
                          const BuildGraphOptions& options) {
  if (seq.events.empty()) throw EmptySequence("empty note sequence");

  // Segment the stream: rests either participate as ordinary nodes or are
  // removed, splitting the stream so no edge spans the gap.
  std::vector<std::vector<NoteEvent>> segments(1);
  for (const NoteEvent& ev : seq.events) {
    if (options.drop_rests && ev.is_rest()) {
      if (!segments.back().empty()) segments.emplace_back();
      continue;
    }
    segments.back().push_back(ev);
  }

  // Vertices in first-appearance order.
  std::vector<NoteEvent> nodes;
  std::map<std::pair<Pitch, Rational>, VertexId> node_id;
  auto intern = [&](const NoteEvent& ev) {
    auto key = std::make_pair(ev.pitch, ev.duration);
    auto it = node_id.find(key);
    if (it != node_id.end()) return it->second;
    VertexId id = static_cast<VertexId>(nodes.size());
    node_id.emplace(std::move(key), id);
    nodes.push_back(ev);
    return id;
  };

  std::map<Edge, long> pair_counts;
  for (const auto& segment : segments) {
    VertexId prev = -1;
    for (const NoteEvent& ev : segment) {
      VertexId cur = intern(ev);
      if (prev >= 0 && prev != cur) ++pair_counts[Edge(prev, cur)];
      prev = cur;
    }
  }

  if (nodes.size() < 2)
    throw EmptySequence("sequence has fewer than two distinct notes");
  if (pair_counts.empty())
    throw NotConnected("no consecutive pair of distinct notes");

  // Detect disconnection before constructing the graph value, so isolated
  // or split vertices are reported as connectivity problems.
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& [e, cnt] : pair_counts) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> comp(n, -1);
  int n_comp = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = n_comp;
    std::vector<VertexId> stack{s};
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId x : adj[u])
        if (comp[x] == -1) {
          comp[x] = n_comp;
          stack.push_back(x);
        }
    }
    ++n_comp;
  }

  int keep = 0;
  if (n_comp > 1) {
    if (!options.use_largest_component)
      throw NotConnected("music graph is disconnected (" +
                         std::to_string(n_comp) +
                         " components); pass the largest-component option to "
                         "proceed");
    std::vector<int> size(n_comp, 0);
    for (VertexId v = 0; v < n; ++v) ++size[comp[v]];
    for (int c = 1; c < n_comp; ++c)
      if (size[c] > size[keep]) keep = c;
  }

  std::vector<VertexId> new_id(n, -1);
  std::vector<std::string> labels;
  int next = 0;
  for (VertexId v = 0; v < n; ++v)
    if (comp[v] == keep) {
      new_id[v] = next++;
      labels.push_back(nodes[v].label());
    }
  if (next < 2)
    throw NotConnected("largest component has fewer than two notes");

  std::vector<std::tuple<VertexId, VertexId, Rational>> edges;
  for (const auto& [e, cnt] : pair_counts)
    if (comp[e.u] == keep && comp[e.v] == keep)
      edges.emplace_back(new_id[e.u], new_id[e.v], Rational(1, cnt));
  return WeightedGraph(next, std::move(edges), std::move(labels));
}

}  // namespace phml
