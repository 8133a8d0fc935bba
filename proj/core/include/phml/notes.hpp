#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "phml/graph.hpp"
#include "phml/rational.hpp"

namespace phml {

// Reserved pitch token marking a rest event.
inline constexpr const char* kRestToken = "rest";

// Pitch is either a MIDI-style integer or an opaque token; the two never
// compare equal, and no normalization (octave, enharmonics) is applied.
using Pitch = std::variant<long, std::string>;

std::string pitch_to_string(const Pitch& p);

struct NoteEvent {
  Pitch pitch;
  Rational duration;  // fraction of a whole note, > 0

  bool is_rest() const;
  // Node label used in graph JSON, e.g. "(60,1/4)".
  std::string label() const;

  friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
};

struct NoteSequence {
  std::vector<NoteEvent> events;
};

enum class NoteFormat { kCsv, kJson };

// CSV: one `pitch,duration` row per event; pitch is an integer or a
// (optionally quoted) token; duration is "p/q" or a decimal; lines starting
// with '#' and blank lines are skipped.
// JSON: array of {"pitch": 60|"token", "duration": "1/4"} objects or
// [pitch, duration] pairs.
NoteSequence parse_notes(std::istream& in, NoteFormat format);
NoteSequence parse_notes_file(const std::string& path, NoteFormat format);

struct BuildGraphOptions {
  // Remove rest events; consecutive notes separated by a removed rest do
  // not form an edge.
  bool drop_rests = false;
  // When dropping rests disconnects the graph, analyze the largest
  // component instead of failing.
  bool use_largest_component = false;
};

// Music graph construction: vertices are the distinct (pitch, duration)
// events in first-appearance order; an edge joins two distinct events that
// occur consecutively; its weight is the reciprocal of the number of such
// occurrences, both directions pooled. Consecutive identical events
// contribute nothing.
WeightedGraph build_graph(const NoteSequence& seq,
                          const BuildGraphOptions& options = {});

}  // namespace phml
