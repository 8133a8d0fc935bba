#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phml/distances.hpp"
#include "phml/notes.hpp"

namespace phml {

// Exit codes shared by every command: 0 success, 1 usage/IO/parse failure,
// 2 a verified invariant was violated (a correctness bug, not a bad input).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

struct RunConfig {
  // Input
  std::string input_path;
  enum class InputKind { kAuto, kNotes, kGraph };
  InputKind input_kind = InputKind::kAuto;
  std::optional<NoteFormat> note_format;  // default: by file extension
  bool drop_rests = false;
  bool largest_component = false;

  // Output
  std::string output_path;           // ingest/dist primary output file
  std::string heatmap_path;          // dist: optional float copy
  std::string out_dir;               // ph/compare/verify output directory
  std::string filtration_dump_path;  // ph: optional debug dump

  // Distance selection for single-kind commands.
  DistanceKind kind = DistanceKind::kD2;

  // Fuzzing (verify): the seed fully determines every trial.
  std::uint64_t seed = 42;
  long trials = 1000;
  std::string family = "all";  // or one of the generator families
  int n_min = 4;
  int n_max = 10;
};

// notes.csv/json -> graph.json
int run_ingest(const RunConfig& cfg);

// graph.json -> matrix.csv (+ optional heatmap.csv)
int run_dist(const RunConfig& cfg);

// graph.json -> barcode_<kind>.json + diagram_<kind>.csv in out_dir
int run_ph(const RunConfig& cfg);

// Full pipeline: input (notes or graph) -> graph.json, matrix/heatmap CSVs,
// barcodes, diagrams, metric report, injection report, combined diagram.
// Returns kExitViolation if any exact relation fails on this input.
int run_compare(const RunConfig& cfg);

// Randomized invariant harness over the generator families; emits a
// minimized counterexample bundle and returns kExitViolation on failure.
int run_verify(const RunConfig& cfg);

// Loads the input as either a note file or a graph JSON (sniffing the kind
// when cfg.input_kind is kAuto) and applies the ingest options.
WeightedGraph load_input_graph(const RunConfig& cfg);

}  // namespace phml
