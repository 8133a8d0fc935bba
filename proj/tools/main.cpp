// Command-line front door: ingest | dist | ph | compare | verify.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "phml/errors.hpp"
#include "phml/pipeline.hpp"

namespace {

void add_ingest_flags(CLI::App* cmd, phml::RunConfig& cfg) {
  cmd->add_flag("--drop-rests", cfg.drop_rests,
                "Drop rest events; no edge is formed across the gap");
  cmd->add_flag("--largest-component", cfg.largest_component,
                "Analyze the largest component instead of failing when "
                "disconnected");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Music-network distances (d1/d2/d3), Vietoris-Rips persistence and "
      "barcode inclusion analysis"};
  app.require_subcommand(1);

  phml::RunConfig cfg;
  std::string kind = "d2";
  std::string format;
  std::string input_kind;

  CLI::App* ingest =
      app.add_subcommand("ingest", "Parse a note sequence into graph JSON");
  ingest->add_option("--in", cfg.input_path, "Note CSV/JSON file")->required();
  ingest->add_option("--out", cfg.output_path, "Output graph JSON")->required();
  ingest->add_option("--format", format, "Input format: csv|json");
  add_ingest_flags(ingest, cfg);

  CLI::App* dist =
      app.add_subcommand("dist", "All-pairs distance matrix of one kind");
  dist->add_option("--graph", cfg.input_path, "Graph JSON file")->required();
  dist->add_option("--kind", kind, "Distance kind: d1|d2|d3")->required();
  dist->add_option("--out", cfg.output_path, "Output matrix CSV")->required();
  dist->add_option("--heatmap", cfg.heatmap_path,
                   "Also write a float-rendered heatmap CSV");

  CLI::App* ph =
      app.add_subcommand("ph", "Persistence barcode and diagram of one kind");
  ph->add_option("--graph", cfg.input_path, "Graph JSON file")->required();
  ph->add_option("--kind", kind, "Distance kind: d1|d2|d3")->required();
  ph->add_option("--out-dir", cfg.out_dir, "Output directory")->required();
  ph->add_option("--filtration-dump", cfg.filtration_dump_path,
                 "Write the ordered simplex stream to this file");

  CLI::App* compare = app.add_subcommand(
      "compare",
      "Full pipeline: distances, barcodes, metric and injection reports");
  compare->add_option("--in", cfg.input_path, "Notes file or graph JSON")
      ->required();
  compare->add_option("--input-kind", input_kind,
                      "Force the input kind: notes|graph");
  compare->add_option("--out-dir", cfg.out_dir, "Output directory")->required();
  add_ingest_flags(compare, cfg);

  CLI::App* verify = app.add_subcommand(
      "verify", "Randomized invariant harness over generated graph families");
  verify->add_option("--seed", cfg.seed, "Fuzz seed (determines every trial)");
  verify->add_option("--trials", cfg.trials, "Number of trials");
  verify->add_option("--family", cfg.family,
                     "all|random|tree|cycle|complete|music-chain");
  verify->add_option("--n-min", cfg.n_min, "Minimum vertex count");
  verify->add_option("--n-max", cfg.n_max, "Maximum vertex count");
  verify->add_option("--out-dir", cfg.out_dir,
                     "Where to write verify_report.json and any "
                     "counterexample bundle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!format.empty()) {
      if (format == "csv")
        cfg.note_format = phml::NoteFormat::kCsv;
      else if (format == "json")
        cfg.note_format = phml::NoteFormat::kJson;
      else
        throw phml::ParseError("unknown --format: '" + format + "'");
    }
    if (!input_kind.empty()) {
      if (input_kind == "notes")
        cfg.input_kind = phml::RunConfig::InputKind::kNotes;
      else if (input_kind == "graph")
        cfg.input_kind = phml::RunConfig::InputKind::kGraph;
      else
        throw phml::ParseError("unknown --input-kind: '" + input_kind + "'");
    }

    if (ingest->parsed()) return phml::run_ingest(cfg);
    if (dist->parsed() || ph->parsed())
      cfg.kind = phml::distance_kind_from_string(kind);
    if (dist->parsed()) return phml::run_dist(cfg);
    if (ph->parsed()) return phml::run_ph(cfg);
    if (compare->parsed()) return phml::run_compare(cfg);
    if (verify->parsed()) return phml::run_verify(cfg);
  } catch (const phml::UnmatchedPair& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return phml::kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return phml::kExitUsage;
  }
  return phml::kExitUsage;
}
