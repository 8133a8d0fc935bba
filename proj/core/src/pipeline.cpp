#include "phml/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phml/detail/parallel.hpp"
#include "phml/errors.hpp"
#include "phml/filtration.hpp"
#include "phml/generators.hpp"
#include "phml/inclusion.hpp"
#include "phml/invariants.hpp"
#include "phml/oracle.hpp"
#include "phml/persistence.hpp"

namespace phml {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path.string());
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

NoteFormat note_format_for(const RunConfig& cfg) {
  if (cfg.note_format) return *cfg.note_format;
  return ends_with(cfg.input_path, ".json") ? NoteFormat::kJson
                                            : NoteFormat::kCsv;
}

WeightedGraph graph_from_notes(const RunConfig& cfg) {
  NoteSequence seq = parse_notes_file(cfg.input_path, note_format_for(cfg));
  BuildGraphOptions opts;
  opts.drop_rests = cfg.drop_rests;
  opts.use_largest_component = cfg.largest_component;
  return build_graph(seq, opts);
}

nlohmann::ordered_json metric_report_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["symmetric"] = r.symmetric;
  j["zero_diagonal"] = r.zero_diagonal;
  j["is_metric"] = r.is_metric();
  j["triangle_violations"] = nlohmann::ordered_json::array();
  for (const auto& t : r.triangle_violations)
    j["triangle_violations"].push_back({t[0], t[1], t[2]});
  return j;
}

constexpr DistanceKind kAllKinds[] = {DistanceKind::kD1, DistanceKind::kD2,
                                      DistanceKind::kD3};

}  // namespace

WeightedGraph load_input_graph(const RunConfig& cfg) {
  RunConfig::InputKind kind = cfg.input_kind;
  if (kind == RunConfig::InputKind::kAuto) {
    if (!ends_with(cfg.input_path, ".json")) {
      kind = RunConfig::InputKind::kNotes;
    } else {
      // A JSON array is a note list; an object is a graph.
      std::string text = read_file(cfg.input_path);
      std::size_t i = text.find_first_not_of(" \t\r\n");
      kind = (i != std::string::npos && text[i] == '[')
                 ? RunConfig::InputKind::kNotes
                 : RunConfig::InputKind::kGraph;
    }
  }
  if (kind == RunConfig::InputKind::kNotes) return graph_from_notes(cfg);

  WeightedGraph g = load_graph(cfg.input_path);
  if (!is_connected(g)) {
    if (!cfg.largest_component)
      throw NotConnected(
          "input graph is disconnected; pass --largest-component to proceed");
    g = largest_component(g);
  }
  return g;
}

int run_ingest(const RunConfig& cfg) {
  WeightedGraph g = graph_from_notes(cfg);
  save_graph(g, cfg.output_path);
  std::cout << "ingest: " << g.vertex_count() << " vertices, "
            << g.edges().size() << " edges -> " << cfg.output_path << "\n";
  return kExitOk;
}

int run_dist(const RunConfig& cfg) {
  WeightedGraph g = load_graph(cfg.input_path);
  if (!is_connected(g)) throw NotConnected("input graph is disconnected");
  DistanceMatrix D = all_pairs(g, cfg.kind);
  write_file(cfg.output_path, matrix_to_csv(D));
  if (!cfg.heatmap_path.empty())
    write_file(cfg.heatmap_path, heatmap_to_csv(D));
  std::cout << "dist: " << to_string(cfg.kind) << " matrix " << D.n << "x"
            << D.n << " -> " << cfg.output_path << "\n";
  return kExitOk;
}

int run_ph(const RunConfig& cfg) {
  WeightedGraph g = load_graph(cfg.input_path);
  if (!is_connected(g)) throw NotConnected("input graph is disconnected");
  fs::create_directories(cfg.out_dir);

  DistanceMatrix D = all_pairs(g, cfg.kind);
  Filtration f = build_filtration(D);
  if (!cfg.filtration_dump_path.empty()) {
    std::ostringstream dump;
    dump_filtration(f, dump);
    write_file(cfg.filtration_dump_path, dump.str());
  }
  ReducedMatrix rm = reduce(f);
  BarcodeSet b = extract_pairs(f, rm, cfg.kind, g.labels());

  const std::string tag = to_string(cfg.kind);
  write_file(fs::path(cfg.out_dir) / ("barcode_" + tag + ".json"),
             barcode_to_json(b));
  write_file(fs::path(cfg.out_dir) / ("diagram_" + tag + ".csv"),
             diagram_to_csv(b));
  std::cout << "ph: " << tag << " barcode with " << b.pairs.size()
            << " pairs -> " << cfg.out_dir << "\n";
  return kExitOk;
}

int run_compare(const RunConfig& cfg) {
  WeightedGraph g = load_input_graph(cfg);
  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  save_graph(g, (dir / "graph.json").string());

  // The three distance pipelines are independent; run them concurrently.
  DistanceMatrix matrices[3];
  BarcodeSet barcodes[3];
  MetricReport metrics[3];
  detail::parallel_for_index(3, [&](int i) {
    matrices[i] = all_pairs(g, kAllKinds[i]);
    metrics[i] = metric_check(matrices[i]);
    barcodes[i] = barcode_of(matrices[i]);
  });

  nlohmann::ordered_json metric_report;
  for (int i = 0; i < 3; ++i) {
    const std::string tag = to_string(kAllKinds[i]);
    write_file(dir / ("matrix_" + tag + ".csv"), matrix_to_csv(matrices[i]));
    write_file(dir / ("heatmap_" + tag + ".csv"), heatmap_to_csv(matrices[i]));
    write_file(dir / ("barcode_" + tag + ".json"),
               barcode_to_json(barcodes[i]));
    write_file(dir / ("diagram_" + tag + ".csv"), diagram_to_csv(barcodes[i]));
    metric_report[tag] = metric_report_json(metrics[i]);
  }
  write_file(dir / "metric_report.json", metric_report.dump(2) + "\n");

  const BarcodeSet& b1 = barcodes[0];
  const BarcodeSet& b2 = barcodes[1];
  const BarcodeSet& b3 = barcodes[2];

  int exit_code = kExitOk;
  std::vector<std::string> problems;

  // The exact relations that must hold on every input.
  for (int i = 0; i < matrices[0].n; ++i)
    for (int j = i + 1; j < matrices[0].n; ++j)
      if (matrices[1].at(i, j) > matrices[2].at(i, j) ||
          matrices[2].at(i, j) > matrices[0].at(i, j)) {
        problems.push_back("distance inequality d2<=d3<=d1 fails at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
      }
  if (!metrics[1].is_metric())
    problems.push_back("d2 violates the metric axioms");

  InclusionReport inclusion = verify_inclusion(b2, b3, b1);
  if (!inclusion.holds())
    problems.push_back("birth-edge inclusion B2<=B3<=B1 fails");

  try {
    InjectionReport report = build_injection(b2, b3, b1);
    for (const std::string& v : report.violations) problems.push_back(v);
    write_file(dir / "injection_report.json",
               injection_report_to_json(report));
    write_file(dir / "combined_diagram.csv", combined_diagram_csv(report));
  } catch (const UnmatchedPair& e) {
    problems.push_back(std::string("injection matching failed: ") + e.what());
  }

  if (!problems.empty()) {
    for (const std::string& p : problems)
      std::cerr << "invariant violation: " << p << "\n";
    exit_code = kExitViolation;
  }
  std::cout << "compare: " << g.vertex_count() << " vertices -> " << cfg.out_dir
            << (exit_code == kExitOk ? "" : " (INVARIANT VIOLATION)") << "\n";
  return exit_code;
}

namespace {

std::vector<GraphFamily> family_schedule(const std::string& family) {
  if (family == "all")
    return {GraphFamily::kRandomConnected, GraphFamily::kTree,
            GraphFamily::kCycle, GraphFamily::kComplete,
            GraphFamily::kMusicChain};
  return {family_from_string(family)};
}

struct TrialOutcome {
  GraphFamily family = GraphFamily::kRandomConnected;
  std::vector<Violation> violations;
};

void write_counterexample_bundle(const fs::path& dir, const RunConfig& cfg,
                                 long trial, const GeneratedGraph& gg,
                                 const WeightedGraph& shrunk,
                                 const Violation& violation) {
  fs::create_directories(dir);
  save_graph(gg.graph, (dir / "graph_original.json").string());
  save_graph(shrunk, (dir / "graph.json").string());
  for (DistanceKind kind : kAllKinds) {
    BarcodeSet b = barcode_of(all_pairs(shrunk, kind));
    write_file(dir / ("barcode_" + to_string(kind) + ".json"),
               barcode_to_json(b));
  }
  nlohmann::ordered_json j;
  j["trial"] = trial;
  j["seed"] = cfg.seed;
  j["family"] = to_string(gg.family);
  j["check"] = violation.check;
  j["details"] = violation.details;
  write_file(dir / "violation.json", j.dump(2) + "\n");
}

}  // namespace

int run_verify(const RunConfig& cfg) {
  if (cfg.trials < 1) throw ParseError("verify needs at least one trial");
  if (cfg.n_min < 2 || cfg.n_max < cfg.n_min)
    throw ParseError("invalid --n-min/--n-max range");
  const std::vector<GraphFamily> schedule = family_schedule(cfg.family);

  InvariantOptions options;
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));

  // Trials are independent; each derives its own rng from seed + index, so
  // the schedule cannot change any outcome.
  detail::parallel_for_index(static_cast<int>(cfg.trials), [&](int t) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(t));
    GraphFamily family = schedule[t % schedule.size()];
    GeneratedGraph gg = random_graph(family, cfg.n_min, cfg.n_max, rng);
    outcomes[t].family = family;
    outcomes[t].violations = check_invariants(gg, rng, options);
  });

  std::map<std::string, long> per_family;
  for (const auto& outcome : outcomes) ++per_family[to_string(outcome.family)];

  long failed_trial = -1;
  for (long t = 0; t < cfg.trials; ++t)
    if (!outcomes[t].violations.empty()) {
      failed_trial = t;
      break;
    }

  if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);

  if (failed_trial >= 0) {
    const Violation& violation = outcomes[failed_trial].violations.front();
    std::cerr << "verify: trial " << failed_trial << " ("
              << to_string(outcomes[failed_trial].family)
              << "): " << violation.check << ": " << violation.details << "\n";

    // Rebuild the failing graph and shrink it while the same check fails.
    Rng rng(cfg.seed + static_cast<std::uint64_t>(failed_trial));
    GeneratedGraph gg = random_graph(outcomes[failed_trial].family, cfg.n_min,
                                     cfg.n_max, rng);
    const std::string check = violation.check;
    auto still_violates = [&](const WeightedGraph& candidate) {
      Rng inner(cfg.seed + static_cast<std::uint64_t>(failed_trial));
      GeneratedGraph wrapped{candidate, gg.family, gg.uniform_weights};
      for (const Violation& v : check_invariants(wrapped, inner, options))
        if (v.check == check) return true;
      return false;
    };
    WeightedGraph shrunk = shrink_counterexample(gg.graph, still_violates);
    if (!cfg.out_dir.empty())
      write_counterexample_bundle(fs::path(cfg.out_dir) / "counterexample",
                                  cfg, failed_trial, gg, shrunk, violation);
    return kExitViolation;
  }

  nlohmann::ordered_json report;
  report["seed"] = cfg.seed;
  report["trials"] = cfg.trials;
  report["family"] = cfg.family;
  report["n_min"] = cfg.n_min;
  report["n_max"] = cfg.n_max;
  report["per_family"] = per_family;
  report["violations"] = nlohmann::ordered_json::array();
  if (!cfg.out_dir.empty())
    write_file(fs::path(cfg.out_dir) / "verify_report.json",
               report.dump(2) + "\n");

  std::cout << "verify: OK, " << cfg.trials << " trials, seed " << cfg.seed
            << ", families";
  for (const auto& [name, count] : per_family)
    std::cout << " " << name << "=" << count;
  std::cout << "\n";
  return kExitOk;
}

}  // namespace phml
