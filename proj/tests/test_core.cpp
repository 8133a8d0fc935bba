#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "phml/errors.hpp"
#include "phml/generators.hpp"
#include "phml/graph.hpp"
#include "phml/notes.hpp"
#include "phml/rational.hpp"

using namespace phml;

TEST_SUITE("rational") {
  TEST_CASE("parses fractions, integers and decimals") {
    CHECK(parse_rational("1/3") == Rational(1, 3));
    CHECK(parse_rational("-2/4") == Rational(-1, 2));
    CHECK(parse_rational("2") == 2);
    CHECK(parse_rational(" 7/2 ") == Rational(7, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("1.5") == Rational(3, 2));
    CHECK(parse_rational("-0.125") == Rational(-1, 8));
  }

  TEST_CASE("rejects malformed input") {
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1."), ParseError);
  }

  TEST_CASE("string form round-trips and is canonical") {
    CHECK(rational_to_string(parse_rational("2/4")) == "1/2");
    CHECK(rational_to_string(parse_rational("4/2")) == "2");
    for (const char* s : {"1/3", "-5/7", "0", "12", "355/113"})
      CHECK(rational_to_string(parse_rational(s)) == s);
    // Unreduced weights are canonicalized at graph construction.
    WeightedGraph g(2, {{0, 1, Rational(2, 4)}});
    CHECK(rational_to_string(g.weight(0, 1)) == "1/2");
  }
}

TEST_SUITE("graph") {
  TEST_CASE("construction enforces the invariants") {
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 0, Rational(1)}}), ParseError);
    CHECK_THROWS_AS(
        WeightedGraph(2, {{0, 1, Rational(1)}, {1, 0, Rational(1)}}),
        ParseError);  // duplicate under canonicalization
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, Rational(0)}}),
                    NonPositiveWeight);
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, Rational(-1, 2)}}),
                    NonPositiveWeight);
    CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, Rational(1)}}), ParseError);
    CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, Rational(1)}}), ParseError);
  }

  TEST_CASE("connectivity") {
    CHECK(is_connected(test::square_unit()));
    CHECK(is_connected(WeightedGraph(2, {{0, 1, Rational(1)}})));
    WeightedGraph two_components(
        4, {{0, 1, Rational(1)}, {2, 3, Rational(1)}});
    CHECK_FALSE(is_connected(two_components));
  }

  TEST_CASE("reciprocal transform matches the worked example") {
    WeightedGraph m = test::shortcut_square();
    WeightedGraph mr = apply_transform(m, WeightTransform::reciprocal());
    CHECK(mr.weight(0, 3) == 2);
    CHECK(mr.weight(0, 1) == 1);
    CHECK(mr.weight(1, 2) == 1);
    CHECK(mr.weight(2, 3) == 1);
  }

  TEST_CASE("identity table leaves the graph unchanged") {
    WeightedGraph g = test::shortcut_square();
    std::map<Edge, Rational> table;
    for (const Edge& e : g.edges()) table[e] = g.weight(e);
    CHECK(apply_transform(g, WeightTransform::from_table(table)) == g);
  }

  TEST_CASE("scalar multiply") {
    WeightedGraph g(2, {{0, 1, Rational(1, 2)}});
    WeightedGraph h = apply_transform(g, WeightTransform::scalar_multiply(3));
    CHECK(h.weight(0, 1) == Rational(3, 2));
    CHECK_THROWS_AS(apply_transform(g, WeightTransform::scalar_multiply(-1)),
                    NonPositiveWeight);
  }

  TEST_CASE("reciprocal is an involution on random graphs") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      GeneratedGraph gg =
          random_graph(GraphFamily::kRandomConnected, 4, 10, rng);
      WeightedGraph once =
          apply_transform(gg.graph, WeightTransform::reciprocal());
      CHECK(apply_transform(once, WeightTransform::reciprocal()) == gg.graph);
      CHECK(is_connected(once) == is_connected(gg.graph));
    }
  }

  TEST_CASE("permutation relabels edges and weights") {
    WeightedGraph g = test::ordering_cycle_circular();
    WeightedGraph p =
        permute_vertices(g, test::ordering_cycle_permutation());
    CHECK(p == test::ordering_cycle_crossed());
  }

  TEST_CASE("largest component keeps the biggest piece, first on ties") {
    WeightedGraph g(7, {{0, 1, Rational(1)},
                        {1, 2, Rational(1)},
                        {3, 4, Rational(1)},
                        {4, 5, Rational(1)},
                        {5, 6, Rational(1)}});
    WeightedGraph big = largest_component(g);
    CHECK(big.vertex_count() == 4);
    CHECK(big.weight(0, 1) == 1);  // old 3-4 reindexed

    WeightedGraph tie(4, {{0, 1, Rational(1)}, {2, 3, Rational(2)}});
    WeightedGraph first = largest_component(tie);
    CHECK(first.vertex_count() == 2);
    CHECK(first.weight(0, 1) == 1);
  }

  TEST_CASE("graph JSON round-trips exactly") {
    WeightedGraph g = test::shortcut_square();
    std::string text = graph_to_json(g);
    CHECK(graph_from_json(text) == g);
    CHECK(graph_to_json(graph_from_json(text)) == text);
    CHECK(text.find("\"1/2\"") != std::string::npos);
  }

  TEST_CASE("graph JSON rejects malformed documents") {
    CHECK_THROWS_AS(graph_from_json("not json"), ParseError);
    CHECK_THROWS_AS(graph_from_json("{\"vertices\":[]}"), ParseError);
    CHECK_THROWS_AS(
        graph_from_json(R"({"vertices":[{"id":0},{"id":0}],"edges":[]})"),
        ParseError);
  }
}

namespace {

NoteSequence notes_from_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_notes(in, NoteFormat::kCsv);
}

// Edge multiset keyed by labels, for comparisons that must ignore the
// first-appearance ordering.
std::map<std::pair<std::string, std::string>, Rational> labeled_edges(
    const WeightedGraph& g) {
  std::map<std::pair<std::string, std::string>, Rational> out;
  for (const Edge& e : g.edges()) {
    std::string a = g.labels()[e.u];
    std::string b = g.labels()[e.v];
    if (b < a) std::swap(a, b);
    out[{a, b}] = g.weight(e);
  }
  return out;
}

}  // namespace

TEST_SUITE("ingest") {
  TEST_CASE("CSV parsing") {
    NoteSequence seq = notes_from_csv("60,1/4\n62,1/4\n");
    REQUIRE(seq.events.size() == 2);
    CHECK(seq.events[0].pitch == Pitch(60L));
    CHECK(seq.events[0].duration == Rational(1, 4));

    CHECK_THROWS_AS(notes_from_csv("60,0\n"), ParseError);
    CHECK_THROWS_AS(notes_from_csv("60,-1/4\n"), ParseError);
    CHECK_THROWS_AS(notes_from_csv("60\n"), ParseError);
    CHECK_THROWS_AS(notes_from_csv(""), EmptySequence);
    CHECK_THROWS_AS(notes_from_csv("# only a comment\n"), EmptySequence);

    NoteSequence with_comments =
        notes_from_csv("# header\n60,0.25\n\n\"rest\",1/8\nA4,1/2\n");
    REQUIRE(with_comments.events.size() == 3);
    CHECK(with_comments.events[0].duration == Rational(1, 4));
    CHECK(with_comments.events[1].is_rest());
    CHECK(with_comments.events[2].pitch == Pitch(std::string("A4")));
  }

  TEST_CASE("JSON parsing") {
    std::istringstream in(
        R"([{"pitch":60,"duration":"1/4"},{"pitch":"rest","duration":"1/8"},
            [62,"1/4"]])");
    NoteSequence seq = parse_notes(in, NoteFormat::kJson);
    REQUIRE(seq.events.size() == 3);
    CHECK(seq.events[1].is_rest());

    std::istringstream fourteen(
        R"([[60,"1/4"],[62,"1/4"],[64,"1/4"],[65,"1/4"],[67,"1/4"],
            [69,"1/4"],[71,"1/4"],[72,"1/4"],[60,"1/8"],[62,"1/8"],
            [64,"1/8"],[65,"1/8"],[67,"1/8"],[69,"1/8"]])");
    CHECK(parse_notes(fourteen, NoteFormat::kJson).events.size() == 14);

    std::istringstream bad("{\"pitch\":60}");
    CHECK_THROWS_AS(parse_notes(bad, NoteFormat::kJson), ParseError);
    std::istringstream bad_duration(R"([[60, 0.25]])");
    CHECK_THROWS_AS(parse_notes(bad_duration, NoteFormat::kJson), ParseError);
  }

  TEST_CASE("frequency weights pool both directions") {
    // A,B,A,B: pairs (A,B),(B,A),(A,B) -> one edge of weight 1/3.
    WeightedGraph g = build_graph(notes_from_csv("60,1/4\n62,1/4\n60,1/4\n62,1/4\n"));
    CHECK(g.vertex_count() == 2);
    REQUIRE(g.edges().size() == 1);
    CHECK(g.weight(0, 1) == Rational(1, 3));
  }

  TEST_CASE("consecutive identical events contribute no edge") {
    WeightedGraph g = build_graph(notes_from_csv("60,1/4\n60,1/4\n62,1/4\n"));
    REQUIRE(g.edges().size() == 1);
    CHECK(g.weight(0, 1) == 1);
    CHECK_THROWS_AS(build_graph(notes_from_csv("60,1/4\n60,1/4\n")),
                    EmptySequence);
  }

  TEST_CASE("three-note loop") {
    WeightedGraph g =
        build_graph(notes_from_csv("60,1/4\n62,1/4\n64,1/4\n60,1/4\n"));
    CHECK(g.vertex_count() == 3);
    REQUIRE(g.edges().size() == 3);
    for (const Edge& e : g.edges()) CHECK(g.weight(e) == 1);
  }

  TEST_CASE("same pitch with different durations is a different node") {
    WeightedGraph g = build_graph(notes_from_csv("60,1/4\n60,1/2\n"));
    CHECK(g.vertex_count() == 2);
    CHECK(g.labels()[0] == "(60,1/4)");
    CHECK(g.labels()[1] == "(60,1/2)");
  }

  TEST_CASE("rests are ordinary nodes unless dropped") {
    const std::string csv = "60,1/4\nrest,1/4\n62,1/4\n";
    WeightedGraph with_rest = build_graph(notes_from_csv(csv));
    CHECK(with_rest.vertex_count() == 3);
    CHECK(with_rest.labels()[1] == "(rest,1/4)");

    BuildGraphOptions drop;
    drop.drop_rests = true;
    CHECK_THROWS_AS(build_graph(notes_from_csv(csv), drop), NotConnected);

    drop.use_largest_component = true;
    // Both remaining segments are single notes: nothing to analyze.
    CHECK_THROWS_AS(build_graph(notes_from_csv(csv), drop), NotConnected);
  }

  TEST_CASE("dropping rests splits segments and largest component wins") {
    const std::string csv =
        "60,1/4\n62,1/4\nrest,1/4\n70,1/4\n72,1/4\n70,1/4\n";
    BuildGraphOptions drop;
    drop.drop_rests = true;
    CHECK_THROWS_AS(build_graph(notes_from_csv(csv), drop), NotConnected);

    drop.use_largest_component = true;
    WeightedGraph g = build_graph(notes_from_csv(csv), drop);
    CHECK(g.vertex_count() == 2);
    // Both components have two vertices; the first-seen one wins the tie.
    CHECK(g.weight(0, 1) == 1);
    CHECK(g.labels()[0] == "(60,1/4)");
  }

  TEST_CASE("reversal yields the same labeled graph") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = static_cast<int>(rng.uniform(2, 6));
      const long steps = rng.uniform(2, 30);
      NoteSequence seq;
      for (int i = 0; i < n; ++i)
        seq.events.push_back(NoteEvent{Pitch(static_cast<long>(i)), Rational(1, 4)});
      for (long s = 0; s < steps; ++s)
        seq.events.push_back(
            NoteEvent{Pitch(rng.uniform(0, n - 1)), Rational(1, 4)});
      NoteSequence reversed{{seq.events.rbegin(), seq.events.rend()}};
      WeightedGraph a = build_graph(seq);
      WeightedGraph b = build_graph(reversed);
      CHECK(labeled_edges(a) == labeled_edges(b));
    }
  }

  TEST_CASE("pitch representation does not change the structure") {
    WeightedGraph nums =
        build_graph(notes_from_csv("60,1/4\n62,1/4\n60,1/4\n"));
    WeightedGraph toks =
        build_graph(notes_from_csv("\"do\",1/4\n\"re\",1/4\n\"do\",1/4\n"));
    REQUIRE(nums.edges().size() == toks.edges().size());
    for (std::size_t i = 0; i < nums.edges().size(); ++i) {
      CHECK(nums.edges()[i] == toks.edges()[i]);
      CHECK(nums.weight(nums.edges()[i]) == toks.weight(toks.edges()[i]));
    }
  }

  TEST_CASE("edge weights are reciprocals of pair counts") {
    Rng rng(5);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const int n = static_cast<int>(rng.uniform(2, 6));
      std::vector<long> pitches;
      const long steps = rng.uniform(3, 40);
      for (long s = 0; s < steps; ++s) pitches.push_back(rng.uniform(0, n - 1));
      long expected_pairs = 0;
      for (std::size_t i = 0; i + 1 < pitches.size(); ++i)
        if (pitches[i] != pitches[i + 1]) ++expected_pairs;
      std::set<long> distinct(pitches.begin(), pitches.end());
      if (expected_pairs == 0 || distinct.size() < 2) continue;

      NoteSequence seq;
      for (long p : pitches)
        seq.events.push_back(NoteEvent{Pitch(p), Rational(1, 4)});
      WeightedGraph g = build_graph(seq);
      Rational total = 0;
      for (const Edge& e : g.edges()) total += 1 / g.weight(e);
      CHECK(total == expected_pairs);
      ++checked;
    }
    CHECK(checked > 20);
  }
}
