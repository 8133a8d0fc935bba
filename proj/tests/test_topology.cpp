#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "phml/errors.hpp"
#include "phml/filtration.hpp"
#include "phml/generators.hpp"
#include "phml/inclusion.hpp"
#include "phml/persistence.hpp"

using namespace phml;

namespace {

// Bars containing eps in [birth, death).
int bars_containing(const BarcodeSet& b, int dim, const Rational& eps) {
  int count = 0;
  for (const auto& p : b.pairs)
    if (p.dim == dim && p.birth <= eps && (!p.death || *p.death > eps)) ++count;
  return count;
}

struct SquarePipeline {
  DistanceMatrix D;
  Filtration f;
  ReducedMatrix rm;
  BarcodeSet barcode;
};

SquarePipeline square_pipeline(DistanceKind kind) {
  SquarePipeline out;
  out.D = all_pairs(test::square_unit(), kind);
  out.f = build_filtration(out.D);
  out.rm = reduce(out.f);
  out.barcode = extract_pairs(out.f, out.rm, kind);
  return out;
}

}  // namespace

TEST_SUITE("simplex") {
  TEST_CASE("validation and faces") {
    CHECK_THROWS_AS(Simplex(std::vector<VertexId>{}), std::invalid_argument);
    CHECK_THROWS_AS(Simplex({2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Simplex({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Simplex({0, 1, 2, 3}), std::invalid_argument);

    Simplex t({0, 2, 5});
    CHECK(t.dim() == 2);
    auto faces = t.faces();
    REQUIRE(faces.size() == 3);
    CHECK(faces[0] == Simplex({0, 2}));
    CHECK(faces[1] == Simplex({0, 5}));
    CHECK(faces[2] == Simplex({2, 5}));
    CHECK(Simplex({4}).faces().empty());
  }
}

TEST_SUITE("filtration") {
  TEST_CASE("unit square stream") {
    Filtration f = build_filtration(all_pairs(test::square_unit(),
                                              DistanceKind::kD2));
    REQUIRE(f.entries.size() == 4 + 6 + 4);

    int vertices_at_0 = 0, edges_at_1 = 0, edges_at_2 = 0, triangles_at_2 = 0;
    for (const auto& e : f.entries) {
      if (e.simplex.dim() == 0 && e.value == 0) ++vertices_at_0;
      if (e.simplex.dim() == 1 && e.value == 1) ++edges_at_1;
      if (e.simplex.dim() == 1 && e.value == 2) ++edges_at_2;
      if (e.simplex.dim() == 2 && e.value == 2) ++triangles_at_2;
    }
    CHECK(vertices_at_0 == 4);
    CHECK(edges_at_1 == 4);
    CHECK(edges_at_2 == 2);
    CHECK(triangles_at_2 == 4);
    CHECK(faces_first(f));

    // Total order: value, then dimension, then lexicographic tuple.
    CHECK(f.entries[0].simplex == Simplex({0}));
    CHECK(f.entries[4].simplex == Simplex({0, 1}));
    CHECK(f.entries[5].simplex == Simplex({0, 3}));
    CHECK(f.entries[6].simplex == Simplex({1, 2}));
    CHECK(f.entries[7].simplex == Simplex({2, 3}));
    CHECK(f.entries[8].simplex == Simplex({0, 2}));
    CHECK(f.entries[9].simplex == Simplex({1, 3}));
    CHECK(f.entries[10].simplex == Simplex({0, 1, 2}));
  }

  TEST_CASE("single edge stream") {
    WeightedGraph g(2, {{0, 1, Rational(5, 9)}});
    Filtration f = build_filtration(all_pairs(g, DistanceKind::kD1));
    REQUIRE(f.entries.size() == 3);
    CHECK(f.entries[0].simplex == Simplex({0}));
    CHECK(f.entries[0].value == 0);
    CHECK(f.entries[1].simplex == Simplex({1}));
    CHECK(f.entries[2].simplex == Simplex({0, 1}));
    CHECK(f.entries[2].value == Rational(5, 9));
  }

  TEST_CASE("triangle enters at its largest edge") {
    DistanceMatrix D;
    D.n = 3;
    D.kind = DistanceKind::kD2;
    D.entries.assign(9, Rational(0));
    D.at(0, 1) = D.at(1, 0) = 1;
    D.at(0, 2) = D.at(2, 0) = 1;
    D.at(1, 2) = D.at(2, 1) = 2;
    Filtration f = build_filtration(D);
    CHECK(f.entries.back().simplex == Simplex({0, 1, 2}));
    CHECK(f.entries.back().value == 2);
  }

  TEST_CASE("simplex count and faces-first on random graphs") {
    Rng rng(19);
    for (int trial = 0; trial < 25; ++trial) {
      GeneratedGraph gg =
          random_graph(GraphFamily::kRandomConnected, 3, 9, rng);
      const long n = gg.graph.vertex_count();
      Filtration f =
          build_filtration(all_pairs(gg.graph, DistanceKind::kD3));
      CHECK(static_cast<long>(f.entries.size()) ==
            n + n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6);
      CHECK(faces_first(f));
    }
  }

  TEST_CASE("equal matrices give the identical stream whatever their kind") {
    Rng rng(37);
    GeneratedGraph gg = random_graph(GraphFamily::kTree, 4, 8, rng);
    DistanceMatrix A = all_pairs(gg.graph, DistanceKind::kD1);
    DistanceMatrix B = all_pairs(gg.graph, DistanceKind::kD2);
    REQUIRE(A.entries == B.entries);  // trees collapse the distances
    Filtration fa = build_filtration(A);
    Filtration fb = build_filtration(B);
    REQUIRE(fa.entries.size() == fb.entries.size());
    for (std::size_t i = 0; i < fa.entries.size(); ++i) {
      CHECK(fa.entries[i].simplex == fb.entries[i].simplex);
      CHECK(fa.entries[i].value == fb.entries[i].value);
    }
  }

  TEST_CASE("rejects non-symmetric or negative input") {
    DistanceMatrix D;
    D.n = 2;
    D.entries = {Rational(0), Rational(1), Rational(2), Rational(0)};
    CHECK_THROWS_AS(build_filtration(D), std::invalid_argument);
    D.entries = {Rational(0), Rational(-1), Rational(-1), Rational(0)};
    CHECK_THROWS_AS(build_filtration(D), std::invalid_argument);
    D.entries = {Rational(1), Rational(1), Rational(1), Rational(0)};
    CHECK_THROWS_AS(build_filtration(D), std::invalid_argument);
  }

  TEST_CASE("dump format") {
    WeightedGraph g(2, {{0, 1, Rational(1, 3)}});
    Filtration f = build_filtration(all_pairs(g, DistanceKind::kD2));
    std::ostringstream out;
    dump_filtration(f, out);
    CHECK(out.str() == "0\t0\n0\t1\n1/3\t0,1\n");
  }
}

TEST_SUITE("reduction") {
  TEST_CASE("single edge pairs with the later vertex") {
    WeightedGraph g(2, {{0, 1, Rational(2)}});
    Filtration f = build_filtration(all_pairs(g, DistanceKind::kD2));
    ReducedMatrix rm = reduce(f);
    BarcodeSet b = extract_pairs(f, rm, DistanceKind::kD2);
    REQUIRE(b.pairs.size() == 2);
    CHECK(b.pairs[0].dim == 0);
    CHECK(b.pairs[0].is_essential());
    CHECK(b.pairs[0].birth_simplex == Simplex({0}));
    CHECK(b.pairs[1].dim == 0);
    CHECK(b.pairs[1].birth_simplex == Simplex({1}));
    REQUIRE(b.pairs[1].death.has_value());
    CHECK(*b.pairs[1].death == 2);
    CHECK(b.dim_pairs(1, false).empty());
  }

  TEST_CASE("square pairing, frozen from the hand reduction") {
    for (DistanceKind kind :
         {DistanceKind::kD1, DistanceKind::kD2, DistanceKind::kD3}) {
      SquarePipeline p = square_pipeline(kind);

      auto h0 = p.barcode.dim_pairs(0, false);
      REQUIRE(h0.size() == 4);
      int finite = 0, essential = 0;
      for (const auto* pair : h0) {
        if (pair->is_essential()) {
          ++essential;
          CHECK(pair->birth_simplex == Simplex({0}));
        } else {
          ++finite;
          CHECK(pair->birth == 0);
          CHECK(*pair->death == 1);
        }
      }
      CHECK(essential == 1);
      CHECK(finite == 3);

      auto h1_positive = p.barcode.dim_pairs(1, true);
      REQUIRE(h1_positive.size() == 1);
      const PersistencePair& bar = *h1_positive[0];
      CHECK(bar.birth == 1);
      REQUIRE(bar.death.has_value());
      CHECK(*bar.death == 2);
      // The cycle closes at the lexicographically last unit edge and is
      // filled once the first triangle containing it arrives.
      CHECK(bar.birth_simplex == Simplex({2, 3}));
      CHECK(bar.death_simplex == Simplex({0, 2, 3}));
      CHECK(bar.cycle == std::vector<VertexId>{0, 1, 2, 3});
      REQUIRE(bar.cycle_edges.size() == 4);
      CHECK(is_z2_cycle(bar.cycle_edges));

      // Two zero-length chordal bars are retained but flagged.
      auto h1_all = p.barcode.dim_pairs(1, false);
      CHECK(h1_all.size() == 3);
      int zero = 0;
      for (const auto* pair : h1_all)
        if (pair->zero_persistence()) ++zero;
      CHECK(zero == 2);
    }
  }

  TEST_CASE("R = dV and pivots are distinct on random graphs") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      GeneratedGraph gg =
          random_graph(GraphFamily::kRandomConnected, 4, 6, rng);
      Filtration f =
          build_filtration(all_pairs(gg.graph, DistanceKind::kD1));
      ReducedMatrix rm = reduce(f);
      auto boundary = boundary_columns(f);
      const int m = static_cast<int>(f.entries.size());

      std::set<int> pivots;
      int destroyers = 0;
      for (int j = 0; j < m; ++j) {
        // R column j equals the Z/2 sum of boundary columns listed in V.
        std::set<int> acc;
        for (int k : rm.v_columns[j])
          for (int row : boundary[k]) {
            if (!acc.insert(row).second) acc.erase(row);
          }
        CHECK(std::vector<int>(acc.begin(), acc.end()) == rm.r_columns[j]);

        CHECK(!rm.v_columns[j].empty());
        CHECK(rm.v_columns[j].back() == j);  // unit diagonal
        if (rm.low[j] != -1) {
          ++destroyers;
          CHECK(pivots.insert(rm.low[j]).second);
          CHECK(rm.killer_of[rm.low[j]] == j);
        }
      }
      // Every simplex is a creator or a destroyer exactly once.
      const int creators = m - destroyers;
      const int essentials = creators - destroyers;
      CHECK(2 * destroyers + essentials == m);
    }
  }
}

TEST_SUITE("betti") {
  TEST_CASE("unit square Betti numbers across the filtration") {
    SquarePipeline p = square_pipeline(DistanceKind::kD2);
    CHECK(betti_at(p.f, 0, Rational(0)) == 4);
    CHECK(betti_at(p.f, 1, Rational(0)) == 0);
    CHECK(betti_at(p.f, 0, Rational(1)) == 1);
    CHECK(betti_at(p.f, 1, Rational(1)) == 1);
    CHECK(betti_at(p.f, 0, Rational(2)) == 1);
    CHECK(betti_at(p.f, 1, Rational(2)) == 0);
    // Between the two critical values nothing changes.
    CHECK(betti_at(p.f, 1, Rational(3, 2)) == 1);
  }

  TEST_CASE("bars containing eps match the rank oracle") {
    Rng rng(53);
    for (int trial = 0; trial < 40; ++trial) {
      GeneratedGraph gg =
          random_graph(GraphFamily::kRandomConnected, 3, 8, rng);
      for (DistanceKind kind : {DistanceKind::kD1, DistanceKind::kD2}) {
        Filtration f = build_filtration(all_pairs(gg.graph, kind));
        ReducedMatrix rm = reduce(f);
        BarcodeSet b = extract_pairs(f, rm, kind);
        std::set<Rational> values;
        for (const auto& e : f.entries) values.insert(e.value);
        for (const Rational& eps : values) {
          REQUIRE(bars_containing(b, 0, eps) == betti_at(f, 0, eps));
          REQUIRE(bars_containing(b, 1, eps) == betti_at(f, 1, eps));
        }
      }
    }
  }
}

TEST_SUITE("barcode io") {
  TEST_CASE("JSON round-trips, essential deaths included") {
    SquarePipeline p = square_pipeline(DistanceKind::kD3);
    std::string text = barcode_to_json(p.barcode);
    BarcodeSet back = barcode_from_json(text);
    CHECK(barcode_to_json(back) == text);
    REQUIRE(back.pairs.size() == p.barcode.pairs.size());
    for (std::size_t i = 0; i < back.pairs.size(); ++i) {
      CHECK(back.pairs[i].dim == p.barcode.pairs[i].dim);
      CHECK(back.pairs[i].birth == p.barcode.pairs[i].birth);
      CHECK(back.pairs[i].death == p.barcode.pairs[i].death);
      CHECK(back.pairs[i].birth_simplex == p.barcode.pairs[i].birth_simplex);
      CHECK(back.pairs[i].cycle == p.barcode.pairs[i].cycle);
    }
    CHECK(text.find("\"inf\"") != std::string::npos);
    CHECK(text.find("\"zero\": true") != std::string::npos);
  }

  TEST_CASE("diagram CSV") {
    SquarePipeline p = square_pipeline(DistanceKind::kD2);
    std::string csv = diagram_to_csv(p.barcode);
    auto rows = diagram_from_csv(csv);
    REQUIRE(rows.size() == p.barcode.pairs.size());
    bool saw_infinite = false;
    for (const auto& row : rows)
      if (std::isinf(row[2])) saw_infinite = true;
    CHECK(saw_infinite);
  }
}

TEST_SUITE("inclusion") {
  TEST_CASE("birth edge sets") {
    // Tree: no cycles at all.
    WeightedGraph tree(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}});
    BarcodeSet tb = barcode_of(all_pairs(tree, DistanceKind::kD2));
    CHECK(birth_edge_set(tb).empty());

    // Square: the single positive bar is born at the ordering-last edge.
    for (DistanceKind kind :
         {DistanceKind::kD1, DistanceKind::kD2, DistanceKind::kD3}) {
      BarcodeSet b = barcode_of(all_pairs(test::square_unit(), kind));
      std::set<Edge> edges = birth_edge_set(b);
      REQUIRE(edges.size() == 1);
      CHECK(*edges.begin() == Edge(2, 3));
    }

    // Larger fixture: cardinality echo.
    test::SongFixture song = test::song_fixture();
    BarcodeSet seven = song.b1;
    seven.pairs.clear();
    for (int i = 0; i < 7; ++i)
      seven.pairs.push_back(test::song_pair(Rational(1, 9 - i), Rational(1, 2),
                                            {i, 8 + (i % 3)}, {i, 8, 11},
                                            {i, 8, 11}));
    CHECK(birth_edge_set(seven).size() == 7);
  }

  TEST_CASE("inclusions hold on worked graphs and fuzzed ones") {
    auto run = [](const WeightedGraph& g) {
      BarcodeSet b1 = barcode_of(all_pairs(g, DistanceKind::kD1));
      BarcodeSet b2 = barcode_of(all_pairs(g, DistanceKind::kD2));
      BarcodeSet b3 = barcode_of(all_pairs(g, DistanceKind::kD3));
      InclusionReport r = verify_inclusion(b2, b3, b1);
      CHECK(r.holds());
      return std::tuple{birth_edge_set(b1), birth_edge_set(b3)};
    };

    run(test::square_unit());
    run(test::heavy_triangle());
    run(test::five_node_detour());

    // Odd cycle: d1 = d3 entrywise, so their birth edge sets coincide.
    Rng rng(61);
    std::vector<test::EdgeSpec> edges;
    for (int v = 0; v < 7; ++v)
      edges.emplace_back(v, (v + 1) % 7, random_weight(rng));
    auto [e1, e3] = run(WeightedGraph(7, std::move(edges)));
    CHECK(e1 == e3);

    for (int trial = 0; trial < 60; ++trial) {
      GeneratedGraph gg =
          random_graph(GraphFamily::kRandomConnected, 4, 9, rng);
      run(gg.graph);
    }
  }

  TEST_CASE("tree inclusions are vacuous") {
    Rng rng(67);
    GeneratedGraph gg = random_graph(GraphFamily::kTree, 4, 9, rng);
    BarcodeSet b1 = barcode_of(all_pairs(gg.graph, DistanceKind::kD1));
    BarcodeSet b2 = barcode_of(all_pairs(gg.graph, DistanceKind::kD2));
    BarcodeSet b3 = barcode_of(all_pairs(gg.graph, DistanceKind::kD3));
    CHECK(b1.dim_pairs(1, true).empty());
    CHECK(verify_inclusion(b2, b3, b1).holds());
  }

  TEST_CASE("mismatched inputs are rejected") {
    test::SongFixture song = test::song_fixture();
    BarcodeSet wrong = song.b2;
    wrong.n = 5;
    CHECK_THROWS_AS(verify_inclusion(wrong, song.b3, song.b1),
                    MismatchedInputs);
    CHECK_THROWS_AS(build_injection(wrong, song.b3, song.b1),
                    MismatchedInputs);
  }
}

TEST_SUITE("injection") {
  TEST_CASE("song-shaped fixture: one Type1 and one Type3") {
    test::SongFixture song = test::song_fixture();
    InjectionReport report = build_injection(song.b2, song.b3, song.b1);
    CHECK(report.count(MatchType::kType1) == 1);
    CHECK(report.count(MatchType::kType2) == 0);
    CHECK(report.count(MatchType::kType3) == 1);
    CHECK(report.violations.empty());
    REQUIRE(report.matches.size() == 2);
    CHECK(report.matches[0].type == MatchType::kType1);
    CHECK(report.matches[0].birth_edge == Edge(4, 8));
    CHECK(report.matches[0].birth == Rational(1, 11));
    CHECK(report.matches[1].type == MatchType::kType3);
    CHECK(report.matches[1].birth_edge == Edge(1, 11));
    REQUIRE(report.matches[1].in_d1.has_value());
    CHECK(*report.matches[1].in_d1->death == Rational(1, 4));
    CHECK_FALSE(report.matches[1].in_d2.has_value());
  }

  TEST_CASE("square graph: a single shared Type1 match") {
    BarcodeSet b1 = barcode_of(all_pairs(test::square_unit(), DistanceKind::kD1));
    BarcodeSet b2 = barcode_of(all_pairs(test::square_unit(), DistanceKind::kD2));
    BarcodeSet b3 = barcode_of(all_pairs(test::square_unit(), DistanceKind::kD3));
    InjectionReport report = build_injection(b2, b3, b1);
    CHECK(report.count(MatchType::kType1) == 1);
    CHECK(report.count(MatchType::kType2) == 0);
    CHECK(report.count(MatchType::kType3) == 0);
    CHECK(report.violations.empty());
    REQUIRE(report.matches.size() == 1);
    CHECK(report.matches[0].birth == 1);
    CHECK(*report.matches[0].in_d2->death == 2);
    CHECK(*report.matches[0].in_d3->death == 2);
    CHECK(*report.matches[0].in_d1->death == 2);
  }

  TEST_CASE("empty d2 and d3 make every match Type3") {
    test::SongFixture song = test::song_fixture();
    song.b2.pairs.clear();
    song.b3.pairs.clear();
    InjectionReport report = build_injection(song.b2, song.b3, song.b1);
    CHECK(report.count(MatchType::kType3) == 2);
    CHECK(report.matches.size() == 2);
  }

  TEST_CASE("a d2 pair missing upstream is a hard error") {
    test::SongFixture song = test::song_fixture();
    song.b3.pairs.clear();  // d2 still holds C1, d3 lost it
    CHECK_THROWS_AS(build_injection(song.b2, song.b3, song.b1), UnmatchedPair);
  }

  TEST_CASE("death ordering violations are reported, not hidden") {
    test::SongFixture song = test::song_fixture();
    song.b2.pairs[0].death = Rational(1, 2);  // now d2 outlives d3 and d1
    InjectionReport report = build_injection(song.b2, song.b3, song.b1);
    REQUIRE_FALSE(report.violations.empty());
  }

  TEST_CASE("duplicate birth edges fall back to death order and are flagged") {
    test::SongFixture song = test::song_fixture();
    PersistencePair extra = song.b1.pairs[0];
    extra.death = Rational(1, 6);
    song.b1.pairs.push_back(extra);
    PersistencePair extra2 = song.b2.pairs[0];
    extra2.death = Rational(1, 7);
    song.b2.pairs.push_back(extra2);
    PersistencePair extra3 = song.b3.pairs[0];
    extra3.death = Rational(1, 7);
    song.b3.pairs.push_back(extra3);
    InjectionReport report = build_injection(song.b2, song.b3, song.b1);
    CHECK(report.used_duplicate_fallback);
    CHECK(report.matches.size() == 3);  // two on (4,8), one on (1,11)
  }

  TEST_CASE("report JSON and combined diagram round-trip") {
    test::SongFixture song = test::song_fixture();
    InjectionReport report = build_injection(song.b2, song.b3, song.b1);
    std::string text = injection_report_to_json(report);
    InjectionReport back = injection_report_from_json(text);
    CHECK(injection_report_to_json(back) == text);
    CHECK(back.count(MatchType::kType1) == 1);
    CHECK(back.count(MatchType::kType3) == 1);

    std::string csv = combined_diagram_csv(report);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "type,kind,birth,death");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) ++rows;
    CHECK(rows == 3 + 1);  // Type1 present in all three kinds, Type3 only in d1
  }

  TEST_CASE("injection works on fuzzed graphs with shared births") {
    Rng rng(71);
    for (int trial = 0; trial < 60; ++trial) {
      GeneratedGraph gg =
          random_graph(GraphFamily::kRandomConnected, 4, 9, rng);
      BarcodeSet b1 = barcode_of(all_pairs(gg.graph, DistanceKind::kD1));
      BarcodeSet b2 = barcode_of(all_pairs(gg.graph, DistanceKind::kD2));
      BarcodeSet b3 = barcode_of(all_pairs(gg.graph, DistanceKind::kD3));
      InjectionReport report = build_injection(b2, b3, b1);
      CHECK(report.violations.empty());
      CHECK_FALSE(report.used_duplicate_fallback);
      CHECK(b2.dim_pairs(1, true).size() <= b3.dim_pairs(1, true).size());
      CHECK(b3.dim_pairs(1, true).size() <= b1.dim_pairs(1, true).size());
      CHECK(report.count(MatchType::kType1) ==
            static_cast<int>(b2.dim_pairs(1, true).size()));
      CHECK(report.matches.size() == b1.dim_pairs(1, true).size());
    }
  }
}
