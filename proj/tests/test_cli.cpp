#include "doctest.h"
#include "io.hpp"

using namespace rb;
using namespace rbio;

TEST_SUITE("cli") {
  TEST_CASE("graph files in every accepted form") {
    const ColoredGraph g2 = complete_closure({{0, 0}, {-1, -1}});
    for (const char* text : {R"({"vertices": [[0,0],[-1,-1]]})", R"([[0,0],[-1,-1]])", R"(["[0,0]", "[-1,-1]t"])",
                             "vertices: [[0,0],[-1,-1]]\n", "# comment\n\n[[0,0],[-1,-1]]\n"}) {
      const auto gs = parse_graphs(text);
      REQUIRE(gs.size() == 1);
      CHECK(gs[0].vertices() == g2.vertices());
    }
    const auto many = parse_graphs(R"({"graphs": [{"vertices": [[0,0]]}, [[0,0],[1,-1]], {"vertices": ["[1,0]","[0,1]"]}]})");
    REQUIRE(many.size() == 3);
    CHECK(many[2].vertex(0).coeffs == IntVec{1, 0});
    CHECK(parse_graphs("vertices: [[0,0]]\nvertices: [[0,0],[1,-1]]\n").size() == 2);
  }

  TEST_CASE("reports read back as graph files") {
    const ColoredGraph g = complete_closure({{0, 0}, {1, -1}, {-2, 0}, {-1, -1}});
    const Json j = graph_json(g);
    CHECK(j["allowable"] == false);
    CHECK(j["class"] == "degenerate_resonant");
    CHECK(j["edges"].size() == 4);
    CHECK(j["rank"] == 2);
    const auto back = parse_graphs(Json{{"graphs", {j}}}.dump());
    REQUIRE(back.size() == 1);
    CHECK(back[0].vertices() == g.vertices());
    // Ordered keys give byte-identical dumps.
    CHECK(graph_json(g).dump() == j.dump());
  }

  TEST_CASE("malformed input reports line and column") {
    try {
      parse_graphs("vertices: [[0,0]]\nvertices: [[0,0],[1,-1]\n", "g.txt");
      FAIL("no error");
    } catch (const InputError& e) {
      CHECK(e.line == 2);
      CHECK(e.column > 0);
      CHECK(std::string(e.what()).starts_with("g.txt:2:"));
    }
    try {
      parse_graphs("{\"vertices\":\n  [[0,0], [1,x]]}", "g.json");
      FAIL("no error");
    } catch (const InputError& e) {
      CHECK(e.line == 2);
      CHECK(e.column == 14);  // the x
    }
    CHECK_THROWS_AS(parse_graphs(R"({"vertices": [[0,0],[3,3]]})"), InputError);  // bad mass
    CHECK_THROWS_AS(parse_graphs(R"({"edges": []})"), InputError);
    CHECK_THROWS_AS(parse_graphs("vertices: [[1,-1]]\n"), InputError);  // no root
  }

  TEST_CASE("sites files") {
    const TangentialSites s = parse_sites("[[1,2,3],[4,5,6]]");
    CHECK(s.n == 3);
    CHECK(s.m() == 2);
    CHECK_THROWS_AS(parse_sites("[[1,2],[1,2]]"), InputError);
    CHECK_THROWS_AS(parse_sites("[[1,2],[3]]"), InputError);
    CHECK_THROWS_AS(parse_sites("[[1,2.5]]"), InputError);
    CHECK_THROWS_AS(parse_sites("[]"), InputError);
  }

  TEST_CASE("certificate and verdict reports") {
    const MultiPoly chi = charpoly_block(complete_closure({{0, 0}, {-1, 1}, {-2, 2}}));
    const Json c = certificate_json(certify_irreducible(chi));
    CHECK(c["verdict"] == "reducible");
    CHECK(c["factors"].size() == 2);
    const Json irr = certificate_json(certify_irreducible(charpoly_block(complete_closure({{0, 0}, {-1, -1}}))));
    CHECK(irr["verdict"] == "irreducible");
    CHECK_FALSE(irr.contains("factors"));
    CHECK(irr["primes"].size() == irr["degree_patterns"].size());
    const TangentialSites s(4, {{3, -1, 4, 1}, {-5, 9, 2, -6}});
    const Json v = verdict_json(solve_realization(build_system(ColoredGraph(2, {{{0, 0}, false}, {{-2, 0}, true}}), s)));
    CHECK(v["verdict"] == "only_in_S");
    CHECK(v["exact_point"] == Json{"3", "-1", "4", "1"});
  }
}
