#include <random>

#include "doctest.h"
#include "dnp/fixtures.hpp"
#include "dnp/record.hpp"

using namespace dnp;

namespace {

GameState random_game(std::mt19937_64& rng, BoardSpec b, Variant v, bool finish) {
  auto g = GameState::new_game(b, v);
  const int stop = finish ? 1 << 30 : static_cast<int>(rng() % 12);
  for (int i = 0; i < stop && g.has_legal_move(); ++i) {
    const auto moves = g.legal_moves();
    g.play(moves[rng() % moves.size()]);
  }
  return g;
}

}  // namespace

TEST_CASE("record round trip") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Variant v = i % 2 ? Variant::Polygons : Variant::Triangles;
    const BoardSpec b{2 + i % 3, 2 + (i / 3) % 2};
    const GameState g = random_game(rng, b, v, i % 4 != 0);
    const std::string bytes = save_record(g);
    const GameState back = load_record(bytes);
    REQUIRE(back == g);
    CHECK(save_record(back) == bytes);
  }
}

TEST_CASE("empty record is a fresh game") {
  const auto g = load_record(
      std::string(R"({"board":{"width":3,"height":3},"variant":"triangles","moves":[]})"));
  CHECK(g == GameState::new_game({3, 3}, Variant::Triangles));
}

TEST_CASE("hand-written opening replays") {
  const std::string text = R"({
    "board": {"width": 5, "height": 5}, "variant": "triangles",
    "moves": [
      {"player": 1, "from": [1, 2], "to": [2, 2], "claims": []},
      {"player": 2, "from": [2, 2], "to": [3, 2], "claims": []}
    ],
    "result": {"p1_halves": 0, "p2_halves": 0, "turns": 2, "doublecrosses": 0, "unused_dots": 22}
  })";
  const auto g = load_record(text);
  CHECK(g.segments().size() == 2);
  CHECK(g.to_move() == Player::First);
}

TEST_CASE("records are validated") {
  CHECK_THROWS_AS(load_record(std::string("{not json")), RecordError);
  CHECK_THROWS_AS(load_record(std::string(R"({"board":{"width":3},"variant":"triangles","moves":[]})")),
                  RecordError);
  // crossing diagonals
  CHECK_THROWS_AS(load_record(std::string(R"({"board":{"width":2,"height":2},"variant":"triangles",
      "moves":[{"player":1,"from":[0,0],"to":[1,1]},{"player":2,"from":[0,1],"to":[1,0]}]})")),
                  RecordError);
  // wrong mover
  CHECK_THROWS_AS(load_record(std::string(R"({"board":{"width":2,"height":2},"variant":"triangles",
      "moves":[{"player":2,"from":[0,0],"to":[1,1]}]})")),
                  RecordError);
  // claim that did not happen
  CHECK_THROWS_AS(load_record(std::string(R"({"board":{"width":2,"height":2},"variant":"triangles",
      "moves":[{"player":1,"from":[0,0],"to":[1,1],"claims":[{"outer":[[0,0],[1,0],[1,1]],"area_halves":1}]}]})")),
                  RecordError);
  // result mismatch
  std::mt19937_64 rng(9);
  auto j = record_json(random_game(rng, {3, 3}, Variant::Triangles, true));
  j["result"]["turns"] = j["result"]["turns"].get<int>() + 1;
  CHECK_THROWS_AS(load_record(j), RecordError);
}

TEST_CASE("replays are deterministic") {
  std::mt19937_64 a(77), b(77);
  for (int i = 0; i < 10; ++i) {
    const auto ga = random_game(a, {3, 3}, Variant::Polygons, true);
    const auto gb = random_game(b, {3, 3}, Variant::Polygons, true);
    CHECK(ga == gb);
    CHECK(save_record(ga) == save_record(gb));
  }
}

TEST_CASE("fixtures load") {
  const auto names = fixture_names();
  CHECK(names.size() == 14);
  for (const auto& n : names) {
    const Fixture f = load_fixture(n);
    CHECK(f.name == n);
    const GameState s = fixture_state(f);
    const auto problem = check_area_conservation(s);
    CHECK_MESSAGE(!problem.has_value(), n << ": " << problem.value_or(""));
    CHECK(parse_fixture(fixture_json(f)).outer == f.outer);
  }
  const auto fig2 = load_fixture("fig2");
  const auto census = lattice_census(fig2.outer);
  CHECK(census.boundary.size() == 12);
  CHECK(census.interior.size() == 2);
  CHECK(shoelace_area(fig2.outer) == HalfArea{14});
  CHECK_THROWS(load_fixture("fig99"));
}
