#include <random>

#include "doctest.h"
#include "dnp/engine.hpp"

using namespace dnp;

TEST_CASE("new game") {
  auto g = GameState::new_game({3, 3}, Variant::Triangles);
  CHECK(g.accounting().D == 9);
  CHECK(g.accounting().T == 0);
  CHECK(GameState::new_game({2, 2}, Variant::Polygons).board().total_area() == HalfArea{2});
  CHECK(GameState::new_game({5, 5}, Variant::Triangles).accounting().D == 25);
  CHECK_THROWS(GameState::new_game({1, 1}, Variant::Triangles));
  CHECK_THROWS(GameState::new_game({1, 4}, Variant::Triangles));
  CHECK(g.to_move() == Player::First);
}

TEST_CASE("legal moves on small boards") {
  // Oracle: all dot pairs with coprime deltas.
  auto count_primitive = [](int w, int h) {
    int n = 0;
    for (int i = 0; i < w * h; ++i)
      for (int j = i + 1; j < w * h; ++j) {
        int dx = std::abs(i % w - j % w), dy = std::abs(i / w - j / w);
        while (dy) {
          dx %= dy;
          std::swap(dx, dy);
        }
        n += dx == 1;
      }
    return n;
  };
  auto g = GameState::new_game({2, 2}, Variant::Triangles);
  CHECK(g.legal_moves().size() == 6);
  CHECK(GameState::new_game({3, 3}, Variant::Triangles).legal_moves().size() == 28);
  CHECK(count_primitive(3, 3) == 28);
  CHECK(GameState::new_game({4, 5}, Variant::Triangles).legal_moves().size() ==
        static_cast<std::size_t>(count_primitive(4, 5)));

  g.play(Segment({0, 0}, {1, 1}));
  const auto moves = g.legal_moves();
  CHECK(std::find(moves.begin(), moves.end(), Segment({0, 1}, {1, 0})) == moves.end());
  CHECK(moves.size() == 4);
}

TEST_CASE("illegal move reasons") {
  auto g = GameState::new_game({3, 3}, Variant::Triangles);
  g.play(Segment({0, 0}, {1, 1}));
  CHECK(g.check_move({0, 0}, {3, 0}) == IllegalReason::OutOfBoard);
  CHECK(g.check_move({0, 0}, {2, 2}) == IllegalReason::NonPrimitive);
  CHECK(g.check_move({1, 1}, {0, 0}) == IllegalReason::Duplicate);
  CHECK(g.check_move({0, 1}, {1, 0}) == IllegalReason::Conflict);
  CHECK_FALSE(g.check_move({0, 0}, {1, 0}).has_value());
  try {
    g.play(Segment({1, 0}, {0, 1}));
    FAIL("expected rejection");
  } catch (const IllegalMove& e) {
    CHECK(e.reason() == IllegalReason::Conflict);
  }
  CHECK(to_string(IllegalReason::InsideClaimedRegion) == "inside-claimed-region");
}

TEST_CASE("triangle claim grants an extra move") {
  auto g = GameState::new_game({3, 3}, Variant::Triangles);
  g.play(Segment({0, 0}, {1, 0}));
  g.play(Segment({0, 0}, {1, 1}));
  CHECK(g.to_move() == Player::First);
  const auto out = g.play(Segment({1, 0}, {1, 1}));
  REQUIRE(out.claimed.size() == 1);
  CHECK(out.claimed[0].area == HalfArea{1});
  CHECK(out.player == Player::First);
  CHECK(out.extra_turn);
  CHECK_FALSE(out.doublecross);
  CHECK(out.next_player == Player::First);
  CHECK(g.scores().first == HalfArea{1});
  CHECK(g.scores().second == HalfArea{});
  CHECK(g.accounting().T == 2);
}

TEST_CASE("doublecross closes both subtriangles") {
  // Triangle (0,0),(2,1),(0,1) with (1,1) on its top edge.
  auto g = GameState::from_position({3, 2}, Variant::Triangles,
                                    {{Segment({0, 0}, {2, 1}), Player::First},
                                     {Segment({0, 1}, {2, 1}), Player::First},
                                     {Segment({0, 0}, {0, 1}), Player::Second}},
                                    {}, Player::First);
  CHECK(g.segments().size() == 4);
  CHECK(g.claims().empty());
  const auto out = g.play(Segment({0, 0}, {1, 1}));
  CHECK(out.claimed.size() == 2);
  CHECK(out.doublecross);
  CHECK(out.extra_turn);
  CHECK(g.accounting().C == 1);
  CHECK(g.scores().first == HalfArea{2});
}

TEST_CASE("polygons claims the octagon in one move") {
  const std::vector<Point> oct{{0, 0}, {1, 1}, {0, 1}, {1, 2}, {0, 3}, {2, 2}, {3, 3}, {2, 0}};
  std::vector<DrawnSegment> segs;
  for (std::size_t i = 0; i + 1 < oct.size(); ++i)
    segs.push_back({Segment(oct[i], oct[i + 1]), Player::First});
  segs.push_back({Segment({2, 0}, {1, 0}), Player::First});
  auto g = GameState::from_position({4, 4}, Variant::Polygons, segs, {}, Player::Second);
  const auto out = g.play(Segment({1, 0}, {0, 0}));
  REQUIRE(out.claimed.size() == 1);
  CHECK(out.claimed[0].area == HalfArea{9});
  CHECK(out.claimed[0].owner == Player::Second);
  // interior dots of the octagon are now unavailable
  CHECK(g.check_move({1, 0}, {2, 1}) == IllegalReason::InsideClaimedRegion);
}

TEST_CASE("polygons does not claim a face with an interior segment") {
  auto g = GameState::from_position(
      {3, 3}, Variant::Polygons,
      {{Segment({0, 0}, {2, 0}), Player::First}, {Segment({2, 0}, {2, 2}), Player::First},
       {Segment({2, 2}, {0, 2}), Player::First}, {Segment({1, 1}, {2, 1}), Player::First}},
      {}, Player::First);
  const auto out = g.play(Segment({0, 0}, {0, 1}));
  CHECK(out.claimed.empty());
  const auto out2 = g.play(Segment({0, 1}, {0, 2}));
  CHECK(out2.claimed.empty());
  const auto f = g.faces();
  REQUIRE(f.size() == 1);
  CHECK_FALSE(f[0].simple);  // (1,1)-(2,1) hangs off the boundary
}

TEST_CASE("faces") {
  auto g = GameState::new_game({4, 4}, Variant::Polygons);
  CHECK(g.faces().empty());
  for (auto s : {Segment({0, 0}, {1, 0}), Segment({1, 0}, {1, 1}), Segment({1, 1}, {0, 1})})
    g.play(s);
  g.play(Segment({0, 1}, {0, 0}));
  auto f = g.faces();
  REQUIRE(f.size() == 1);
  CHECK(f[0].area == HalfArea{2});
  CHECK(f[0].owner.has_value());

  // Quadrilateral eye with an inner diamond.
  const std::vector<Point> outer{{1, 0}, {4, 2}, {2, 3}, {0, 2}};
  const std::vector<Point> iris{{1, 1}, {2, 1}, {2, 2}, {1, 2}};
  std::vector<DrawnSegment> segs;
  for (std::size_t i = 0; i < outer.size(); ++i)
    segs.push_back({Segment(outer[i], outer[(i + 1) % outer.size()]), Player::First});
  for (std::size_t i = 0; i < iris.size(); ++i)
    segs.push_back({Segment(iris[i], iris[(i + 1) % iris.size()]), Player::First});
  auto h = GameState::from_position({5, 4}, Variant::Polygons, segs, {}, Player::First);
  const auto hf = h.faces();
  REQUIRE(hf.size() == 2);
  const Face& big = hf[0].holes.empty() ? hf[1] : hf[0];
  CHECK(big.holes.size() == 1);
  CHECK(big.holes[0].size() == 4);
  CHECK(big.area == shoelace_area(LatticeCycle(outer)) - HalfArea{2});
  CHECK_FALSE(check_area_conservation(h).has_value());
}

TEST_CASE("scores and game end") {
  std::mt19937_64 rng(3);
  for (auto v : {Variant::Triangles, Variant::Polygons}) {
    for (BoardSpec b : {BoardSpec{2, 2}, BoardSpec{3, 3}}) {
      auto g = GameState::new_game(b, v);
      CHECK(g.scores().first == HalfArea{});
      CHECK_FALSE(g.is_over());
      while (!g.is_over()) {
        const auto moves = g.legal_moves();
        g.play(moves[rng() % moves.size()]);
      }
      CHECK(g.claimed_area() == b.total_area());
      CHECK(g.scores().first + g.scores().second == b.total_area());
    }
  }
}

TEST_CASE("random games keep every invariant") {
  std::mt19937_64 rng(17);
  for (int game = 0; game < 60; ++game) {
    const Variant v = game % 2 ? Variant::Polygons : Variant::Triangles;
    auto g = GameState::new_game({3 + game % 2, 3}, v);
    while (g.has_legal_move()) {
      const auto moves = g.legal_moves();
      g.play(moves[rng() % moves.size()]);
      REQUIRE_FALSE(check_area_conservation(g).has_value());
    }
    REQUIRE_FALSE(check_segment_invariants(g).has_value());
    const auto acc = g.accounting();
    if (v == Variant::Triangles)
      CHECK(acc.T == acc.D + acc.C);
    else
      CHECK(acc.T == acc.D + acc.C - acc.I_unused);
  }
}

TEST_CASE("no unclaimed unit triangle survives in triangles") {
  std::mt19937_64 rng(23);
  for (int game = 0; game < 30; ++game) {
    auto g = GameState::new_game({3, 3}, Variant::Triangles);
    while (g.has_legal_move()) {
      const auto moves = g.legal_moves();
      g.play(moves[rng() % moves.size()]);
      for (const Face& f : g.faces())
        if (f.outer.size() == 3 && f.area == HalfArea{1}) REQUIRE(f.owner.has_value());
    }
  }
}

TEST_CASE("value semantics") {
  auto a = GameState::new_game({3, 3}, Variant::Triangles);
  auto b = a;
  b.play(Segment({0, 0}, {1, 0}));
  CHECK(a.segments().empty());
  CHECK_FALSE(a == b);
  auto [c, out] = apply_move(a, Segment({0, 0}, {1, 0}));
  CHECK(c == b);
  CHECK_FALSE(out.extra_turn);
  CHECK(out.next_player == Player::Second);
}

TEST_CASE("claiming mask matches per-move claims") {
  std::mt19937_64 rng(17);
  for (Variant v : {Variant::Triangles, Variant::Polygons}) {
    for (int game = 0; game < 40; ++game) {
      GameState st = GameState::new_game({4, 3}, v);
      const int plies = static_cast<int>(rng() % 16);
      for (int k = 0; k < plies && st.has_legal_move(); ++k) {
        const auto legal = st.legal_moves();
        st.play(legal[rng() % legal.size()]);
      }
      const SegmentMask mask = st.claiming_mask();
      for (std::size_t i : st.legal_mask().indices()) {
        const bool claims = !st.claims_if(i).empty();
        CHECK(mask.test(i) == claims);
        CHECK((st.gain_if(i).halves > 0) == claims);
      }
    }
  }
}

TEST_CASE("a bridge between drawn components adds no face") {
  GameState st = GameState::new_game({5, 3}, Variant::Polygons);
  for (const auto& [a, b] : {std::pair{Point{0, 0}, Point{1, 0}}, {Point{1, 0}, Point{1, 1}},
                             {Point{1, 1}, Point{0, 0}}, {Point{3, 0}, Point{4, 1}}})
    st.play(Segment(a, b));
  const std::size_t before = st.faces().size();
  auto [next, out] = apply_move(st, Segment({1, 1}, {2, 1}));
  CHECK(out.claimed.empty());
  CHECK(next.faces().size() == before);
  auto [joined, out2] = apply_move(next, Segment({2, 1}, {3, 0}));
  CHECK(out2.claimed.empty());
  CHECK(joined.faces().size() == before);
}
