#include <map>
#include <random>

#include "doctest.h"
#include "dnp/fixtures.hpp"
#include "dnp/strategy.hpp"

using namespace dnp;

namespace {

GameState random_prefix(BoardSpec b, Variant v, std::mt19937_64& rng, int moves) {
  GameState st = GameState::new_game(b, v);
  for (int k = 0; k < moves && st.has_legal_move(); ++k) {
    const auto legal = st.legal_moves();
    st.play(legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)]);
  }
  return st;
}

// Memoized negamax without pruning or move ordering, keyed on the sorted list
// of drawn segments.
struct PlainSolver {
  std::map<std::vector<Segment>, std::int64_t> memo;

  std::int64_t value(const GameState& st) {
    std::vector<Segment> key;
    for (const auto& d : st.segments()) key.push_back(d.segment);
    std::sort(key.begin(), key.end());
    if (st.variant() == Variant::Polygons)
      for (const auto& c : st.claims())
        for (const Point& p : c.outer.vertices()) key.emplace_back(p, Point{p.x + 1, p.y});
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    const auto moves = st.legal_moves();
    if (moves.empty()) best = 0;
    for (const Segment& m : moves) {
      auto [next, out] = apply_move(st, m);
      std::int64_t gain = 0;
      for (const auto& c : out.claimed) gain += c.area.halves;
      const std::int64_t v = gain > 0 ? gain + value(next) : -value(next);
      best = std::max(best, v);
    }
    memo.emplace(std::move(key), best);
    return best;
  }
};

// Best one-turn gain by trying every ordering of claiming moves.
std::int64_t naive_one_turn(const GameState& st) {
  std::int64_t best = 0;
  for (const Segment& m : st.legal_moves()) {
    auto [next, out] = apply_move(st, m);
    std::int64_t gain = 0;
    for (const auto& c : out.claimed) gain += c.area.halves;
    if (gain > 0) best = std::max(best, gain + naive_one_turn(next));
  }
  return best;
}

Point reflect(Point p, int k, int w) {
  // The 8 symmetries of a w x w square of dots.
  const int m = w - 1;
  for (int r = 0; r < (k & 3); ++r) p = {m - p.y, p.x};
  if (k & 4) p = {m - p.x, p.y};
  return p;
}

}  // namespace

TEST_CASE("strategy tokens") {
  for (StrategyId id : all_strategies()) CHECK(parse_strategy(to_string(id)) == id);
  CHECK(to_string(StrategyId::GreedyChild) == "greedy");
  CHECK(to_string(StrategyId::NestedDiamondSecond) == "nested-diamond");
  CHECK_THROWS_AS(parse_strategy("clever"), std::invalid_argument);
}

TEST_CASE("greedy claims an available triangle") {
  GameState st = GameState::new_game({3, 3}, Variant::Triangles);
  st.play(Segment({0, 0}, {1, 0}));
  st.play(Segment({1, 0}, {1, 1}));
  const Segment m = choose_move(StrategyId::GreedyChild, st);
  CHECK(m == Segment({0, 0}, {1, 1}));
  CHECK_FALSE(apply_move(st, m).second.claimed.empty());
}

TEST_CASE("greedy cedes as little as possible") {
  // Fig 5 start: the inner diamond cedes area 2, anything in the outer ring more.
  const GameState st = fixture_state(load_fixture("fig5"));
  StrategyOptions opt;
  opt.domain = nested_diamond_domain({2, {2, 2}}, st);
  const Segment m = choose_move(StrategyId::GreedyChild, st, opt);
  CHECK(m == Segment({1, 2}, {2, 2}));
}

TEST_CASE("random is reproducible") {
  std::mt19937_64 rng(3);
  const GameState st = random_prefix({4, 4}, Variant::Triangles, rng, 6);
  StrategyOptions opt;
  opt.seed = 42;
  const Segment a = choose_move(StrategyId::Random, st, opt);
  CHECK(a == choose_move(StrategyId::Random, st, opt));
  CHECK_FALSE(st.check_move(a).has_value());
}

TEST_CASE("nested-diamond reply in the Fig 5 position") {
  const Fixture f = load_fixture("fig5");
  GameState st = fixture_state(f);
  st.play(f.moves.at(0));
  REQUIRE(st.to_move() == Player::Second);
  const Segment m = choose_move(StrategyId::NestedDiamondSecond, st);
  CHECK(m == f.moves.at(1));
  CHECK(is_double_dealing(st, m));
  CHECK(double_dealing(st, m).ceded == HalfArea{4});
}

TEST_CASE("double-dealing examples") {
  const GameState g10 = fixture_state(load_fixture("fig10"));
  const Segment deal({0, 1}, {0, 0});
  const DoubleDeal d = double_dealing(g10, deal);
  CHECK(d.dealing);
  CHECK(d.ceded == HalfArea{3});
  // Independent view: the mover could take 3/2 now; after the deal the
  // opponent takes 3/2 with one move that claims two faces.
  CHECK(naive_one_turn(g10) == 3);
  auto [after, out] = apply_move(g10, deal);
  CHECK(out.claimed.empty());
  CHECK(naive_one_turn(after) == 3);
  auto [taken, reply] = apply_move(after, Segment({0, 0}, {1, 1}));
  CHECK(reply.claimed.size() == 2);
  CHECK(reply.doublecross);

  const GameState g16 = fixture_state(load_fixture("fig16"));
  CHECK_FALSE(is_double_dealing(g16, Segment({1, 2}, {1, 3})));
  CHECK(naive_one_turn(g16) == 0);

  CHECK(double_dealing_moves(fixture_state(load_fixture("fig15"))).empty());
  CHECK(double_dealing_moves(g10) == std::vector<Segment>{deal});

  // A claiming move never qualifies.
  CHECK_FALSE(is_double_dealing(g10, Segment({0, 0}, {1, 1})));
}

TEST_CASE("one-turn gain agrees with a naive search") {
  std::mt19937_64 rng(11);
  for (Variant v : {Variant::Triangles, Variant::Polygons}) {
    for (int k = 0; k < 60; ++k) {
      const GameState st = random_prefix({3, 3}, v, rng, 4 + k % 9);
      CHECK(best_one_turn(st).gain.halves == naive_one_turn(st));
    }
  }
}

TEST_CASE("solver on tiny positions") {
  // A single open segment: nothing to claim.
  GameState st = GameState::new_game({2, 2}, Variant::Triangles);
  SegmentMask one = st.geometry().empty_mask();
  one.set(static_cast<std::size_t>(st.geometry().index_of(Segment({0, 0}, {1, 0}))));
  const SolveResult r1 = solve(st, 1000, one);
  CHECK(r1.complete);
  CHECK(r1.value == 0);
  CHECK(r1.principal_variation.size() == 1);

  for (BoardSpec b : {BoardSpec{2, 2}, BoardSpec{2, 3}}) {
    for (Variant v : {Variant::Triangles, Variant::Polygons}) {
      const GameState g = GameState::new_game(b, v);
      const SolveResult a = solve(g, 10'000'000, {}, SearchOrder::Lexicographic);
      const SolveResult c = solve(g, 10'000'000, {}, SearchOrder::ClaimsFirstReversed);
      REQUIRE(a.complete);
      REQUIRE(c.complete);
      CHECK(a.value == c.value);
      PlainSolver plain;
      CHECK(plain.value(g) == a.value);
      // Replaying the principal variation realizes the value.
      GameState p = g;
      std::int64_t diff = 0;
      for (const Segment& m : a.principal_variation) {
        const Player mover = p.to_move();
        const auto out = p.play(m);
        for (const auto& cl : out.claimed)
          diff += (mover == Player::First ? 1 : -1) * cl.area.halves;
      }
      CHECK(p.is_over());
      CHECK(diff == a.value);
    }
  }
}

TEST_CASE("solver values respect symmetry and player relabelling") {
  const GameState g = GameState::new_game({3, 3}, Variant::Triangles);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    // A short random opening, then its images under the square's symmetries.
    GameState st = g;
    std::vector<Segment> opening;
    for (int k = 0; k < 7 && st.has_legal_move(); ++k) {
      const auto legal = st.legal_moves();
      const Segment m = legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)];
      if (!apply_move(st, m).second.claimed.empty()) continue;
      st.play(m);
      opening.push_back(m);
    }
    const SolveResult base = solve(st, 50'000'000);
    REQUIRE(base.complete);
    for (int k = 1; k < 8; ++k) {
      GameState img = g;
      for (const Segment& m : opening) img.play(Segment(reflect(m.a(), k, 3), reflect(m.b(), k, 3)));
      const SolveResult r = solve(img, 50'000'000);
      REQUIRE(r.complete);
      CHECK(r.value == base.value);
    }
    // Same position with the other player to move: mover-relative values agree.
    CHECK(solve(st.with_to_move(other(st.to_move())), 50'000'000).value == base.value);
  }
}

TEST_CASE("solver budget") {
  const SolveResult r = solve(GameState::new_game({4, 4}, Variant::Triangles), 500);
  CHECK_FALSE(r.complete);
  CHECK(r.principal_variation.empty());
}

TEST_CASE("nested diamonds") {
  const std::pair<std::int64_t, std::int64_t> expected[] = {{0, 4}, {4, 12}, {8, 28}};
  for (int n = 1; n <= 3; ++n) {
    const PlayoutResult r = nested_diamond_playout({n, {n, n}});
    CHECK(r.first_area.halves == expected[n - 1].first);
    CHECK(r.second_area.halves == expected[n - 1].second);
    CHECK(r.first_area.halves + r.second_area.halves == 4 * n * n);
    CHECK(r.second_area.halves == 2 * (2 * n * n - 2 * n + 2));
  }
  CHECK_THROWS_AS(nested_diamond_state({3, {2, 2}}, Variant::Triangles, {7, 7}), std::invalid_argument);

  for (int n = 1; n <= 2; ++n) {
    const NestedDiamondSpec spec{n, {n, n}};
    const GameState st = nested_diamond_state(spec, Variant::Triangles, nested_diamond_board(spec));
    const SolveResult r = solve(st, 50'000'000, nested_diamond_domain(spec, st));
    REQUIRE(r.complete);
    // First to move; Second's guarantee is 2n^2 - 2n + 2 of 2n^2.
    const std::int64_t second = 2 * (2 * n * n - 2 * n + 2);
    CHECK(-r.value >= second - (4 * n * n - second));
  }
  const NestedDiamondSpec one{1, {1, 1}};
  const GameState d1 = nested_diamond_state(one, Variant::Triangles, {3, 3});
  CHECK(solve(d1, 100000, nested_diamond_domain(one, d1)).value == -4);
}

TEST_CASE("strategies only return legal moves") {
  std::mt19937_64 rng(2024);
  for (Variant v : {Variant::Triangles, Variant::Polygons}) {
    for (int k = 0; k < 300; ++k) {
      const BoardSpec b{3 + k % 2, 3};
      const GameState st = random_prefix(b, v, rng, static_cast<int>(rng() % 14));
      if (!st.has_legal_move()) continue;
      StrategyOptions opt;
      opt.seed = rng();
      opt.solver_budget = 20'000;
      const StrategyId id = all_strategies()[k % 5];
      const Segment m = choose_move(id, st, opt);
      CHECK_MESSAGE(!st.check_move(m).has_value(), to_string(id) << " " << to_string(m));
    }
  }
  const GameState over = [] {
    GameState g = GameState::new_game({2, 2}, Variant::Triangles);
    while (g.has_legal_move()) g.play(g.legal_moves().front());
    return g;
  }();
  CHECK_THROWS_AS(choose_move(StrategyId::GreedyChild, over), StrategyError);
}
