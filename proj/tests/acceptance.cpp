// One PASS/FAIL line per acceptance criterion. Exits 1 if any line fails.
// Optional arguments restrict the run to criteria whose key contains one of them.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dnp/fixtures.hpp"
#include "dnp/geometry.hpp"
#include "dnp/record.hpp"
#include "dnp/strategy.hpp"
#include "dnp/verify.hpp"

using namespace dnp;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
};

struct Criterion {
  std::string key;
  std::string title;
  double limit_s;
  std::function<Outcome()> run;
};

Outcome from_report(const TheoremReport& r) {
  std::ostringstream note;
  note << "checked " << r.checked << ", " << r.violations.size() << " violations";
  if (!r.violations.empty())
    note << "; first: expected " << r.violations.front().expected << ", observed "
         << r.violations.front().observed;
  return {r.pass(), note.str()};
}

Outcome pick_shoelace() {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const LatticeCycle c = random_simple_cycle(rng, 10, 10);
    const LatticeCensus census = lattice_census(c);
    const HalfArea pick = pick_area(static_cast<long long>(census.interior.size()),
                                    static_cast<long long>(census.boundary.size()));
    if (pick != shoelace_area(c)) return {false, "cycle " + std::to_string(i) + ": " + cycle_json(c).dump()};
  }
  return {true, "1000 cycles"};
}

Outcome fig2_census() {
  const LatticeCycle outer = load_fixture("fig2").outer;
  const LatticeCensus census = lattice_census(outer);
  const HalfArea area = shoelace_area(outer);
  std::ostringstream note;
  note << "B=" << census.boundary.size() << ", I=" << census.interior.size() << ", area " << to_string(area);
  const bool ok = census.boundary.size() == 12 && census.interior.size() == 2 && area == HalfArea{14} &&
                  pick_area(2, 12) == area;
  return {ok, note.str()};
}

Outcome nested_diamonds() {
  const TheoremReport r = verify_nested_diamond(3);
  Outcome o = from_report(r);
  for (const json& row : r.details.at("playouts"))
    o.note += "; n=" + std::to_string(row.at("n").get<int>()) + " (" +
              std::to_string(row.at("first_halves").get<long long>()) + ", " +
              std::to_string(row.at("second_halves").get<long long>()) + ") halves";
  return o;
}

Outcome convex_ers() {
  const TheoremReport five = run_theorem("convex-ers-5");
  const TheoremReport six = run_theorem("convex-ers-6");
  Outcome o{five.pass() && six.pass(), ""};
  o.note = "five points: " + std::to_string(five.details.at("found").size()) + " classes found (" +
           from_report(five).note + "); six points: " + from_report(six).note;
  return o;
}

// Memoized negamax with no pruning or move ordering. In Triangles the drawn
// segments determine the rest of the game.
struct PlainSolver {
  std::map<std::vector<Segment>, std::int64_t> memo;

  std::int64_t value(const GameState& st) {
    std::vector<Segment> key;
    for (const auto& d : st.segments()) key.push_back(d.segment);
    std::sort(key.begin(), key.end());
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    const auto moves = st.legal_moves();
    if (moves.empty()) best = 0;
    for (const Segment& m : moves) {
      auto [next, out] = apply_move(st, m);
      std::int64_t gain = 0;
      for (const auto& c : out.claimed) gain += c.area.halves;
      best = std::max(best, gain > 0 ? gain + value(next) : -value(next));
    }
    memo.emplace(std::move(key), best);
    return best;
  }
};

// The lattice symmetries of a w x h rectangle of dots.
std::vector<std::function<Point(Point)>> board_symmetries(int w, int h) {
  std::vector<std::function<Point(Point)>> out;
  for (int k = 0; k < 8; ++k) {
    if ((k & 4) && w != h) continue;
    out.push_back([=](Point p) {
      if (k & 4) p = {p.y, p.x};
      if (k & 1) p = {w - 1 - p.x, p.y};
      if (k & 2) p = {p.x, h - 1 - p.y};
      return p;
    });
  }
  return out;
}

Outcome solver_sanity() {
  std::ostringstream note;
  for (BoardSpec b : {BoardSpec{2, 2}, BoardSpec{2, 3}}) {
    const GameState g = GameState::new_game(b, Variant::Triangles);
    const SolveResult a = solve(g, 50'000'000, {}, SearchOrder::Lexicographic);
    const SolveResult c = solve(g, 50'000'000, {}, SearchOrder::ClaimsFirstReversed);
    if (!a.complete || !c.complete) return {false, "search incomplete"};
    if (a.value != c.value) return {false, "traversal orders disagree"};
    PlainSolver plain;
    if (plain.value(g) != a.value) return {false, "plain negamax disagrees"};
    // Every first move has the same value as each of its images.
    const auto syms = board_symmetries(b.width, b.height);
    for (const Segment& m : g.legal_moves()) {
      GameState st = g;
      st.play(m);
      const std::int64_t v = solve(st, 50'000'000).value;
      for (const auto& f : syms) {
        GameState img = g;
        img.play(Segment(f(m.a()), f(m.b())));
        const SolveResult r = solve(img, 50'000'000);
        if (!r.complete || r.value != v) return {false, "symmetric opening " + to_string(m) + " differs"};
      }
    }
    note << b.width << "x" << b.height << " value " << a.value << " halves; ";
  }
  note << "symmetric openings agree";
  return {true, note.str()};
}

Outcome engine_properties() {
  std::mt19937_64 rng(3);
  for (int game = 0; game < 1000; ++game) {
    const Variant v = game % 2 ? Variant::Polygons : Variant::Triangles;
    const BoardSpec b{2 + game % 3, 2 + (game / 3) % 3};
    GameState g = GameState::new_game(b, v);
    std::vector<Segment> played;
    while (g.has_legal_move()) {
      const auto moves = g.legal_moves();
      const Segment m = moves[rng() % moves.size()];
      g.play(m);
      played.push_back(m);
      if (auto err = check_area_conservation(g)) return {false, "game " + std::to_string(game) + ": " + *err};
    }
    const std::string bytes = save_record(g);
    const GameState back = load_record(bytes);
    if (!(back == g) || save_record(back) != bytes) return {false, "record round trip, game " + std::to_string(game)};
    GameState again = GameState::new_game(b, v);
    for (const Segment& m : played) again.play(m);
    if (!(again == g) || save_record(again) != bytes) return {false, "replay differs, game " + std::to_string(game)};
  }
  return {true, "1000 games"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"pick-shoelace", "Pick/shoelace equivalence on random lattice cycles", 5, pick_shoelace},
      {"fig2", "Fig 2 census and area", 5, fig2_census},
      {"turn-identity-triangles", "Turn identity, Triangles", 30,
       [] { return from_report(run_theorem("turn-identity-triangles")); }},
      {"turn-identity-polygons", "Turn identity, Polygons", 60,
       [] { return from_report(run_theorem("turn-identity-polygons")); }},
      {"nested-diamond", "Nested diamonds", 60, nested_diamonds},
      {"convex-ers", "Convex extremely reduced shapes", 600, convex_ers},
      {"eye-theorems", "Eye suite", 600, [] { return from_report(run_theorem("eye-theorems")); }},
      {"single-turn-claims", "Single-turn claims", 60,
       [] { return from_report(run_theorem("single-turn-claims")); }},
      {"min-double-deal", "Minimum double-deal", 300, [] { return from_report(run_theorem("min-double-deal")); }},
      {"deal-negatives", "Fig 15/16 negatives", 60, [] { return from_report(run_theorem("deal-negatives")); }},
      {"solver-sanity", "Solver sanity", 120, solver_sanity},
      {"engine-properties", "Engine properties", 600, engine_properties},
  };
  const std::vector<std::string> filters(argv + 1, argv + argc);

  int failed = 0, ran = 0;
  for (const Criterion& c : criteria) {
    if (!filters.empty()) {
      bool hit = false;
      for (const auto& f : filters) hit = hit || c.key.find(f) != std::string::npos;
      if (!hit) continue;
    }
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.note += "; over the time limit";
    }
    failed += !o.pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.1f s of %.0f s", secs, c.limit_s);
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.key << ": " << c.title << " [" << timing << "] " << o.note
              << std::endl;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
