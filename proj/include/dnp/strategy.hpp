#pragma once

// Move choice: simple playing policies, double-dealing analysis, an exact
// alpha-beta solver and the scripted nested-diamond playout.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnp/engine.hpp"

namespace dnp {

enum class StrategyId { Random, GreedyChild, DoubleDealer, NestedDiamondSecond, Exact };

std::string to_string(StrategyId id);
StrategyId parse_strategy(const std::string& s);  // throws std::invalid_argument
std::vector<StrategyId> all_strategies();

class StrategyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Memo key for a position: drawn segments plus the claimed cycles. The player
// to move is left out; every value computed on top of it is mover-relative.
struct PositionKey {
  std::vector<std::uint64_t> words;
  std::size_t claims = 0;
  friend bool operator==(const PositionKey&, const PositionKey&) = default;
};
struct PositionKeyHash {
  std::size_t operator()(const PositionKey& k) const;
};
PositionKey position_key(const GameState& st);

// All moves, or those in `domain`.
SegmentMask moves_in(const GameState& st, const std::optional<SegmentMask>& domain);

// The most area the player to move can claim before having to make a
// non-claiming move, and one sequence achieving it.
struct OneTurn {
  HalfArea gain;
  std::vector<Segment> moves;
};
OneTurn best_one_turn(const GameState& st, const std::optional<SegmentMask>& domain = {});

struct DoubleDeal {
  bool dealing = false;
  HalfArea ceded;  // what the opponent takes in reply
};
// s claims nothing, the opponent's best reply turn claims a region R around s
// and then has to make a non-claiming move, and before s the mover could have
// claimed all of R in one turn.
DoubleDeal double_dealing(const GameState& st, const Segment& s);
bool is_double_dealing(const GameState& st, const Segment& s);
// Every double-dealing move of the position, sharing one search memo. With a
// domain, only its moves count, for both players.
std::vector<Segment> double_dealing_moves(const GameState& st,
                                          const std::optional<SegmentMask>& domain = {});

// Claiming moves followed by a double-dealing move, all inside `domain`, that
// cede the least area. Nothing if no such plan exists.
struct DealPlan {
  std::vector<Segment> claims;
  Segment deal;
  HalfArea ceded;
};
std::optional<DealPlan> double_deal_plan(const GameState& st, const SegmentMask& domain);

struct StrategyOptions {
  std::uint64_t seed = 0;
  std::optional<SegmentMask> domain;    // restrict play to these segments
  std::uint64_t solver_budget = 2'000'000;  // node budget for Exact
};

Segment choose_move(StrategyId id, const GameState& st, const StrategyOptions& opt = {});

enum class SearchOrder { Lexicographic, ClaimsFirstReversed };

struct SolveResult {
  std::int64_t value = 0;  // halves: mover's future area minus the opponent's
  std::vector<Segment> principal_variation;
  std::uint64_t nodes_visited = 0;
  bool complete = true;  // false when the budget ran out; value is then meaningless
};

SolveResult solve(const GameState& st, std::uint64_t node_budget,
                  const std::optional<SegmentMask>& domain = {},
                  SearchOrder order = SearchOrder::ClaimsFirstReversed);

struct NestedDiamondSpec {
  int n = 1;
  Point center{1, 1};
};

// The smallest board holding the diamonds around `center`.
BoardSpec nested_diamond_board(const NestedDiamondSpec& spec);
// All n diamond outlines drawn, nothing claimed, First to move.
GameState nested_diamond_state(const NestedDiamondSpec& spec, Variant v, BoardSpec board);
SegmentMask nested_diamond_domain(const NestedDiamondSpec& spec, const GameState& st);

struct PlayoutResult {
  HalfArea first_area;
  HalfArea second_area;
  std::vector<MoveOutcome> moves;
};

// First plays GreedyChild, Second NestedDiamondSecond, both confined to the
// outer diamond.
PlayoutResult nested_diamond_playout(const NestedDiamondSpec& spec, Variant v = Variant::Triangles);

}  // namespace dnp
