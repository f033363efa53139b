#pragma once

// GameRecord files and the JSON views of engine types shared by the CLI and
// the server.

#include <stdexcept>
#include <string>

#include "dnp/engine.hpp"
#include "json.hpp"

namespace dnp {

using json = nlohmann::json;

class RecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json point_json(const Point& p);
Point point_from_json(const json& j);
json cycle_json(const LatticeCycle& c);
LatticeCycle cycle_from_json(const json& j);
json claim_json(const Claim& c);  // {"outer","area_halves"}

json record_json(const GameState& state);
std::string save_record(const GameState& state);

// Replays the moves, checking the redundant claim and result fields.
GameState load_record(const json& record);
GameState load_record(const std::string& bytes);

// {board, variant, segments, claims, to_move, scores, turns, doublecrosses,
// game_over}
json state_json(const GameState& state);
json outcome_json(const MoveOutcome& o);

}  // namespace dnp
