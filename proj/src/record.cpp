#include "dnp/record.hpp"

namespace dnp {

json point_json(const Point& p) { return json::array({p.x, p.y}); }

Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw RecordError("expected [x,y], got " + j.dump());
  return {j[0].get<int>(), j[1].get<int>()};
}

json cycle_json(const LatticeCycle& c) {
  json out = json::array();
  for (const Point& p : c.vertices()) out.push_back(point_json(p));
  return out;
}

LatticeCycle cycle_from_json(const json& j) {
  if (!j.is_array()) throw RecordError("expected a list of points");
  std::vector<Point> pts;
  for (const auto& p : j) pts.push_back(point_from_json(p));
  try {
    return LatticeCycle(std::move(pts));
  } catch (const GeometryError& e) {
    throw RecordError(e.what());
  }
}

json claim_json(const Claim& c) {
  return {{"outer", cycle_json(c.outer)}, {"area_halves", c.area.halves}};
}

namespace {

json result_json(const GameState& s) {
  const auto sc = s.scores();
  const auto acc = s.accounting();
  return {{"p1_halves", sc.first.halves},
          {"p2_halves", sc.second.halves},
          {"turns", acc.T},
          {"doublecrosses", acc.C},
          {"unused_dots", acc.I_unused}};
}

}  // namespace

json record_json(const GameState& state) {
  GameState replay = GameState::new_game(state.board(), state.variant());
  json moves = json::array();
  for (const auto& d : state.segments()) {
    json m = {{"player", player_number(d.player)},
              {"from", point_json(d.segment.a())},
              {"to", point_json(d.segment.b())}};
    const auto out = replay.play(d.segment);
    json claims = json::array();
    for (const Claim& c : out.claimed) claims.push_back(claim_json(c));
    m["claims"] = claims;
    moves.push_back(std::move(m));
  }
  if (!(replay == state)) throw RecordError("state is not reachable by play from an empty board");
  return {{"board", {{"width", state.board().width}, {"height", state.board().height}}},
          {"variant", to_string(state.variant())},
          {"moves", moves},
          {"result", result_json(state)}};
}

std::string save_record(const GameState& state) { return record_json(state).dump(2) + "\n"; }

GameState load_record(const json& r) {
  try {
    const BoardSpec board{r.at("board").at("width").get<int>(),
                          r.at("board").at("height").get<int>()};
    const Variant v = parse_variant(r.at("variant").get<std::string>());
    GameState st = GameState::new_game(board, v);
    const json& moves = r.at("moves");
    for (std::size_t i = 0; i < moves.size(); ++i) {
      const json& m = moves[i];
      const std::string where = "move " + std::to_string(i + 1);
      const int player = m.at("player").get<int>();
      if (player != player_number(st.to_move()))
        throw RecordError(where + ": player " + std::to_string(player) + " is not to move");
      const Point a = point_from_json(m.at("from"));
      const Point b = point_from_json(m.at("to"));
      if (auto reason = st.check_move(a, b)) throw RecordError(where + ": " + to_string(*reason));
      const auto out = st.play(Segment(a, b));
      if (m.contains("claims")) {
        json got = json::array();
        for (const Claim& c : out.claimed) got.push_back(claim_json(c));
        json want = json::array();
        for (const auto& c : m.at("claims"))
          want.push_back({{"outer", cycle_json(cycle_from_json(c.at("outer")))},
                          {"area_halves", c.at("area_halves").get<long long>()}});
        if (got != want) throw RecordError(where + ": recorded claims disagree with replay");
      }
    }
    if (r.contains("result") && r.at("result") != result_json(st))
      throw RecordError("recorded result disagrees with replay: " + result_json(st).dump());
    return st;
  } catch (const json::exception& e) {
    throw RecordError(std::string("malformed record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw RecordError(e.what());
  }
}

GameState load_record(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    throw RecordError(std::string("malformed record: ") + e.what());
  }
  return load_record(j);
}

json state_json(const GameState& state) {
  json segs = json::array();
  for (const auto& d : state.segments())
    segs.push_back({{"from", point_json(d.segment.a())},
                    {"to", point_json(d.segment.b())},
                    {"player", player_number(d.player)}});
  json claims = json::array();
  for (const Claim& c : state.claims())
    claims.push_back({{"outer", cycle_json(c.outer)},
                      {"player", player_number(c.owner)},
                      {"area_halves", c.area.halves}});
  const auto sc = state.scores();
  const auto acc = state.accounting();
  return {{"board", {{"width", state.board().width}, {"height", state.board().height}}},
          {"variant", to_string(state.variant())},
          {"segments", segs},
          {"claims", claims},
          {"to_move", player_number(state.to_move())},
          {"scores", {{"p1_halves", sc.first.halves}, {"p2_halves", sc.second.halves}}},
          {"turns", acc.T},
          {"doublecrosses", acc.C},
          {"game_over", !state.has_legal_move()}};
}

json outcome_json(const MoveOutcome& o) {
  json claims = json::array();
  for (const Claim& c : o.claimed) claims.push_back(claim_json(c));
  return {{"player", player_number(o.player)},
          {"from", point_json(o.move.a())},
          {"to", point_json(o.move.b())},
          {"claims", claims},
          {"extra_turn", o.extra_turn},
          {"doublecross", o.doublecross},
          {"next_player", player_number(o.next_player)},
          {"game_over", o.game_over}};
}

}  // namespace dnp
