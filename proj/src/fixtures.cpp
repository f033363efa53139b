#include "dnp/fixtures.hpp"

#include <map>

namespace dnp {

// Generated from data/fixtures at build time.
const std::map<std::string, std::string>& embedded_fixtures();

namespace {

Segment segment_from_json(const json& j) {
  return Segment(point_from_json(j.at("from")), point_from_json(j.at("to")));
}

json segment_json(const Segment& s) {
  return {{"from", point_json(s.a())}, {"to", point_json(s.b())}};
}

}  // namespace

Fixture parse_fixture(const json& j) {
  try {
    Fixture f{j.value("name", std::string{}),
              {j.at("board").at("width").get<int>(), j.at("board").at("height").get<int>()},
              parse_variant(j.value("variant", std::string{"triangles"})),
              cycle_from_json(j.at("outer")),
              j.value("outer_drawn", true),
              {},
              {},
              {}};
    for (const auto& s : j.value("segments", json::array())) f.segments.push_back(segment_from_json(s));
    for (const auto& c : j.value("claimed", json::array()))
      f.claimed.push_back(cycle_from_json(c.at("outer")));
    for (const auto& s : j.value("moves", json::array())) f.moves.push_back(segment_from_json(s));
    return f;
  } catch (const json::exception& e) {
    throw RecordError(std::string("malformed fixture: ") + e.what());
  } catch (const GeometryError& e) {
    throw RecordError(std::string("malformed fixture: ") + e.what());
  }
}

json fixture_json(const Fixture& f) {
  json j = {{"name", f.name},
            {"board", {{"width", f.board.width}, {"height", f.board.height}}},
            {"variant", to_string(f.variant)},
            {"outer", cycle_json(f.outer)},
            {"outer_drawn", f.outer_drawn}};
  json segs = json::array();
  for (const auto& s : f.segments) segs.push_back(segment_json(s));
  json claimed = json::array();
  for (const auto& c : f.claimed) claimed.push_back({{"outer", cycle_json(c)}});
  json moves = json::array();
  for (const auto& s : f.moves) moves.push_back(segment_json(s));
  j["segments"] = segs;
  j["claimed"] = claimed;
  j["moves"] = moves;
  return j;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : embedded_fixtures()) out.push_back(name);
  return out;
}

Fixture load_fixture(const std::string& name) {
  const auto& all = embedded_fixtures();
  auto it = all.find(name);
  if (it == all.end()) throw std::invalid_argument("unknown fixture '" + name + "'");
  return parse_fixture(json::parse(it->second));
}

GameState fixture_state(const Fixture& f) {
  std::vector<DrawnSegment> segs;
  if (f.outer_drawn) {
    const auto v = f.outer.vertices();
    for (std::size_t i = 0; i < v.size(); ++i)
      segs.push_back({Segment(v[i], v[(i + 1) % v.size()]), Player::First});
  }
  for (const auto& s : f.segments) segs.push_back({s, Player::First});
  std::vector<Claim> claims;
  for (const auto& c : f.claimed) {
    const auto v = c.vertices();
    for (std::size_t i = 0; i < v.size(); ++i)
      segs.push_back({Segment(v[i], v[(i + 1) % v.size()]), Player::First});
    claims.push_back({c, Player::First, shoelace_area(c)});
  }
  return GameState::from_position(f.board, f.variant, segs, claims, Player::First);
}

}  // namespace dnp
