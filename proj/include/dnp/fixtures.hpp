#pragma once

// Region fixtures: an outer cycle plus interior segments and claimed cycles.
// The files live in data/fixtures and are compiled into the library.

#include <string>
#include <vector>

#include "dnp/engine.hpp"
#include "dnp/record.hpp"

namespace dnp {

struct Fixture {
  std::string name;
  BoardSpec board;
  Variant variant = Variant::Triangles;
  LatticeCycle outer;
  bool outer_drawn = true;
  std::vector<Segment> segments;
  std::vector<LatticeCycle> claimed;
  std::vector<Segment> moves;  // optional continuation
};

Fixture parse_fixture(const json& j);
json fixture_json(const Fixture& f);

std::vector<std::string> fixture_names();
Fixture load_fixture(const std::string& name);

// The fixture's segments drawn on its board, claims owned by First, First to
// move. Nothing is claimed beyond the listed cycles.
GameState fixture_state(const Fixture& f);

}  // namespace dnp
