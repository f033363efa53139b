#pragma once

// Bounded, exhaustive or simulated checks of the game's quantitative
// statements, each producing a machine-readable report.

#include <cstdint>
#include <string>
#include <vector>

#include "dnp/engine.hpp"
#include "dnp/record.hpp"

namespace dnp {

struct Violation {
  std::string expected;
  std::string observed;
  json witness;  // a game record or a region fixture
};

struct TheoremReport {
  std::string theorem;
  json params = json::object();
  std::uint64_t checked = 0;
  std::vector<Violation> violations;
  double elapsed_ms = 0;
  json details = json::object();  // extra findings, e.g. shapes found

  bool pass() const { return violations.empty(); }
  json to_json() const;
};

TheoremReport verify_turn_identity(Variant v, int games, BoardSpec board, std::uint64_t seed);

// Playouts for n = 1..n_max; the exact solver also checks n <= 2.
TheoremReport verify_nested_diamond(int n_max);

// Convex lattice polygons with `boundary_points` boundary lattice points whose
// bounding box has sides at most max_box, one per congruence class.
std::vector<LatticeCycle> convex_polygons(int boundary_points, int max_box);
// Same set from a plain subset enumeration; only practical for small boxes.
std::vector<LatticeCycle> convex_polygons_naive(int boundary_points, int max_box);
// Translated to the origin and minimized over the 8 lattice symmetries.
LatticeCycle canonical_shape(const LatticeCycle& c);
// Whether the bare outline (nothing drawn inside) is extremely reduced.
bool outline_extremely_reduced(const LatticeCycle& c);

TheoremReport enumerate_convex_ers(int boundary_points, int max_box);

// Reduced eyes over convex outlines in the box, each with its expanded irises
// (at most iris_limit per outline, 0 for all), plus the Fig 8 and Fig 14 eyes,
// in both variants.
TheoremReport verify_eye_theorems(int max_box, std::uint64_t iris_limit = 0);

// Polygons regions of area at most 3/2 in the box.
TheoremReport verify_min_double_deal(int max_box);
// Same instances: no double-dealing move inside a region with no interior point.
TheoremReport verify_no_deal_without_interior(int max_box);

TheoremReport verify_single_turn_claims(std::uint64_t seed);

// Fig 15 has no double-dealing move; the Fig 16 iris move is not one.
TheoremReport verify_deal_negatives();

// In random Polygons games, a doublecross the mover cannot avoid when
// claiming in its region happens in a hanging or split hanging eye.
TheoremReport verify_doublecross_necessity(int games, BoardSpec board, std::uint64_t seed);

std::vector<std::string> theorem_ids();
// Runs one theorem with its default parameters.
TheoremReport run_theorem(const std::string& id, std::uint64_t seed = 1);

}  // namespace dnp
