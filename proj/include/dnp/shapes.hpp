#pragma once

// Closed regions ("shapes") inside a position, their reduction and eye
// classification, and the constructive claiming procedures.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnp/engine.hpp"
#include "dnp/fixtures.hpp"

namespace dnp {

class RegionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A simple outer cycle on a realized position. Moves of the region are the
// legal moves of the position lying in the closed outer polygon.
class Region {
 public:
  Region(GameState state, LatticeCycle outer);

  static Region from_fixture(const Fixture& f);
  // The region bounded by the outer contour of a face of `state`.
  static Region from_face(const GameState& state, const Face& face);

  const GameState& state() const { return state_; }
  const LatticeCycle& outer() const { return outer_; }
  Variant variant() const { return state_.variant(); }
  const SegmentMask& domain() const { return domain_; }

  bool closed() const;
  std::vector<Segment> interior_segments() const;
  std::vector<Point> boundary_points() const;
  std::vector<Point> interior_points() const;
  bool on_boundary(const Point& p) const;
  HalfArea area() const;            // the whole polygon
  HalfArea unclaimed_area() const;  // minus claims inside it

  SegmentMask move_mask() const;
  std::vector<Segment> moves() const;
  bool has_move() const;

  // The same region after the player to move plays s.
  Region after(const Segment& s) const;
  Region with_state(GameState s) const;

 private:
  Region(GameState state, LatticeCycle outer, SegmentMask domain);

  GameState state_;
  LatticeCycle outer_;
  SegmentMask domain_;
};

enum class ReductionClass { Claimable, NotReduced, Reduced, ExtremelyReduced };
enum class EyeKind { NotAnEye, Eye, HangingEye, SplitHangingEye };

std::string to_string(ReductionClass c);
std::string to_string(EyeKind k);

struct EyeClass {
  EyeKind kind = EyeKind::NotAnEye;
  bool lazy = false;
  bool iris_expanded = false;
  std::vector<std::vector<Segment>> iris_components;
  std::vector<Point> iris_vertices;  // interior points touched by the iris
};

// Chords: region moves with both endpoints on the boundary.
std::vector<Segment> boundary_chords(const Region& r);

// The two pieces a chord cuts the outer polygon into.
std::pair<LatticeCycle, LatticeCycle> split_by_chord(const LatticeCycle& outer, const Segment& chord);

ReductionClass classify_reduction(const Region& r);
EyeClass classify_eye(const Region& r);

// One turn that claims all of a region without interior points.
std::vector<Segment> claim_all_no_interior(const Region& r);

// Claiming moves between iris vertices until no such move remains.
std::vector<Segment> expand_iris(const Region& r);

// Claiming moves between boundary vertices until no such move remains. The
// result of expanding both iris and boundary of an eye is a reduced eye.
std::vector<Segment> expand_boundary(const Region& r);

// A sequence of claiming moves that leaves no unclaimed area in the region,
// or nothing if none exists. Exhaustive over the region's claiming moves.
std::optional<std::vector<Segment>> single_turn_claim(const Region& r);

// After `first` is played in a reduced eye, the opponent's one-turn claim of
// the whole eye. Throws RegionError unless r is an eye with an expanded,
// spanning iris and `first` is a region move that claims nothing. The boundary
// need not be expanded.
std::optional<std::vector<Segment>> second_player_eye_reply(const Region& r, const Segment& first);

bool is_reduced_eye(const Region& r);

}  // namespace dnp
