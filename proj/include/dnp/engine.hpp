#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dnp/geometry.hpp"
#include "dnp/segment_mask.hpp"

namespace dnp {

class Arrangement;

enum class Variant { Triangles, Polygons };
enum class Player { First = 1, Second = 2 };

inline Player other(Player p) { return p == Player::First ? Player::Second : Player::First; }
inline int player_number(Player p) { return static_cast<int>(p); }

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

struct BoardSpec {
  int width = 0;   // dot columns
  int height = 0;  // dot rows

  friend bool operator==(const BoardSpec&, const BoardSpec&) = default;
  HalfArea total_area() const { return HalfArea{2LL * (width - 1) * (height - 1)}; }
  int dots() const { return width * height; }
  bool contains(const Point& p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
  }
};

inline constexpr int kMaxBoardSide = 12;

// Precomputed per-board tables shared by every state on boards of that size.
class BoardGeometry {
 public:
  static std::shared_ptr<const BoardGeometry> get(BoardSpec board);

  const BoardSpec& board() const { return board_; }
  std::size_t candidate_count() const { return candidates_.size(); }
  const Segment& candidate(std::size_t i) const { return candidates_[i]; }
  const std::vector<Segment>& candidates() const { return candidates_; }

  // Index of a primitive in-board segment, or -1.
  int index_of(const Segment& s) const;
  int dot_index(const Point& p) const { return p.y * board_.width + p.x; }
  Point dot(int i) const { return {i % board_.width, i / board_.width}; }

  const SegmentMask& conflicts(std::size_t i) const { return conflicts_[i]; }
  // Pairs of candidates that close an area-1/2 triangle together with i.
  const std::vector<std::pair<int, int>>& unit_triangles(std::size_t i) const {
    return unit_triangles_[i];
  }
  SegmentMask empty_mask() const { return SegmentMask(candidates_.size()); }

  explicit BoardGeometry(BoardSpec board);

 private:
  BoardSpec board_;
  std::vector<Segment> candidates_;
  std::vector<int> pair_index_;
  std::vector<SegmentMask> conflicts_;
  std::vector<std::vector<std::pair<int, int>>> unit_triangles_;
};

struct DrawnSegment {
  Segment segment;
  Player player;

  friend bool operator==(const DrawnSegment&, const DrawnSegment&) = default;
};

struct Claim {
  LatticeCycle outer;
  Player owner;
  HalfArea area;

  friend bool operator==(const Claim&, const Claim&) = default;
};

struct Face {
  LatticeCycle outer;  // the boundary walk, counterclockwise
  bool simple = true;  // false when the walk repeats a vertex
  std::vector<std::vector<Segment>> holes;
  std::vector<Point> interior_unused;
  HalfArea area;  // outer walk area minus the filled area of the holes
  std::optional<Player> owner;
};

struct GameAccounting {
  int D = 0;
  int T = 0;
  int L = 0;
  int P = 0;
  int C = 0;
  int I_unused = 0;

  friend bool operator==(const GameAccounting&, const GameAccounting&) = default;
};

struct MoveOutcome {
  Segment move;
  Player player;
  std::vector<Claim> claimed;
  bool extra_turn = false;
  bool doublecross = false;
  Player next_player = Player::First;
  bool game_over = false;
};

enum class IllegalReason { OutOfBoard, NonPrimitive, Duplicate, Conflict, InsideClaimedRegion };
std::string to_string(IllegalReason r);

class IllegalMove : public std::runtime_error {
 public:
  IllegalMove(IllegalReason r, const Segment& s);
  IllegalReason reason() const { return reason_; }

 private:
  IllegalReason reason_;
};

struct Scores {
  HalfArea first;
  HalfArea second;
  HalfArea of(Player p) const { return p == Player::First ? first : second; }
};

class GameState {
 public:
  static GameState new_game(BoardSpec board, Variant variant);

  // Arbitrary position: segments are drawn without claiming, then the listed
  // claims are recorded. With auto_claim every claimable face is claimed by
  // its closer as if the segments had been played in order.
  static GameState from_position(BoardSpec board, Variant variant,
                                 const std::vector<DrawnSegment>& segments,
                                 const std::vector<Claim>& claims, Player to_move,
                                 bool auto_claim = false);

  const BoardSpec& board() const { return geo_->board(); }
  const BoardGeometry& geometry() const { return *geo_; }
  Variant variant() const { return variant_; }
  Player to_move() const { return to_move_; }
  const std::vector<DrawnSegment>& segments() const { return segments_; }
  const std::vector<Claim>& claims() const { return claims_; }
  const SegmentMask& drawn() const { return drawn_; }
  const SegmentMask& blocked() const { return blocked_; }
  SegmentMask legal_mask() const;

  std::vector<Segment> legal_moves() const;
  bool has_legal_move() const;
  std::optional<IllegalReason> check_move(const Segment& s) const;
  std::optional<IllegalReason> check_move(const Point& a, const Point& b) const;

  // Throws IllegalMove.
  MoveOutcome play(const Segment& s);
  MoveOutcome play_index(std::size_t candidate);

  // The faces a move would claim, without playing it. The move must be legal.
  std::vector<Claim> claims_if(std::size_t candidate) const;
  // Legal moves that would claim something.
  SegmentMask claiming_mask() const;
  // Total area of claims_if, cheaper for triangles.
  HalfArea gain_if(std::size_t candidate) const;

  bool is_over() const;
  Scores scores() const;
  HalfArea claimed_area() const;
  GameAccounting accounting() const;
  int degree(const Point& p) const { return degree_[geo_->dot_index(p)]; }

  std::vector<Face> faces() const;

  GameState with_to_move(Player p) const {
    GameState s = *this;
    s.to_move_ = p;
    return s;
  }

  friend bool operator==(const GameState& l, const GameState& r);

 private:
  GameState(std::shared_ptr<const BoardGeometry> geo, Variant v);
  void draw(std::size_t idx, Player p);
  void add_claim(Claim c);
  std::vector<Claim> polygon_claims(std::size_t idx) const;
  std::vector<Claim> polygon_claims_connected(std::size_t idx, const Arrangement& arr) const;
  Arrangement drawn_arrangement() const;
  std::vector<int> dot_components() const;
  std::vector<Claim> triangle_claims(std::size_t idx) const;

  std::shared_ptr<const BoardGeometry> geo_;
  Variant variant_ = Variant::Triangles;
  SegmentMask drawn_;
  SegmentMask blocked_;
  std::vector<DrawnSegment> segments_;
  std::vector<Claim> claims_;
  std::vector<std::uint8_t> degree_;
  Player to_move_ = Player::First;
  int turns_ = 0;
  int doublecrosses_ = 0;
};

// Free-function form of GameState::play.
std::pair<GameState, MoveOutcome> apply_move(const GameState& state, const Segment& s);

// Independent consistency check of the face decomposition: bounded face areas
// add up to the filled area of the drawn components, every claim is a face
// owned by its claimant, Pick agrees with the shoelace area of each claim, and
// claimed plus unclaimed plus uncovered area is the board area. Returns a
// description of the first failure.
std::optional<std::string> check_area_conservation(const GameState& state);

// Re-checks legality of the drawn segments from scratch.
std::optional<std::string> check_segment_invariants(const GameState& state);

}  // namespace dnp
