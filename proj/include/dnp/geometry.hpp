#pragma once

// Exact lattice geometry. Every quantity is an integer; areas are counted in
// halves of a unit square so that Pick's theorem and the shoelace formula can
// be compared with ==.

#include <compare>
#include <cstdint>
#include <functional>
#include <utility>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnp {

struct Point {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

std::string to_string(const Point& p);

/// A lattice segment with endpoints stored in lexicographic order, so two
/// segments covering the same pair of dots compare equal.
class Segment {
 public:
  Segment(Point a, Point b);

  const Point& a() const { return a_; }
  const Point& b() const { return b_; }

  friend constexpr auto operator<=>(const Segment&, const Segment&) = default;

 private:
  Point a_;
  Point b_;
};

std::string to_string(const Segment& s);

/// Area measured in half units.
struct HalfArea {
  std::int64_t halves = 0;

  friend constexpr auto operator<=>(const HalfArea&, const HalfArea&) = default;
  constexpr HalfArea& operator+=(HalfArea o) {
    halves += o.halves;
    return *this;
  }
  constexpr HalfArea& operator-=(HalfArea o) {
    halves -= o.halves;
    return *this;
  }
  friend constexpr HalfArea operator+(HalfArea l, HalfArea r) { return l += r; }
  friend constexpr HalfArea operator-(HalfArea l, HalfArea r) { return l -= r; }
};

/// "7", "9/2", "-1/2".
std::string to_string(HalfArea a);

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed cycle of corner points. Orientation is normalized to
/// counterclockwise and the lexicographically least vertex comes first.
class LatticeCycle {
 public:
  explicit LatticeCycle(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }

  friend bool operator==(const LatticeCycle&, const LatticeCycle&) = default;
  friend auto operator<=>(const LatticeCycle& l, const LatticeCycle& r) {
    return l.vertices_ <=> r.vertices_;
  }

 private:
  std::vector<Point> vertices_;
};

enum class Location { Inside, Boundary, Outside };

// Orientation of (b - a) x (c - a): positive for a left turn.
std::int64_t cross(const Point& a, const Point& b, const Point& c);

int gcd_abs(int a, int b);

/// Number of lattice points strictly between the endpoints.
int interior_lattice_count(const Segment& s);
bool is_primitive(const Segment& s);

/// Closed-segment membership.
bool on_segment(const Point& p, const Segment& s);

/// True when the segments share any point other than a common endpoint.
bool segments_conflict(const Segment& s1, const Segment& s2);

/// Twice the signed area of a closed walk (positive when counterclockwise).
/// Equals the signed area in halves.
std::int64_t signed_area2(std::span<const Point> walk);

bool is_simple(std::span<const Point> polygon);

/// Exact polygon area; throws GeometryError for self-intersecting cycles.
HalfArea shoelace_area(const LatticeCycle& c);

/// I + B/2 - 1.
HalfArea pick_area(std::int64_t interior, std::int64_t boundary);

struct LatticeCensus {
  std::vector<Point> boundary;
  std::vector<Point> interior;
};

LatticeCensus lattice_census(const LatticeCycle& c);

/// Boundary lattice points of the cycle in counterclockwise order, starting
/// at its first vertex.
std::vector<Point> boundary_points(std::span<const Point> polygon);

Location point_in_cycle(const Point& p, const LatticeCycle& c);

/// Winding number of a closed walk (any orientation, may repeat vertices)
/// around a point given in coordinates scaled by `scale`. The point must not
/// lie on the walk.
int winding_number_scaled(std::int64_t px, std::int64_t py, int scale,
                          std::span<const Point> walk);

/// Classification against a simple polygon of the point (px, py) / scale.
Location locate_scaled(std::int64_t px, std::int64_t py, int scale,
                       std::span<const Point> polygon);

/// locate_scaled with scale 2, used for segment midpoints.
inline Location locate_doubled(std::int64_t px2, std::int64_t py2,
                               std::span<const Point> polygon) {
  return locate_scaled(px2, py2, 2, polygon);
}

/// A point strictly inside the polygon, in coordinates scaled by 4. Every
/// lattice polygon contains a quarter-lattice point (the image of (1/4, 1/4)
/// in any of its area-1/2 triangles).
std::pair<std::int64_t, std::int64_t> interior_sample4(std::span<const Point> polygon);

/// True when every point of `s` lies in the closed simple polygon.
bool segment_in_polygon(const Segment& s, std::span<const Point> polygon);

/// Splits a segment at its interior lattice points.
std::vector<Segment> primitive_pieces(const Segment& s);

/// Rejection-samples a simple lattice polygon with 3..max_vertices corners
/// inside [0, box] x [0, box].
LatticeCycle random_simple_cycle(std::mt19937_64& rng, int box,
                                 int max_vertices);

}  // namespace dnp

template <>
struct std::hash<dnp::Point> {
  std::size_t operator()(const dnp::Point& p) const noexcept {
    return std::hash<std::int64_t>{}((static_cast<std::int64_t>(p.x) << 32) ^
                                     static_cast<std::uint32_t>(p.y));
  }
};
