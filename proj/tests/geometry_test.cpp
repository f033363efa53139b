#include <algorithm>
#include <random>

#include "doctest.h"
#include "dnp/geometry.hpp"

using namespace dnp;

namespace {

// Lattice points strictly inside the segment, by scanning its bounding box.
int brute_interior_count(Point a, Point b) {
  int n = 0;
  for (int x = std::min(a.x, b.x); x <= std::max(a.x, b.x); ++x)
    for (int y = std::min(a.y, b.y); y <= std::max(a.y, b.y); ++y) {
      const Point p{x, y};
      if (p == a || p == b) continue;
      if ((x - a.x) * (b.y - a.y) == (y - a.y) * (b.x - a.x)) ++n;
    }
  return n;
}

// Floating-point crossing-number test with an explicit on-edge check, used as
// an oracle for the integer classifier.
Location ray_cast(Point p, const std::vector<Point>& poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i], b = poly[(i + 1) % n];
    const double cr = double(b.x - a.x) * (p.y - a.y) - double(b.y - a.y) * (p.x - a.x);
    const double dot = double(p.x - a.x) * (b.x - a.x) + double(p.y - a.y) * (b.y - a.y);
    const double len = double(b.x - a.x) * (b.x - a.x) + double(b.y - a.y) * (b.y - a.y);
    if (cr == 0 && dot >= 0 && dot <= len) return Location::Boundary;
  }
  // Ray towards +x from a point nudged off the lattice row.
  const double px = p.x, py = p.y + 1e-7;
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i], b = poly[(i + 1) % n];
    if ((a.y > py) != (b.y > py)) {
      const double xi = a.x + (py - a.y) * (b.x - a.x) / double(b.y - a.y);
      if (xi > px) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

// Conflict oracle by solving the intersection with Cramer's rule in rationals.
bool conflict_oracle(const Segment& s, const Segment& t) {
  const long long rx = s.b().x - s.a().x, ry = s.b().y - s.a().y;
  const long long qx = t.b().x - t.a().x, qy = t.b().y - t.a().y;
  const long long den = rx * qy - ry * qx;
  const long long wx = t.a().x - s.a().x, wy = t.a().y - s.a().y;
  if (den == 0) {
    if (wx * ry - wy * rx != 0) return false;  // parallel, disjoint lines
    // Project onto the dominant axis of r.
    auto proj = [&](Point p) { return std::abs(rx) >= std::abs(ry) ? p.x : p.y; };
    const int s0 = std::min(proj(s.a()), proj(s.b())), s1 = std::max(proj(s.a()), proj(s.b()));
    const int t0 = std::min(proj(t.a()), proj(t.b())), t1 = std::max(proj(t.a()), proj(t.b()));
    return std::min(s1, t1) > std::max(s0, t0);
  }
  // s.a + r*(num_t/den) = t.a + q*(num_u/den)
  long long num_t = wx * qy - wy * qx;
  long long num_u = wx * ry - wy * rx;
  long long d = den;
  if (d < 0) {
    d = -d;
    num_t = -num_t;
    num_u = -num_u;
  }
  if (num_t < 0 || num_t > d || num_u < 0 || num_u > d) return false;
  const bool s_end = num_t == 0 || num_t == d;
  const bool t_end = num_u == 0 || num_u == d;
  if (s_end && t_end) {
    const Point ps = num_t == 0 ? s.a() : s.b();
    const Point pt = num_u == 0 ? t.a() : t.b();
    return ps != pt;
  }
  return true;
}

}  // namespace

TEST_CASE("interior lattice count") {
  CHECK(interior_lattice_count(Segment({0, 0}, {1, 0})) == 0);
  CHECK(interior_lattice_count(Segment({0, 0}, {6, 4})) == brute_interior_count({0, 0}, {6, 4}));
  CHECK(interior_lattice_count(Segment({0, 0}, {6, 4})) == 1);
  CHECK(interior_lattice_count(Segment({0, 0}, {3, 3})) == brute_interior_count({0, 0}, {3, 3}));
  CHECK(interior_lattice_count(Segment({0, 0}, {3, 3})) == 2);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-6, 6);
  for (int i = 0; i < 500; ++i) {
    const Point a{c(rng), c(rng)}, b{c(rng), c(rng)};
    if (a == b) continue;
    const int k = interior_lattice_count(Segment(a, b));
    CHECK(k == brute_interior_count(a, b));
    const Point shift{c(rng), c(rng)};
    CHECK(k == interior_lattice_count(
                   Segment({a.x + shift.x, a.y + shift.y}, {b.x + shift.x, b.y + shift.y})));
  }
}

TEST_CASE("primitive segments") {
  CHECK(is_primitive(Segment({0, 0}, {2, 1})));
  CHECK_FALSE(is_primitive(Segment({0, 0}, {2, 2})));
  CHECK(is_primitive(Segment({1, 2}, {2, 2})));
  CHECK(Segment({2, 2}, {1, 2}) == Segment({1, 2}, {2, 2}));
  CHECK_THROWS_AS(Segment({1, 1}, {1, 1}), GeometryError);
}

TEST_CASE("segment conflicts") {
  CHECK(segments_conflict(Segment({0, 0}, {1, 1}), Segment({0, 1}, {1, 0})));
  CHECK_FALSE(segments_conflict(Segment({0, 0}, {1, 0}), Segment({1, 0}, {2, 1})));
  CHECK(segments_conflict(Segment({0, 0}, {2, 1}), Segment({0, 0}, {4, 2})));
  // endpoint touching the other's interior
  CHECK(segments_conflict(Segment({0, 0}, {2, 0}), Segment({1, 0}, {1, 1})));
  // two shared endpoints means the same segment
  CHECK(segments_conflict(Segment({0, 0}, {1, 2}), Segment({1, 2}, {0, 0})));

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(0, 4);
  int conflicts = 0;
  for (int i = 0; i < 20000; ++i) {
    const Point a{c(rng), c(rng)}, b{c(rng), c(rng)}, p{c(rng), c(rng)}, q{c(rng), c(rng)};
    if (a == b || p == q) continue;
    const Segment s(a, b), t(p, q);
    const bool got = segments_conflict(s, t);
    REQUIRE(got == segments_conflict(t, s));
    if (s != t) REQUIRE(got == conflict_oracle(s, t));
    conflicts += got;
  }
  CHECK(conflicts > 1000);
}

TEST_CASE("cycle normalization") {
  const LatticeCycle cw({{0, 1}, {1, 1}, {1, 0}, {0, 0}});
  const LatticeCycle ccw({{1, 1}, {0, 1}, {0, 0}, {1, 0}});
  CHECK(cw == ccw);
  CHECK(cw[0] == Point{0, 0});
  CHECK(cw[1] == Point{1, 0});
  CHECK_THROWS_AS(LatticeCycle({{0, 0}, {1, 1}}), GeometryError);
  CHECK_THROWS_AS(LatticeCycle({{0, 0}, {1, 1}, {2, 2}}), GeometryError);
  CHECK_THROWS_AS(LatticeCycle({{0, 0}, {0, 0}, {1, 0}, {0, 1}}), GeometryError);
}

TEST_CASE("shoelace area") {
  CHECK(shoelace_area(LatticeCycle({{0, 0}, {1, 0}, {1, 1}, {0, 1}})) == HalfArea{2});
  // Hand-computed: octagon = 3x3 box (18 halves) minus notches.
  const LatticeCycle octagon({{0, 0}, {1, 1}, {0, 1}, {1, 2}, {0, 3}, {2, 2}, {3, 3}, {2, 0}});
  CHECK(shoelace_area(octagon) == HalfArea{9});
  CHECK(to_string(shoelace_area(octagon)) == "9/2");
  const LatticeCycle hexagon({{4, 0}, {2, 1}, {0, 4}, {4, 5}, {8, 4}, {6, 1}});
  CHECK(shoelace_area(hexagon) == HalfArea{48});
  // bow tie
  CHECK_THROWS_AS(shoelace_area(LatticeCycle({{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 1}})),
                  GeometryError);
  CHECK_THROWS_AS(shoelace_area(LatticeCycle({{0, 0}, {2, 2}, {2, 0}, {0, 2}})), GeometryError);
}

TEST_CASE("pick area") {
  CHECK(pick_area(2, 12) == HalfArea{14});
  CHECK(pick_area(0, 3) == HalfArea{1});
  CHECK(pick_area(1, 3) == HalfArea{3});
  CHECK(to_string(pick_area(1, 3)) == "3/2");
}

TEST_CASE("lattice census") {
  const LatticeCycle heptagon({{0, 1}, {2, 3}, {3, 1}, {4, 4}, {4, 0}, {2, 0}, {1, 1}});
  const auto c = lattice_census(heptagon);
  CHECK(c.boundary.size() == 12);
  CHECK(c.interior.size() == 2);
  CHECK(pick_area(2, 12) == shoelace_area(heptagon));
  CHECK(to_string(shoelace_area(heptagon)) == "7");

  const auto sq = lattice_census(LatticeCycle({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(sq.boundary.size() == 4);
  CHECK(sq.interior.empty());

  const std::vector<Point> quad_pts{{2, 0}, {4, 3}, {2, 4}, {0, 3}};
  const LatticeCycle quad(quad_pts);
  const auto q = lattice_census(quad);
  int scan_inside = 0, scan_boundary = 0;
  for (int x = 0; x <= 4; ++x)
    for (int y = 0; y <= 4; ++y) {
      const auto loc = ray_cast({x, y}, quad_pts);
      scan_inside += loc == Location::Inside;
      scan_boundary += loc == Location::Boundary;
    }
  CHECK(q.interior.size() == 7);
  CHECK(static_cast<int>(q.interior.size()) == scan_inside);
  CHECK(static_cast<int>(q.boundary.size()) == scan_boundary);
  CHECK(q.boundary.size() == 4);
}

TEST_CASE("point in cycle") {
  const LatticeCycle sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(point_in_cycle({1, 1}, sq) == Location::Boundary);
  const LatticeCycle quad({{2, 0}, {4, 3}, {2, 4}, {0, 3}});
  CHECK(point_in_cycle({2, 2}, quad) == Location::Inside);
  CHECK(point_in_cycle({5, 5}, quad) == Location::Outside);

  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const LatticeCycle c = random_simple_cycle(rng, 10, 9);
    const std::vector<Point> pts(c.vertices().begin(), c.vertices().end());
    for (int x = -1; x <= 11; ++x)
      for (int y = -1; y <= 11; ++y) REQUIRE(point_in_cycle({x, y}, c) == ray_cast({x, y}, pts));
  }
}

TEST_CASE("pick equals shoelace on random cycles") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const LatticeCycle c = random_simple_cycle(rng, 10, 10);
    const auto census = lattice_census(c);
    REQUIRE(pick_area(static_cast<long long>(census.interior.size()),
                      static_cast<long long>(census.boundary.size())) == shoelace_area(c));
  }
}

TEST_CASE("random cycles are reproducible") {
  std::mt19937_64 a(99), b(99);
  for (int i = 0; i < 20; ++i) CHECK(random_simple_cycle(a, 8, 7) == random_simple_cycle(b, 8, 7));
}

TEST_CASE("segment inside polygon") {
  const std::vector<Point> notch{{0, 0}, {4, 0}, {4, 4}, {2, 1}, {0, 4}};
  CHECK(segment_in_polygon(Segment({0, 0}, {4, 0}), notch));
  CHECK(segment_in_polygon(Segment({1, 1}, {3, 1}), notch));
  CHECK_FALSE(segment_in_polygon(Segment({1, 3}, {3, 3}), notch));
  CHECK_FALSE(segment_in_polygon(Segment({0, 4}, {4, 4}), notch));
  CHECK(segment_in_polygon(Segment({0, 4}, {2, 1}), notch));
}
