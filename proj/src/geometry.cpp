#include "dnp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>

namespace dnp {

std::string to_string(const Point& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

Segment::Segment(Point a, Point b) : a_(a), b_(b) {
  if (a == b) throw GeometryError("segment endpoints coincide at " + to_string(a));
  if (b_ < a_) std::swap(a_, b_);
}

std::string to_string(const Segment& s) {
  return to_string(s.a()) + "-" + to_string(s.b());
}

std::string to_string(HalfArea a) {
  if (a.halves % 2 == 0) return std::to_string(a.halves / 2);
  return std::to_string(a.halves) + "/2";
}

std::int64_t cross(const Point& a, const Point& b, const Point& c) {
  return static_cast<std::int64_t>(b.x - a.x) * (c.y - a.y) -
         static_cast<std::int64_t>(b.y - a.y) * (c.x - a.x);
}

int gcd_abs(int a, int b) { return std::gcd(std::abs(a), std::abs(b)); }

int interior_lattice_count(const Segment& s) {
  return gcd_abs(s.b().x - s.a().x, s.b().y - s.a().y) - 1;
}

bool is_primitive(const Segment& s) { return interior_lattice_count(s) == 0; }

bool on_segment(const Point& p, const Segment& s) {
  if (cross(s.a(), s.b(), p) != 0) return false;
  return std::min(s.a().x, s.b().x) <= p.x && p.x <= std::max(s.a().x, s.b().x) &&
         std::min(s.a().y, s.b().y) <= p.y && p.y <= std::max(s.a().y, s.b().y);
}

namespace {

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

bool is_endpoint(const Point& p, const Segment& s) { return p == s.a() || p == s.b(); }

// Any shared point at all, endpoints included.
bool segments_touch(const Segment& s1, const Segment& s2) {
  const int o1 = sign(cross(s1.a(), s1.b(), s2.a()));
  const int o2 = sign(cross(s1.a(), s1.b(), s2.b()));
  const int o3 = sign(cross(s2.a(), s2.b(), s1.a()));
  const int o4 = sign(cross(s2.a(), s2.b(), s1.b()));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(s2.a(), s1) || on_segment(s2.b(), s1) ||
         on_segment(s1.a(), s2) || on_segment(s1.b(), s2);
}

}  // namespace

bool segments_conflict(const Segment& s1, const Segment& s2) {
  if (s1 == s2) return true;
  const int o1 = sign(cross(s1.a(), s1.b(), s2.a()));
  const int o2 = sign(cross(s1.a(), s1.b(), s2.b()));
  const int o3 = sign(cross(s2.a(), s2.b(), s1.a()));
  const int o4 = sign(cross(s2.a(), s2.b(), s1.b()));
  if (o1 == 0 && o2 == 0) {
    // Collinear: conflict iff the overlap has positive length. Endpoints are
    // lexicographically sorted, which orders them along the common line.
    const Point lo = std::max(s1.a(), s2.a());
    const Point hi = std::min(s1.b(), s2.b());
    return lo < hi;
  }
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  // Touching configurations: an endpoint of one lies on the other. That is
  // only harmless when the point is an endpoint of both.
  for (const Point& p : {s2.a(), s2.b()})
    if (on_segment(p, s1) && !is_endpoint(p, s1)) return true;
  for (const Point& p : {s1.a(), s1.b()})
    if (on_segment(p, s2) && !is_endpoint(p, s2)) return true;
  return false;
}

std::int64_t signed_area2(std::span<const Point> walk) {
  std::int64_t sum = 0;
  const std::size_t n = walk.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = walk[i];
    const Point& q = walk[(i + 1) % n];
    sum += static_cast<std::int64_t>(p.x) * q.y - static_cast<std::int64_t>(q.x) * p.y;
  }
  return sum;
}

bool is_simple(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  std::vector<Segment> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (polygon[i] == polygon[(i + 1) % n]) return false;
    edges.emplace_back(polygon[i], polygon[(i + 1) % n]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        if (segments_conflict(edges[i], edges[j])) return false;
        if (n == 3) continue;
        // Adjacent edges meet at exactly one vertex; a shared far endpoint
        // means the polygon degenerates to a doubled edge.
        if (edges[i] == edges[j]) return false;
      } else if (segments_touch(edges[i], edges[j])) {
        return false;
      }
    }
  }
  return signed_area2(polygon) != 0;
}

LatticeCycle::LatticeCycle(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw GeometryError("cycle needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i)
    if (vertices_[i] == vertices_[(i + 1) % n])
      throw GeometryError("cycle repeats consecutive vertex " + to_string(vertices_[i]));
  const std::int64_t a2 = signed_area2(vertices_);
  if (a2 == 0) throw GeometryError("cycle has zero signed area");
  if (a2 < 0) std::reverse(vertices_.begin(), vertices_.end());
  std::rotate(vertices_.begin(), std::min_element(vertices_.begin(), vertices_.end()),
              vertices_.end());
}

HalfArea shoelace_area(const LatticeCycle& c) {
  if (!is_simple(c.vertices())) throw GeometryError("shoelace_area: cycle is not simple");
  return HalfArea{std::llabs(signed_area2(c.vertices()))};
}

HalfArea pick_area(std::int64_t interior, std::int64_t boundary) {
  return HalfArea{2 * interior + boundary - 2};
}

std::vector<Point> boundary_points(std::span<const Point> polygon) {
  std::vector<Point> out;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = polygon[i];
    const Point& q = polygon[(i + 1) % n];
    const int g = gcd_abs(q.x - p.x, q.y - p.y);
    const int sx = (q.x - p.x) / g;
    const int sy = (q.y - p.y) / g;
    for (int k = 0; k < g; ++k) out.push_back({p.x + k * sx, p.y + k * sy});
  }
  return out;
}

int winding_number_scaled(std::int64_t px, std::int64_t py, int scale,
                          std::span<const Point> walk) {
  int wn = 0;
  const std::size_t n = walk.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t ax = std::int64_t{walk[i].x} * scale;
    const std::int64_t ay = std::int64_t{walk[i].y} * scale;
    const std::int64_t bx = std::int64_t{walk[(i + 1) % n].x} * scale;
    const std::int64_t by = std::int64_t{walk[(i + 1) % n].y} * scale;
    const std::int64_t side = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
    if (ay <= py) {
      if (by > py && side > 0) ++wn;
    } else if (by <= py && side < 0) {
      --wn;
    }
  }
  return wn;
}

Location locate_scaled(std::int64_t px, std::int64_t py, int scale,
                       std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t ax = scale * std::int64_t{polygon[i].x};
    const std::int64_t ay = scale * std::int64_t{polygon[i].y};
    const std::int64_t bx = scale * std::int64_t{polygon[(i + 1) % n].x};
    const std::int64_t by = scale * std::int64_t{polygon[(i + 1) % n].y};
    if ((bx - ax) * (py - ay) - (by - ay) * (px - ax) != 0) continue;
    if (std::min(ax, bx) <= px && px <= std::max(ax, bx) && std::min(ay, by) <= py &&
        py <= std::max(ay, by))
      return Location::Boundary;
  }
  return winding_number_scaled(px, py, scale, polygon) != 0 ? Location::Inside
                                                            : Location::Outside;
}

std::pair<std::int64_t, std::int64_t> interior_sample4(std::span<const Point> polygon) {
  int x0 = polygon[0].x, x1 = x0, y0 = polygon[0].y, y1 = y0;
  for (const Point& p : polygon) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  for (std::int64_t x = 4 * x0 + 1; x < 4 * x1; ++x)
    for (std::int64_t y = 4 * y0 + 1; y < 4 * y1; ++y)
      if (locate_scaled(x, y, 4, polygon) == Location::Inside) return {x, y};
  throw GeometryError("polygon has no interior");
}

Location point_in_cycle(const Point& p, const LatticeCycle& c) {
  return locate_doubled(2 * std::int64_t{p.x}, 2 * std::int64_t{p.y}, c.vertices());
}

LatticeCensus lattice_census(const LatticeCycle& c) {
  if (!is_simple(c.vertices())) throw GeometryError("lattice_census: cycle is not simple");
  LatticeCensus out;
  out.boundary = boundary_points(c.vertices());
  int x0 = c[0].x, x1 = c[0].x, y0 = c[0].y, y1 = c[0].y;
  for (const Point& p : c.vertices()) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  for (int x = x0 + 1; x < x1; ++x)
    for (int y = y0 + 1; y < y1; ++y)
      if (point_in_cycle({x, y}, c) == Location::Inside) out.interior.push_back({x, y});
  return out;
}

std::vector<Segment> primitive_pieces(const Segment& s) {
  const int g = gcd_abs(s.b().x - s.a().x, s.b().y - s.a().y);
  const int sx = (s.b().x - s.a().x) / g;
  const int sy = (s.b().y - s.a().y) / g;
  std::vector<Segment> out;
  for (int k = 0; k < g; ++k)
    out.emplace_back(Point{s.a().x + k * sx, s.a().y + k * sy},
                     Point{s.a().x + (k + 1) * sx, s.a().y + (k + 1) * sy});
  return out;
}

bool segment_in_polygon(const Segment& s, std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  for (const Segment& piece : primitive_pieces(s)) {
    // A primitive piece cannot contain a polygon vertex, so apart from proper
    // crossings its open interior is either entirely on the boundary or
    // entirely off it; the midpoint decides.
    for (std::size_t i = 0; i < n; ++i) {
      const Segment e(polygon[i], polygon[(i + 1) % n]);
      const int o1 = sign(cross(e.a(), e.b(), piece.a()));
      const int o2 = sign(cross(e.a(), e.b(), piece.b()));
      const int o3 = sign(cross(piece.a(), piece.b(), e.a()));
      const int o4 = sign(cross(piece.a(), piece.b(), e.b()));
      if (o1 * o2 < 0 && o3 * o4 < 0) return false;
    }
    for (const Point& p : {piece.a(), piece.b()})
      if (locate_doubled(2 * std::int64_t{p.x}, 2 * std::int64_t{p.y}, polygon) ==
          Location::Outside)
        return false;
    if (locate_doubled(std::int64_t{piece.a().x} + piece.b().x,
                       std::int64_t{piece.a().y} + piece.b().y, polygon) == Location::Outside)
      return false;
  }
  return true;
}

LatticeCycle random_simple_cycle(std::mt19937_64& rng, int box, int max_vertices) {
  if (box < 1 || max_vertices < 3) throw GeometryError("random_simple_cycle: bad bounds");
  std::uniform_int_distribution<int> coord(0, box);
  std::uniform_int_distribution<int> count(3, max_vertices);
  for (;;) {
    const int k = count(rng);
    std::set<Point> chosen;
    while (static_cast<int>(chosen.size()) < k) chosen.insert({coord(rng), coord(rng)});
    std::vector<Point> pts(chosen.begin(), chosen.end());
    // Star-shaped ordering around the centroid; the exact simplicity check
    // below rejects anything the floating-point sort gets wrong.
    double cx = 0, cy = 0;
    for (const Point& p : pts) {
      cx += p.x;
      cy += p.y;
    }
    cx /= k;
    cy /= k;
    std::sort(pts.begin(), pts.end(), [&](const Point& l, const Point& r) {
      return std::atan2(l.y - cy, l.x - cx) < std::atan2(r.y - cy, r.x - cx);
    });
    if (is_simple(pts)) return LatticeCycle(std::move(pts));
  }
}

}  // namespace dnp
