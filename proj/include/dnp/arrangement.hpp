#pragma once

// Planar straight-line graph over lattice segments with face walks.

#include <cstdint>
#include <span>
#include <vector>

#include "dnp/geometry.hpp"

namespace dnp {

struct Walk {
  std::vector<Point> points;  // closed; the first point is not repeated
  std::int64_t area2 = 0;     // signed, positive for bounded faces
  int component = 0;

  bool repeats_vertex() const;
};

class Arrangement {
 public:
  explicit Arrangement(std::span<const Segment> segments);

  const std::vector<Point>& vertices() const { return vertices_; }
  int vertex_id(const Point& p) const;
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  // Neighbours of v in counterclockwise order.
  const std::vector<int>& neighbours(int v) const { return adj_[v]; }
  int component(int v) const { return comp_[v]; }
  int component_count() const { return ncomp_; }

  // The face walk that has the directed edge u->v on its boundary, with the
  // face on the left.
  Walk trace(const Point& u, const Point& v) const;
  // Same, as if the edge u-v were also present. Both ends must be vertices.
  Walk trace_with_edge(const Point& u, const Point& v) const;

  // Every face walk; each directed edge belongs to exactly one.
  std::vector<Walk> walks() const;

 private:
  int next_position(int v, int from) const;

  std::vector<Point> vertices_;  // sorted
  std::vector<std::vector<int>> adj_;
  std::vector<int> comp_;
  int ncomp_ = 0;
};

}  // namespace dnp
