#include "dnp/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dnp {

namespace {

// Counterclockwise angular order of direction vectors starting at +x.
bool angle_less(int ax, int ay, int bx, int by) {
  const int ha = (ay < 0 || (ay == 0 && ax < 0)) ? 1 : 0;
  const int hb = (by < 0 || (by == 0 && bx < 0)) ? 1 : 0;
  if (ha != hb) return ha < hb;
  return std::int64_t{ax} * by - std::int64_t{ay} * bx > 0;
}

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

bool Walk::repeats_vertex() const {
  std::vector<Point> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

Arrangement::Arrangement(std::span<const Segment> segments) {
  for (const Segment& s : segments) {
    vertices_.push_back(s.a());
    vertices_.push_back(s.b());
  }
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  adj_.resize(vertices_.size());
  std::vector<int> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const Segment& s : segments) {
    const int a = vertex_id(s.a());
    const int b = vertex_id(s.b());
    adj_[a].push_back(b);
    adj_[b].push_back(a);
    parent[find(parent, a)] = find(parent, b);
  }
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    const Point o = vertices_[v];
    std::sort(adj_[v].begin(), adj_[v].end(), [&](int l, int r) {
      return angle_less(vertices_[l].x - o.x, vertices_[l].y - o.y, vertices_[r].x - o.x,
                        vertices_[r].y - o.y);
    });
  }
  comp_.assign(vertices_.size(), -1);
  std::vector<int> root_id(vertices_.size(), -1);
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const int r = find(parent, static_cast<int>(v));
    if (root_id[r] < 0) root_id[r] = ncomp_++;
    comp_[v] = root_id[r];
  }
}

int Arrangement::vertex_id(const Point& p) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
  if (it == vertices_.end() || *it != p) return -1;
  return static_cast<int>(it - vertices_.begin());
}

// Position in adj[v] of the edge leaving v after arriving from `from`: the
// neighbour just clockwise of `from`.
int Arrangement::next_position(int v, int from) const {
  const auto& nb = adj_[v];
  const auto it = std::find(nb.begin(), nb.end(), from);
  const int pos = static_cast<int>(it - nb.begin());
  return (pos + static_cast<int>(nb.size()) - 1) % static_cast<int>(nb.size());
}

Walk Arrangement::trace(const Point& u, const Point& v) const {
  const int u0 = vertex_id(u);
  const int v0 = vertex_id(v);
  Walk w;
  w.component = comp_[u0];
  int a = u0, b = v0;
  do {
    w.points.push_back(vertices_[a]);
    const int c = adj_[b][next_position(b, a)];
    a = b;
    b = c;
  } while (!(a == u0 && b == v0));
  w.area2 = signed_area2(w.points);
  return w;
}

Walk Arrangement::trace_with_edge(const Point& u, const Point& v) const {
  const int u0 = vertex_id(u);
  const int v0 = vertex_id(v);
  auto with_extra = [&](int at, int extra) {
    std::vector<int> nb = adj_[at];
    const Point o = vertices_[at];
    auto less = [&](int l, int r) {
      return angle_less(vertices_[l].x - o.x, vertices_[l].y - o.y, vertices_[r].x - o.x,
                        vertices_[r].y - o.y);
    };
    nb.insert(std::upper_bound(nb.begin(), nb.end(), extra, less), extra);
    return nb;
  };
  const std::vector<int> nu = with_extra(u0, v0);
  const std::vector<int> nv = with_extra(v0, u0);
  auto around = [&](int b) -> const std::vector<int>& {
    return b == u0 ? nu : b == v0 ? nv : adj_[b];
  };
  Walk w;
  w.component = comp_[u0];
  int a = u0, b = v0;
  do {
    w.points.push_back(vertices_[a]);
    const auto& nb = around(b);
    const int pos = static_cast<int>(std::find(nb.begin(), nb.end(), a) - nb.begin());
    const int c = nb[(pos + static_cast<int>(nb.size()) - 1) % static_cast<int>(nb.size())];
    a = b;
    b = c;
  } while (!(a == u0 && b == v0));
  w.area2 = signed_area2(w.points);
  return w;
}

std::vector<Walk> Arrangement::walks() const {
  std::vector<std::vector<char>> used(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) used[v].assign(adj_[v].size(), 0);
  std::vector<Walk> out;
  for (std::size_t v0 = 0; v0 < vertices_.size(); ++v0) {
    for (std::size_t i0 = 0; i0 < adj_[v0].size(); ++i0) {
      if (used[v0][i0]) continue;
      Walk w;
      w.component = comp_[v0];
      int a = static_cast<int>(v0);
      int ia = static_cast<int>(i0);
      while (!used[a][ia]) {
        used[a][ia] = 1;
        w.points.push_back(vertices_[a]);
        const int b = adj_[a][ia];
        ia = next_position(b, a);
        a = b;
      }
      w.area2 = signed_area2(w.points);
      out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace dnp
