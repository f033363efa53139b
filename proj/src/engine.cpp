#include "dnp/engine.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "dnp/arrangement.hpp"

namespace dnp {

std::string to_string(Variant v) { return v == Variant::Triangles ? "triangles" : "polygons"; }

Variant parse_variant(const std::string& s) {
  if (s == "triangles") return Variant::Triangles;
  if (s == "polygons") return Variant::Polygons;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

std::string to_string(IllegalReason r) {
  switch (r) {
    case IllegalReason::OutOfBoard: return "out-of-board";
    case IllegalReason::NonPrimitive: return "non-primitive";
    case IllegalReason::Duplicate: return "duplicate";
    case IllegalReason::Conflict: return "conflict";
    case IllegalReason::InsideClaimedRegion: return "inside-claimed-region";
  }
  return "?";
}

IllegalMove::IllegalMove(IllegalReason r, const Segment& s)
    : std::runtime_error("illegal move " + to_string(s) + ": " + to_string(r)), reason_(r) {}

// ---------------------------------------------------------------------------

BoardGeometry::BoardGeometry(BoardSpec board) : board_(board) {
  if (board.width < 2 || board.height < 2)
    throw std::invalid_argument("board needs at least 2x2 dots");
  if (board.width > kMaxBoardSide || board.height > kMaxBoardSide)
    throw std::invalid_argument("board side exceeds " + std::to_string(kMaxBoardSide));
  const int n = board.dots();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Segment s(dot(i), dot(j));
      if (is_primitive(s)) candidates_.push_back(s);
    }
  std::sort(candidates_.begin(), candidates_.end());
  pair_index_.assign(static_cast<std::size_t>(n) * n, -1);
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    const int a = dot_index(candidates_[i].a());
    const int b = dot_index(candidates_[i].b());
    pair_index_[static_cast<std::size_t>(a) * n + b] = static_cast<int>(i);
    pair_index_[static_cast<std::size_t>(b) * n + a] = static_cast<int>(i);
  }

  const std::size_t m = candidates_.size();
  conflicts_.assign(m, SegmentMask(m));
  for (std::size_t i = 0; i < m; ++i) {
    const Segment& s = candidates_[i];
    const int sx0 = std::min(s.a().x, s.b().x), sx1 = std::max(s.a().x, s.b().x);
    const int sy0 = std::min(s.a().y, s.b().y), sy1 = std::max(s.a().y, s.b().y);
    for (std::size_t j = i + 1; j < m; ++j) {
      const Segment& t = candidates_[j];
      // Candidates are sorted by first endpoint, so once t starts right of s
      // nothing later can touch it.
      if (t.a().x > sx1) break;
      if (std::max(t.a().x, t.b().x) < sx0) continue;
      if (std::max(t.a().y, t.b().y) < sy0 || std::min(t.a().y, t.b().y) > sy1) continue;
      if (segments_conflict(s, t)) {
        conflicts_[i].set(j);
        conflicts_[j].set(i);
      }
    }
  }

  unit_triangles_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Segment& s = candidates_[i];
    for (int c = 0; c < n; ++c) {
      const Point p = dot(c);
      const auto cr = cross(s.a(), s.b(), p);
      if (cr != 1 && cr != -1) continue;
      const int e1 = index_of(Segment(s.a(), p));
      const int e2 = index_of(Segment(s.b(), p));
      unit_triangles_[i].emplace_back(e1, e2);
    }
  }
}

int BoardGeometry::index_of(const Segment& s) const {
  if (!board_.contains(s.a()) || !board_.contains(s.b())) return -1;
  const int n = board_.dots();
  return pair_index_[static_cast<std::size_t>(dot_index(s.a())) * n + dot_index(s.b())];
}

std::shared_ptr<const BoardGeometry> BoardGeometry::get(BoardSpec board) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const BoardGeometry>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({board.width, board.height});
    if (it != cache.end()) return it->second;
  }
  auto geo = std::make_shared<const BoardGeometry>(board);
  std::lock_guard lock(mu);
  return cache.emplace(std::pair{board.width, board.height}, geo).first->second;
}

// ---------------------------------------------------------------------------

GameState::GameState(std::shared_ptr<const BoardGeometry> geo, Variant v)
    : geo_(std::move(geo)),
      variant_(v),
      drawn_(geo_->empty_mask()),
      blocked_(geo_->empty_mask()),
      degree_(static_cast<std::size_t>(geo_->board().dots()), 0) {}

GameState GameState::new_game(BoardSpec board, Variant variant) {
  return GameState(BoardGeometry::get(board), variant);
}

void GameState::draw(std::size_t idx, Player p) {
  const Segment& s = geo_->candidate(idx);
  drawn_.set(idx);
  blocked_.set(idx);
  blocked_ |= geo_->conflicts(idx);
  segments_.push_back({s, p});
  ++degree_[geo_->dot_index(s.a())];
  ++degree_[geo_->dot_index(s.b())];
}

void GameState::add_claim(Claim c) {
  if (c.area.halves > 1) {
    // Nothing fits inside an area-1/2 triangle; larger claims block every
    // candidate whose midpoint lies strictly inside.
    const auto verts = c.outer.vertices();
    int x0 = verts[0].x, x1 = x0, y0 = verts[0].y, y1 = y0;
    for (const Point& p : verts) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    for (std::size_t i = 0; i < geo_->candidate_count(); ++i) {
      if (blocked_.test(i)) continue;
      const Segment& s = geo_->candidate(i);
      const std::int64_t mx = std::int64_t{s.a().x} + s.b().x;
      const std::int64_t my = std::int64_t{s.a().y} + s.b().y;
      if (mx <= 2 * x0 || mx >= 2 * x1 || my <= 2 * y0 || my >= 2 * y1) continue;
      if (locate_doubled(mx, my, verts) == Location::Inside) blocked_.set(i);
    }
  }
  claims_.push_back(std::move(c));
}

std::vector<Claim> GameState::triangle_claims(std::size_t idx) const {
  std::vector<Claim> out;
  const Segment& s = geo_->candidate(idx);
  for (const auto& [e1, e2] : geo_->unit_triangles(idx)) {
    if (!drawn_.test(e1) || !drawn_.test(e2)) continue;
    const Segment& t = geo_->candidate(e1);
    const Point third = t.a() == s.a() ? t.b() : t.a();
    out.push_back({LatticeCycle({s.a(), s.b(), third}), to_move_, HalfArea{1}});
  }
  return out;
}

// Connected component of every dot under the drawn segments.
std::vector<int> GameState::dot_components() const {
  std::vector<int> parent(static_cast<std::size_t>(geo_->board().dots()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& d : segments_)
    parent[find(geo_->dot_index(d.segment.a()))] = find(geo_->dot_index(d.segment.b()));
  for (int& p : parent) p = find(p);
  return parent;
}

std::vector<Claim> GameState::polygon_claims(std::size_t idx) const {
  // A new cycle through the move needs a drawn path between its ends.
  const Segment& c = geo_->candidate(idx);
  if (degree(c.a()) == 0 || degree(c.b()) == 0) return {};
  const auto comp = dot_components();
  if (comp[geo_->dot_index(c.a())] != comp[geo_->dot_index(c.b())]) return {};
  return polygon_claims_connected(idx, drawn_arrangement());
}

Arrangement GameState::drawn_arrangement() const {
  std::vector<Segment> segs;
  segs.reserve(segments_.size());
  for (const auto& d : segments_) segs.push_back(d.segment);
  return Arrangement(segs);
}

std::vector<Claim> GameState::polygon_claims_connected(std::size_t idx, const Arrangement& arr) const {
  const Segment& s = geo_->candidate(idx);
  std::vector<Claim> out;
  for (const auto& [u, v] : {std::pair{s.a(), s.b()}, std::pair{s.b(), s.a()}}) {
    Walk w = arr.trace_with_edge(u, v);
    if (w.area2 <= 0 || w.repeats_vertex()) continue;
    bool hole = false;
    for (std::size_t k = 0; k < arr.vertices().size() && !hole; ++k) {
      const Point& p = arr.vertices()[k];
      if (std::find(w.points.begin(), w.points.end(), p) != w.points.end()) continue;
      hole = winding_number_scaled(p.x, p.y, 1, w.points) != 0;
    }
    if (hole) continue;
    Claim c{LatticeCycle(w.points), to_move_, HalfArea{w.area2}};
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Claim> GameState::claims_if(std::size_t idx) const {
  return variant_ == Variant::Triangles ? triangle_claims(idx) : polygon_claims(idx);
}

SegmentMask GameState::claiming_mask() const {
  SegmentMask out = geo_->empty_mask();
  if (variant_ == Variant::Triangles) {
    // A claiming move closes a unit triangle with two drawn edges.
    drawn_.for_each([&](std::size_t e) {
      for (const auto& [a, b] : geo_->unit_triangles(e)) {
        const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
        if (drawn_.test(ua) && !blocked_.test(ub)) out.set(ub);
        if (drawn_.test(ub) && !blocked_.test(ua)) out.set(ua);
      }
    });
    return out;
  }
  const auto comp = dot_components();
  std::optional<Arrangement> arr;
  legal_mask().for_each([&](std::size_t i) {
    const Segment& c = geo_->candidate(i);
    if (degree(c.a()) == 0 || comp[geo_->dot_index(c.a())] != comp[geo_->dot_index(c.b())]) return;
    if (!arr) arr.emplace(drawn_arrangement());
    if (!polygon_claims_connected(i, *arr).empty()) out.set(i);
  });
  return out;
}

HalfArea GameState::gain_if(std::size_t idx) const {
  HalfArea a;
  if (variant_ == Variant::Triangles) {
    for (const auto& [e1, e2] : geo_->unit_triangles(idx))
      if (drawn_.test(e1) && drawn_.test(e2)) a += HalfArea{1};
    return a;
  }
  for (const Claim& c : polygon_claims(idx)) a += c.area;
  return a;
}

GameState GameState::from_position(BoardSpec board, Variant variant,
                                   const std::vector<DrawnSegment>& segments,
                                   const std::vector<Claim>& claims, Player to_move,
                                   bool auto_claim) {
  GameState st(BoardGeometry::get(board), variant);
  for (const auto& d : segments) {
    for (const Segment& piece : primitive_pieces(d.segment)) {
      if (auto r = st.check_move(piece)) {
        if (*r == IllegalReason::Duplicate) continue;
        throw IllegalMove(*r, piece);
      }
      const auto idx = static_cast<std::size_t>(st.geo_->index_of(piece));
      if (auto_claim) {
        st.to_move_ = d.player;
        auto closed = st.claims_if(idx);
        st.draw(idx, d.player);
        for (Claim& c : closed) st.add_claim(std::move(c));
      } else {
        st.draw(idx, d.player);
      }
    }
  }
  for (const Claim& c : claims) {
    const auto verts = c.outer.vertices();
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (const Segment& piece : primitive_pieces(Segment(verts[i], verts[(i + 1) % verts.size()]))) {
        const int idx = st.geo_->index_of(piece);
        if (idx < 0 || !st.drawn_.test(static_cast<std::size_t>(idx)))
          throw std::invalid_argument("claim boundary " + to_string(piece) + " is not drawn");
      }
    if (!is_simple(verts)) throw std::invalid_argument("claimed cycle is not simple");
    // Faces list every lattice point of their boundary as a vertex.
    const LatticeCycle walk(boundary_points(verts));
    Claim fixed{walk, c.owner, shoelace_area(walk)};
    if (std::find(st.claims_.begin(), st.claims_.end(), fixed) == st.claims_.end())
      st.add_claim(std::move(fixed));
  }
  st.to_move_ = to_move;
  return st;
}

SegmentMask GameState::legal_mask() const { return blocked_.complement(); }

std::vector<Segment> GameState::legal_moves() const {
  std::vector<Segment> out;
  for (std::size_t i = 0; i < geo_->candidate_count(); ++i)
    if (!blocked_.test(i)) out.push_back(geo_->candidate(i));
  return out;
}

bool GameState::has_legal_move() const {
  const auto& w = blocked_.words();
  const std::size_t n = geo_->candidate_count();
  for (std::size_t k = 0; k < w.size(); ++k) {
    std::uint64_t free = ~w[k];
    if (k == w.size() - 1 && n % 64 != 0) free &= (std::uint64_t{1} << (n % 64)) - 1;
    if (free) return true;
  }
  return false;
}

std::optional<IllegalReason> GameState::check_move(const Point& a, const Point& b) const {
  if (!board().contains(a) || !board().contains(b)) return IllegalReason::OutOfBoard;
  if (a == b) return IllegalReason::NonPrimitive;
  return check_move(Segment(a, b));
}

std::optional<IllegalReason> GameState::check_move(const Segment& s) const {
  if (!board().contains(s.a()) || !board().contains(s.b())) return IllegalReason::OutOfBoard;
  if (!is_primitive(s)) return IllegalReason::NonPrimitive;
  const auto idx = static_cast<std::size_t>(geo_->index_of(s));
  if (drawn_.test(idx)) return IllegalReason::Duplicate;
  if (geo_->conflicts(idx).intersects(drawn_)) return IllegalReason::Conflict;
  if (blocked_.test(idx)) return IllegalReason::InsideClaimedRegion;
  return std::nullopt;
}

MoveOutcome GameState::play(const Segment& s) {
  if (auto r = check_move(s)) throw IllegalMove(*r, s);
  return play_index(static_cast<std::size_t>(geo_->index_of(s)));
}

MoveOutcome GameState::play_index(std::size_t idx) {
  if (blocked_.test(idx)) {
    if (auto r = check_move(geo_->candidate(idx))) throw IllegalMove(*r, geo_->candidate(idx));
  }
  MoveOutcome out{geo_->candidate(idx), to_move_, claims_if(idx), false, false, to_move_, false};
  draw(idx, to_move_);
  for (const Claim& c : out.claimed) add_claim(c);
  out.doublecross = out.claimed.size() == 2;
  if (out.doublecross) ++doublecrosses_;
  out.game_over = !has_legal_move();
  out.extra_turn = !out.claimed.empty() && !out.game_over;
  if (!out.extra_turn) {
    ++turns_;
    if (out.claimed.empty()) to_move_ = other(to_move_);
  }
  out.next_player = to_move_;
  return out;
}

std::pair<GameState, MoveOutcome> apply_move(const GameState& state, const Segment& s) {
  GameState next = state;
  MoveOutcome o = next.play(s);
  return {std::move(next), std::move(o)};
}

bool GameState::is_over() const {
  if (has_legal_move()) return false;
  if (claimed_area() != board().total_area())
    throw std::logic_error("no legal moves but only " + to_string(claimed_area()) + " of " +
                           to_string(board().total_area()) + " claimed");
  return true;
}

Scores GameState::scores() const {
  Scores s;
  for (const Claim& c : claims_) (c.owner == Player::First ? s.first : s.second) += c.area;
  return s;
}

HalfArea GameState::claimed_area() const {
  HalfArea a;
  for (const Claim& c : claims_) a += c.area;
  return a;
}

GameAccounting GameState::accounting() const {
  GameAccounting acc;
  acc.D = board().dots();
  acc.T = turns_;
  acc.L = static_cast<int>(segments_.size());
  acc.P = static_cast<int>(claims_.size());
  acc.C = doublecrosses_;
  acc.I_unused = static_cast<int>(std::count(degree_.begin(), degree_.end(), 0));
  return acc;
}

bool operator==(const GameState& l, const GameState& r) {
  return l.board() == r.board() && l.variant_ == r.variant_ && l.segments_ == r.segments_ &&
         l.claims_ == r.claims_ && l.to_move_ == r.to_move_ && l.turns_ == r.turns_ &&
         l.doublecrosses_ == r.doublecrosses_ && l.drawn_ == r.drawn_ &&
         l.blocked_ == r.blocked_ && l.degree_ == r.degree_;
}

// ---------------------------------------------------------------------------

namespace {

struct Decomposition {
  std::vector<Walk> walks;
  std::vector<int> outer_walk;  // per component, its non-positive walk
  std::vector<int> parent;      // per component, the bounded walk holding it or -1
};

// Innermost bounded walk, not belonging to `skip_component`, whose winding
// number around the (scaled) point is nonzero.
int innermost(const std::vector<Walk>& walks, std::int64_t px, std::int64_t py, int scale,
              int skip_component) {
  int best = -1;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    const Walk& w = walks[i];
    if (w.area2 <= 0 || w.component == skip_component) continue;
    if (best >= 0 && w.area2 >= walks[best].area2) continue;
    if (winding_number_scaled(px, py, scale, w.points) != 0) best = static_cast<int>(i);
  }
  return best;
}

Decomposition decompose(const Arrangement& arr) {
  Decomposition d;
  d.walks = arr.walks();
  d.outer_walk.assign(arr.component_count(), -1);
  for (std::size_t i = 0; i < d.walks.size(); ++i)
    if (d.walks[i].area2 <= 0) d.outer_walk[d.walks[i].component] = static_cast<int>(i);
  d.parent.assign(arr.component_count(), -1);
  for (int c = 0; c < arr.component_count(); ++c) {
    const Point p = d.walks[d.outer_walk[c]].points.front();
    d.parent[c] = innermost(d.walks, p.x, p.y, 1, c);
  }
  return d;
}

}  // namespace

std::vector<Face> GameState::faces() const {
  std::vector<Segment> segs;
  for (const auto& d : segments_) segs.push_back(d.segment);
  const Arrangement arr(segs);
  const Decomposition dec = decompose(arr);

  std::vector<int> face_of_walk(dec.walks.size(), -1);
  std::vector<Face> out;
  for (std::size_t i = 0; i < dec.walks.size(); ++i) {
    const Walk& w = dec.walks[i];
    if (w.area2 <= 0) continue;
    face_of_walk[i] = static_cast<int>(out.size());
    Face f{LatticeCycle(w.points), !w.repeats_vertex(), {}, {}, HalfArea{w.area2}, {}};
    out.push_back(std::move(f));
  }
  std::vector<std::vector<Segment>> comp_segments(arr.component_count());
  for (const Segment& s : segs) comp_segments[arr.component(arr.vertex_id(s.a()))].push_back(s);
  for (int c = 0; c < arr.component_count(); ++c) {
    if (dec.parent[c] < 0) continue;
    Face& f = out[face_of_walk[dec.parent[c]]];
    f.holes.push_back(comp_segments[c]);
    f.area.halves += dec.walks[dec.outer_walk[c]].area2;  // non-positive
  }
  for (int i = 0; i < board().dots(); ++i) {
    if (degree_[i] != 0) continue;
    const Point p = geo_->dot(i);
    const int w = innermost(dec.walks, p.x, p.y, 1, -1);
    if (w >= 0) out[face_of_walk[w]].interior_unused.push_back(p);
  }
  for (Face& f : out) {
    std::sort(f.holes.begin(), f.holes.end());
    for (auto& h : f.holes) std::sort(h.begin(), h.end());
    for (const Claim& c : claims_)
      if (f.simple && f.holes.empty() && c.outer == f.outer) f.owner = c.owner;
  }
  std::sort(out.begin(), out.end(), [](const Face& l, const Face& r) { return l.outer < r.outer; });
  return out;
}

std::optional<std::string> check_area_conservation(const GameState& state) {
  std::vector<Segment> segs;
  for (const auto& d : state.segments()) segs.push_back(d.segment);
  const Arrangement arr(segs);
  const Decomposition dec = decompose(arr);

  std::int64_t total_walk = 0;
  std::size_t half_edges = 0;
  for (const Walk& w : dec.walks) {
    total_walk += w.area2;
    half_edges += w.points.size();
  }
  if (half_edges != 2 * segs.size()) return "face walks do not use every directed edge once";
  if (total_walk != 0) return "face walk areas do not cancel";

  HalfArea covered;
  for (int c = 0; c < arr.component_count(); ++c)
    if (dec.parent[c] < 0) covered.halves -= dec.walks[dec.outer_walk[c]].area2;

  HalfArea claimed, unclaimed;
  const auto faces = state.faces();
  for (const Face& f : faces) (f.owner ? claimed : unclaimed) += f.area;
  if (claimed + unclaimed != covered)
    return "face areas " + to_string(claimed + unclaimed) + " != covered area " +
           to_string(covered);
  const HalfArea uncovered = state.board().total_area() - covered;
  if (uncovered.halves < 0) return "covered area exceeds the board";
  if (claimed + unclaimed + uncovered != state.board().total_area())
    return "claimed + unclaimed + uncovered != board area";
  if (claimed != state.claimed_area())
    return "claimed faces cover " + to_string(claimed) + " but claims total " +
           to_string(state.claimed_area());

  for (const Claim& c : state.claims()) {
    const auto hit = std::find_if(faces.begin(), faces.end(),
                                  [&](const Face& f) { return f.outer == c.outer; });
    if (hit == faces.end() || hit->owner != c.owner)
      return "claim " + to_string(c.area) + " is not an owned face";
    const LatticeCensus census = lattice_census(c.outer);
    const HalfArea pick = pick_area(static_cast<std::int64_t>(census.interior.size()),
                                    static_cast<std::int64_t>(census.boundary.size()));
    if (pick != c.area || shoelace_area(c.outer) != c.area)
      return "claim area disagrees with Pick's formula";
  }
  return std::nullopt;
}

std::optional<std::string> check_segment_invariants(const GameState& state) {
  const auto& segs = state.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i].segment;
    if (!state.board().contains(s.a()) || !state.board().contains(s.b()))
      return to_string(s) + " leaves the board";
    if (!is_primitive(s)) return to_string(s) + " is not primitive";
    for (std::size_t j = i + 1; j < segs.size(); ++j)
      if (segments_conflict(s, segs[j].segment))
        return to_string(s) + " conflicts with " + to_string(segs[j].segment);
  }
  return std::nullopt;
}

}  // namespace dnp
