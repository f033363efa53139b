#include "dnp/shapes.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace dnp {

std::string to_string(ReductionClass c) {
  switch (c) {
    case ReductionClass::Claimable: return "claimable";
    case ReductionClass::NotReduced: return "not-reduced";
    case ReductionClass::Reduced: return "reduced";
    case ReductionClass::ExtremelyReduced: return "extremely-reduced";
  }
  return "?";
}

std::string to_string(EyeKind k) {
  switch (k) {
    case EyeKind::NotAnEye: return "not-an-eye";
    case EyeKind::Eye: return "eye";
    case EyeKind::HangingEye: return "hanging-eye";
    case EyeKind::SplitHangingEye: return "split-hanging-eye";
  }
  return "?";
}

namespace {

SegmentMask domain_of(const GameState& st, const LatticeCycle& outer) {
  SegmentMask m = st.geometry().empty_mask();
  const auto& geo = st.geometry();
  for (std::size_t i = 0; i < geo.candidate_count(); ++i)
    if (segment_in_polygon(geo.candidate(i), outer.vertices())) m.set(i);
  return m;
}

bool claim_inside(const Claim& c, const LatticeCycle& outer) {
  const auto [x, y] = interior_sample4(c.outer.vertices());
  return locate_scaled(x, y, 4, outer.vertices()) == Location::Inside;
}

HalfArea gain_of(const std::vector<Claim>& claims) {
  HalfArea a;
  for (const Claim& c : claims) a += c.area;
  return a;
}

// Splits a closed walk at repeated vertices into loops.
std::vector<std::vector<Point>> split_loops(std::span<const Point> walk) {
  std::vector<std::vector<Point>> loops;
  std::vector<Point> stack;
  for (std::size_t k = 0; k <= walk.size(); ++k) {
    const Point p = walk[k % walk.size()];
    auto it = std::find(stack.begin(), stack.end(), p);
    if (it != stack.end()) {
      loops.emplace_back(it, stack.end());
      stack.erase(it + 1, stack.end());
    } else {
      stack.push_back(p);
    }
  }
  return loops;
}

}  // namespace

Region::Region(GameState state, LatticeCycle outer)
    : state_(std::move(state)), outer_(std::move(outer)) {
  if (!is_simple(outer_.vertices())) throw RegionError("region outline is not simple");
  for (const Point& p : outer_.vertices())
    if (!state_.board().contains(p)) throw RegionError("region leaves the board");
  domain_ = domain_of(state_, outer_);
}

Region::Region(GameState state, LatticeCycle outer, SegmentMask domain)
    : state_(std::move(state)), outer_(std::move(outer)), domain_(std::move(domain)) {}

Region Region::from_fixture(const Fixture& f) { return Region(fixture_state(f), f.outer); }

Region Region::from_face(const GameState& state, const Face& face) {
  if (face.simple) return Region(state, face.outer);
  std::vector<Point> best;
  std::int64_t best_area = 0;
  for (auto& loop : split_loops(face.outer.vertices())) {
    if (loop.size() < 3) continue;
    const auto a = signed_area2(loop);
    if (a > best_area) {
      best_area = a;
      best = std::move(loop);
    }
  }
  if (best.empty()) throw RegionError("face has no bounded contour");
  return Region(state, LatticeCycle(std::move(best)));
}

bool Region::closed() const {
  const auto v = outer_.vertices();
  const auto& geo = state_.geometry();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (const Segment& piece : primitive_pieces(Segment(v[i], v[(i + 1) % v.size()])))
      if (!state_.drawn().test(static_cast<std::size_t>(geo.index_of(piece)))) return false;
  return true;
}

std::vector<Segment> Region::interior_segments() const {
  std::vector<Segment> out;
  for (const auto& d : state_.segments()) {
    const Segment& s = d.segment;
    if (locate_doubled(std::int64_t{s.a().x} + s.b().x, std::int64_t{s.a().y} + s.b().y,
                       outer_.vertices()) == Location::Inside)
      out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> Region::boundary_points() const {
  return dnp::boundary_points(outer_.vertices());
}

std::vector<Point> Region::interior_points() const { return lattice_census(outer_).interior; }

bool Region::on_boundary(const Point& p) const {
  return point_in_cycle(p, outer_) == Location::Boundary;
}

HalfArea Region::area() const { return shoelace_area(outer_); }

HalfArea Region::unclaimed_area() const {
  HalfArea a = area();
  for (const Claim& c : state_.claims())
    if (claim_inside(c, outer_)) a -= c.area;
  return a;
}

SegmentMask Region::move_mask() const { return state_.legal_mask() & domain_; }

std::vector<Segment> Region::moves() const {
  std::vector<Segment> out;
  move_mask().for_each([&](std::size_t i) { out.push_back(state_.geometry().candidate(i)); });
  return out;
}

bool Region::has_move() const { return state_.legal_mask().intersects(domain_); }

Region Region::after(const Segment& s) const {
  GameState next = state_;
  next.play(s);
  return Region(std::move(next), outer_, domain_);
}

Region Region::with_state(GameState s) const { return Region(std::move(s), outer_, domain_); }

// ---------------------------------------------------------------------------

std::vector<Segment> boundary_chords(const Region& r) {
  std::vector<Segment> out;
  for (const Segment& s : r.moves())
    if (r.on_boundary(s.a()) && r.on_boundary(s.b())) out.push_back(s);
  return out;
}

std::pair<LatticeCycle, LatticeCycle> split_by_chord(const LatticeCycle& outer,
                                                     const Segment& chord) {
  const auto bp = boundary_points(outer.vertices());
  const auto i = static_cast<std::size_t>(std::find(bp.begin(), bp.end(), chord.a()) - bp.begin());
  const auto j = static_cast<std::size_t>(std::find(bp.begin(), bp.end(), chord.b()) - bp.begin());
  if (i == bp.size() || j == bp.size()) throw RegionError("chord endpoint is not on the boundary");
  std::vector<Point> first, second;
  for (std::size_t k = i;; k = (k + 1) % bp.size()) {
    first.push_back(bp[k]);
    if (k == j) break;
  }
  for (std::size_t k = j;; k = (k + 1) % bp.size()) {
    second.push_back(bp[k]);
    if (k == i) break;
  }
  return {LatticeCycle(std::move(first)), LatticeCycle(std::move(second))};
}

EyeClass classify_eye(const Region& r) {
  if (!r.closed()) throw RegionError("region is not closed");
  EyeClass out;
  const auto segs = r.interior_segments();
  const auto interior = r.interior_points();

  // Interior points hidden inside claimed polygons need no iris.
  std::set<Point> covered;
  for (const Claim& c : r.state().claims())
    if (c.area.halves > 1 && claim_inside(c, r.outer()))
      for (const Point& p : lattice_census(c.outer).interior) covered.insert(p);

  // Components of the interior segments; boundary vertices do not join them.
  std::vector<int> parent(segs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<Point, int> first_seg;
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (const Point& p : {segs[i].a(), segs[i].b()}) {
      if (r.on_boundary(p)) continue;
      auto [it, fresh] = first_seg.emplace(p, static_cast<int>(i));
      if (!fresh) parent[find(static_cast<int>(i))] = find(it->second);
    }
  std::map<int, std::vector<Segment>> comps;
  std::map<int, std::set<Point>> attach;
  std::set<Point> iris;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const int root = find(static_cast<int>(i));
    comps[root].push_back(segs[i]);
    attach[root];
    for (const Point& p : {segs[i].a(), segs[i].b()}) {
      if (r.on_boundary(p))
        attach[root].insert(p);
      else
        iris.insert(p);
    }
  }
  for (auto& [root, c] : comps) out.iris_components.push_back(c);

  if (segs.empty()) {
    // A single interior point is its own (trivial) iris.
    if (interior.size() == 1) {
      out.kind = EyeKind::Eye;
      iris.insert(interior[0]);
    }
  } else {
    int unattached = 0, hanging = 0;
    bool chord = false;
    for (const auto& [root, a] : attach) {
      if (a.empty())
        ++unattached;
      else if (a.size() == 1)
        ++hanging;
      else
        chord = true;
    }
    if (!chord) {
      if (unattached == 1 && hanging == 0)
        out.kind = EyeKind::Eye;
      else if (unattached == 0 && hanging == 1)
        out.kind = EyeKind::HangingEye;
      else if (unattached == 0 && hanging >= 2)
        out.kind = EyeKind::SplitHangingEye;
    }
  }
  out.iris_vertices.assign(iris.begin(), iris.end());
  for (const Point& p : interior)
    if (!iris.count(p) && !covered.count(p)) out.lazy = true;

  out.iris_expanded = true;
  for (const Segment& m : r.moves())
    if (iris.count(m.a()) && iris.count(m.b())) {
      out.iris_expanded = false;
      break;
    }
  return out;
}

ReductionClass classify_reduction(const Region& r) {
  if (!r.closed()) throw RegionError("region is not closed");
  const GameState& st = r.state();
  bool any_move = false;
  bool claimable = false;
  r.move_mask().for_each([&](std::size_t i) {
    any_move = true;
    if (!claimable && !st.claims_if(i).empty()) claimable = true;
  });
  if (claimable) return ReductionClass::Claimable;
  if (!any_move) throw RegionError("region has no moves left");
  if (r.interior_points().empty()) return ReductionClass::NotReduced;

  const EyeClass eye = classify_eye(r);
  if (eye.kind != EyeKind::NotAnEye && (eye.lazy || !eye.iris_expanded))
    return ReductionClass::NotReduced;

  const auto chords = boundary_chords(r);
  if (chords.empty()) return ReductionClass::ExtremelyReduced;
  for (const Segment& c : chords) {
    const auto [p1, p2] = split_by_chord(r.outer(), c);
    if (lattice_census(p1).interior.empty() || lattice_census(p2).interior.empty())
      return ReductionClass::NotReduced;
  }
  return ReductionClass::Reduced;
}

bool is_reduced_eye(const Region& r) {
  const EyeClass eye = classify_eye(r);
  if (eye.kind != EyeKind::Eye || eye.lazy || !eye.iris_expanded) return false;
  const ReductionClass c = classify_reduction(r);
  return c == ReductionClass::Reduced || c == ReductionClass::ExtremelyReduced;
}

// ---------------------------------------------------------------------------

namespace {

class OneTurnSearch {
 public:
  explicit OneTurnSearch(const Region& r) : region_(r) {}

  std::optional<std::vector<Segment>> run() {
    const HalfArea target = region_.unclaimed_area();
    if (target.halves == 0) return std::vector<Segment>{};
    if (dfs(region_.state(), target)) return path_;
    return std::nullopt;
  }

 private:
  bool dfs(const GameState& st, HalfArea remaining) {
    if (remaining.halves == 0) return true;
    if (failed_.count(st.drawn())) return false;
    const SegmentMask moves = st.legal_mask() & region_.domain();
    for (std::size_t i : moves.indices()) {
      auto claims = st.claims_if(i);
      if (claims.empty()) continue;
      GameState next = st;
      next.play_index(i);
      path_.push_back(st.geometry().candidate(i));
      if (dfs(next, remaining - gain_of(claims))) return true;
      path_.pop_back();
    }
    failed_.insert(st.drawn());
    return false;
  }

  const Region& region_;
  std::vector<Segment> path_;
  std::unordered_set<SegmentMask, SegmentMaskHash> failed_;
};

}  // namespace

std::optional<std::vector<Segment>> single_turn_claim(const Region& r) {
  if (!r.closed()) throw RegionError("region is not closed");
  return OneTurnSearch(r).run();
}

std::vector<Segment> claim_all_no_interior(const Region& r) {
  if (!r.closed()) throw RegionError("region is not closed");
  if (!r.interior_points().empty()) throw RegionError("region has interior points");
  if (!r.has_move()) throw RegionError("region has nothing left to claim");
  std::vector<Segment> seq;
  Region cur = r;
  while (cur.unclaimed_area().halves > 0) {
    // The ears of the current shape: claiming moves, taken together unless
    // they cross one another.
    std::vector<Segment> ears;
    const GameState& st = cur.state();
    cur.move_mask().for_each([&](std::size_t i) {
      const Segment& s = st.geometry().candidate(i);
      for (const Segment& e : ears)
        if (segments_conflict(s, e)) return;
      if (!st.claims_if(i).empty()) ears.push_back(s);
    });
    if (ears.empty()) {
      auto rest = single_turn_claim(cur);
      if (!rest) throw std::logic_error("region without interior points resisted a one-turn claim");
      seq.insert(seq.end(), rest->begin(), rest->end());
      break;
    }
    GameState next = st;
    for (const Segment& e : ears) {
      const auto idx = static_cast<std::size_t>(next.geometry().index_of(e));
      if (next.check_move(e) || next.claims_if(idx).empty()) continue;
      next.play_index(idx);
      seq.push_back(e);
    }
    cur = cur.with_state(std::move(next));
  }
  return seq;
}

namespace {

// Plays the lex-least claiming move with both ends in `ends` until none is left.
std::vector<Segment> claim_between(const Region& r, const std::set<Point>& ends) {
  std::vector<Segment> seq;
  GameState st = r.state();
  for (bool progress = true; progress;) {
    progress = false;
    const SegmentMask moves = st.legal_mask() & r.domain();
    for (std::size_t i : moves.indices()) {
      const Segment& s = st.geometry().candidate(i);
      if (!ends.count(s.a()) || !ends.count(s.b()) || st.claims_if(i).empty()) continue;
      st.play_index(i);
      seq.push_back(s);
      progress = true;
      break;
    }
  }
  return seq;
}

}  // namespace

std::vector<Segment> expand_iris(const Region& r) {
  const EyeClass eye = classify_eye(r);
  if (eye.iris_components.empty()) throw RegionError("region has no iris");
  return claim_between(r, {eye.iris_vertices.begin(), eye.iris_vertices.end()});
}

std::vector<Segment> expand_boundary(const Region& r) {
  const auto b = r.boundary_points();
  return claim_between(r, {b.begin(), b.end()});
}

std::optional<std::vector<Segment>> second_player_eye_reply(const Region& r,
                                                            const Segment& first) {
  const EyeClass eye = classify_eye(r);
  if (eye.kind != EyeKind::Eye || eye.lazy || !eye.iris_expanded)
    throw RegionError("region is not an eye with an expanded iris");
  const int idx = r.state().geometry().index_of(first);
  if (idx < 0 || !r.move_mask().test(static_cast<std::size_t>(idx)))
    throw RegionError("first move " + to_string(first) + " is not a move of the region");
  if (!r.state().claims_if(static_cast<std::size_t>(idx)).empty())
    throw RegionError("first move " + to_string(first) + " claims area");
  return single_turn_claim(r.after(first));
}

}  // namespace dnp
