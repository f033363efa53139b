#include "dnp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "dnp/fixtures.hpp"
#include "dnp/shapes.hpp"
#include "dnp/strategy.hpp"

namespace dnp {

json TheoremReport::to_json() const {
  json v = json::array();
  for (const Violation& x : violations)
    v.push_back({{"expected", x.expected}, {"observed", x.observed}, {"witness", x.witness}});
  json j = {{"theorem", theorem}, {"params", params}, {"checked", checked},
            {"violations", v}, {"elapsed_ms", elapsed_ms}};
  if (!details.empty()) j["details"] = details;
  return j;
}

namespace {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json board_json(BoardSpec b) { return {{"width", b.width}, {"height", b.height}}; }

std::string variant_token(Variant v) { return v == Variant::Triangles ? "triangles" : "polygons"; }

json cycles_json(const std::vector<LatticeCycle>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(cycle_json(c));
  return out;
}

Fixture outline_fixture(const std::string& name, const LatticeCycle& outer, Variant v, int box,
                        std::vector<Segment> inside = {}, std::vector<LatticeCycle> claimed = {}) {
  return Fixture{name, {box + 1, box + 1}, v, outer, true, std::move(inside), std::move(claimed), {}};
}

// Counterclockwise angular order of directions starting at +x.
bool angle_less(const Point& a, const Point& b) {
  const int ha = (a.y < 0 || (a.y == 0 && a.x < 0)) ? 1 : 0;
  const int hb = (b.y < 0 || (b.y == 0 && b.x < 0)) ? 1 : 0;
  if (ha != hb) return ha < hb;
  return std::int64_t{a.x} * b.y - std::int64_t{a.y} * b.x > 0;
}

std::int64_t cross_dir(const Point& a, const Point& b) {
  return std::int64_t{a.x} * b.y - std::int64_t{a.y} * b.x;
}

// Convex lattice polygons as vertex lists, once per translation class. The
// walk starts at the lowest (then leftmost) vertex and turns left at every
// vertex. boundary_points == 0 means any count. With skip_ears, no vertex may
// cut off an area-1/2 triangle with its two boundary neighbours.
void for_each_convex(int max_box, int boundary_points, bool skip_ears,
                     const std::function<void(const std::vector<Point>&)>& fn) {
  std::vector<Point> dirs;
  for (int x = -max_box; x <= max_box; ++x)
    for (int y = -max_box; y <= max_box; ++y)
      if ((x || y) && gcd_abs(x, y) == 1) dirs.push_back({x, y});
  std::sort(dirs.begin(), dirs.end(), angle_less);

  std::vector<int> used;  // direction index per edge
  std::vector<Point> verts{{0, 0}};
  auto emit = [&](int min_x) {
    std::vector<Point> out;
    for (const Point& p : verts) out.push_back({p.x - min_x, p.y});
    fn(out);
  };
  auto dfs = [&](auto&& self, Point at, int count, int min_x, int max_x, int max_y) -> void {
    if (used.size() >= 2) {
      const Point w{-at.x, -at.y};
      const int g = gcd_abs(w.x, w.y);
      const Point u{w.x / g, w.y / g};
      if (w.y < 0 && angle_less(dirs[used.back()], u) &&
          (boundary_points == 0 || count + g == boundary_points) &&
          !(skip_ears && (cross_dir(dirs[used.back()], u) == 1 || cross_dir(u, dirs[used.front()]) == 1)))
        emit(min_x);
    }
    const int from = used.empty() ? 0 : used.back() + 1;
    for (int d = from; d < static_cast<int>(dirs.size()); ++d) {
      const Point u = dirs[d];
      if (used.empty() && !(u.y > 0 || (u.y == 0 && u.x > 0))) break;
      if (skip_ears && !used.empty() && cross_dir(dirs[used.back()], u) == 1) continue;
      for (int g = 1;; ++g) {
        const Point next{at.x + g * u.x, at.y + g * u.y};
        const int lo = std::min(min_x, next.x), hi = std::max(max_x, next.x);
        const int top = std::max(max_y, next.y);
        if (next.y < 0 || hi - lo > max_box || top > max_box) break;
        if (next.x == 0 && next.y == 0) break;  // back at the start: degenerate
        if (boundary_points != 0 && count + g + 1 > boundary_points) break;
        used.push_back(d);
        verts.push_back(next);
        self(self, next, count + g, lo, hi, top);
        verts.pop_back();
        used.pop_back();
      }
    }
  };
  dfs(dfs, {0, 0}, 0, 0, 0, 0);
}

Point transform(Point p, int k) {
  for (int r = 0; r < (k & 3); ++r) p = {-p.y, p.x};
  if (k & 4) p = {-p.x, p.y};
  return p;
}

// Corners of a boundary-point cycle (collinear points dropped).
std::vector<Point> corners(const std::vector<Point>& pts) {
  std::vector<Point> out;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    if (cross(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]) != 0) out.push_back(pts[i]);
  return out;
}

// Lattice points strictly on each side of the line through a and b.
std::pair<int, int> sides(const Point& a, const Point& b, const std::vector<Point>& pts) {
  int left = 0, right = 0;
  for (const Point& p : pts) {
    const auto c = cross(a, b, p);
    left += c > 0;
    right += c < 0;
  }
  return {left, right};
}

std::vector<Segment> boundary_pieces(const LatticeCycle& c) {
  const auto bp = boundary_points(c.vertices());
  std::vector<Segment> out;
  for (std::size_t i = 0; i < bp.size(); ++i) out.emplace_back(bp[i], bp[(i + 1) % bp.size()]);
  std::sort(out.begin(), out.end());
  return out;
}

// Primitive segments between boundary points that run through the inside.
std::vector<Segment> outline_chords(const LatticeCycle& c) {
  const auto bp = boundary_points(c.vertices());
  const auto pieces = boundary_pieces(c);
  std::vector<Segment> out;
  for (std::size_t i = 0; i < bp.size(); ++i)
    for (std::size_t j = i + 1; j < bp.size(); ++j) {
      const Segment s(bp[i], bp[j]);
      if (!is_primitive(s) || std::binary_search(pieces.begin(), pieces.end(), s)) continue;
      if (segment_in_polygon(s, c.vertices())) out.push_back(s);
    }
  return out;
}

// Sets of pairwise non-crossing segments from `segs` to which no further
// segment can be added, at most `limit` of them (0: all).
void for_each_maximal(const std::vector<Segment>& segs, std::uint64_t limit,
                      const std::function<void(const std::vector<Segment>&)>& fn) {
  const std::size_t n = segs.size();
  std::vector<std::vector<char>> conflict(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      conflict[i][j] = conflict[j][i] = segments_conflict(segs[i], segs[j]);
  std::vector<int> blocked(n, 0);  // chosen segments crossing each one
  std::vector<Segment> chosen;
  std::uint64_t emitted = 0;
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (limit && emitted == limit) return;
    if (i == n) {
      // Every skipped segment must be crossed by a chosen one.
      for (std::size_t k = 0; k < n; ++k) {
        if (blocked[k] || std::find(chosen.begin(), chosen.end(), segs[k]) != chosen.end()) continue;
        return;
      }
      ++emitted;
      fn(chosen);
      return;
    }
    if (blocked[i]) {
      self(self, i + 1);
      return;
    }
    for (std::size_t k = 0; k < n; ++k) blocked[k] += conflict[i][k];
    chosen.push_back(segs[i]);
    self(self, i + 1);
    chosen.pop_back();
    for (std::size_t k = 0; k < n; ++k) blocked[k] -= conflict[i][k];
    // Leaving i out only works if a later segment will cross it.
    bool later = false;
    for (std::size_t k = i + 1; k < n && !later; ++k) later = conflict[i][k] && !blocked[k];
    if (later) self(self, i + 1);
  };
  dfs(dfs, 0);
}

// Area-1/2 triangles whose three sides are all in `segs`.
std::vector<LatticeCycle> unit_faces(const std::vector<Segment>& segs) {
  std::set<Segment> have(segs.begin(), segs.end());
  std::set<LatticeCycle> out;
  for (const Segment& s : segs)
    for (const Segment& t : segs) {
      if (!(s < t)) continue;
      Point shared, a, b;
      if (s.a() == t.a()) shared = s.a(), a = s.b(), b = t.b();
      else if (s.a() == t.b()) shared = s.a(), a = s.b(), b = t.a();
      else if (s.b() == t.a()) shared = s.b(), a = s.a(), b = t.b();
      else if (s.b() == t.b()) shared = s.b(), a = s.a(), b = t.a();
      else continue;
      if (std::abs(cross(shared, a, b)) != 1 || !have.count(Segment(a, b))) continue;
      out.insert(LatticeCycle({shared, a, b}));
    }
  return {out.begin(), out.end()};
}

// Plays `seq` and reports whether every move claims and nothing is left.
bool claims_everything(const Region& r, const std::vector<Segment>& seq) {
  GameState st = r.state();
  const Player mover = st.to_move();
  for (const Segment& s : seq) {
    if (st.to_move() != mover || st.check_move(s)) return false;
    if (st.play(s).claimed.empty()) return false;
  }
  return r.with_state(st).unclaimed_area() == HalfArea{};
}

json moves_json(const std::vector<Segment>& seq) {
  json out = json::array();
  for (const Segment& s : seq) out.push_back({{"from", point_json(s.a())}, {"to", point_json(s.b())}});
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

TheoremReport verify_turn_identity(Variant v, int games, BoardSpec board, std::uint64_t seed) {
  Stopwatch clock;
  TheoremReport rep;
  rep.theorem = "turn-identity-" + variant_token(v);
  rep.params = {{"variant", variant_token(v)}, {"games", games}, {"board", board_json(board)}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  int max_c = 0;
  for (int g = 0; g < games; ++g) {
    GameState st = GameState::new_game(board, v);
    while (st.has_legal_move()) {
      const auto legal = st.legal_moves();
      st.play(legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)]);
    }
    const GameAccounting a = st.accounting();
    const int expected = v == Variant::Triangles ? a.D + a.C : a.D + a.C - a.I_unused;
    max_c = std::max(max_c, a.C);
    ++rep.checked;
    if (a.T != expected)
      rep.violations.push_back({"T = " + std::to_string(expected), "T = " + std::to_string(a.T),
                                record_json(st)});
  }
  rep.details = {{"max_doublecrosses", max_c}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

TheoremReport verify_nested_diamond(int n_max) {
  if (n_max < 1 || n_max > 4) throw std::invalid_argument("n_max must be in 1..4");
  Stopwatch clock;
  TheoremReport rep;
  rep.theorem = "nested-diamond";
  rep.params = {{"n_max", n_max}};
  json rows = json::array();
  for (int n = 1; n <= n_max; ++n) {
    const NestedDiamondSpec spec{n, {n, n}};
    const PlayoutResult r = nested_diamond_playout(spec);
    const std::int64_t first = 4 * (n - 1);
    const std::int64_t second = 2 * (2 * n * n - 2 * n + 2);
    ++rep.checked;
    json row = {{"n", n}, {"first_halves", r.first_area.halves}, {"second_halves", r.second_area.halves}};
    if (r.first_area.halves != first || r.second_area.halves != second ||
        r.first_area.halves + r.second_area.halves != 4 * n * n) {
      GameState st = nested_diamond_state(spec, Variant::Triangles, nested_diamond_board(spec));
      for (const MoveOutcome& m : r.moves) st.play(m.move);
      rep.violations.push_back({"(" + std::to_string(first) + ", " + std::to_string(second) + ") halves",
                                "(" + std::to_string(r.first_area.halves) + ", " +
                                    std::to_string(r.second_area.halves) + ") halves",
                                record_json(st)});
    }
    if (n <= 2) {
      const GameState st = nested_diamond_state(spec, Variant::Triangles, nested_diamond_board(spec));
      const SolveResult s = solve(st, 100'000'000, nested_diamond_domain(spec, st));
      ++rep.checked;
      // The solver value is First's area minus Second's; Second keeps the rest.
      const std::int64_t guaranteed = (4 * n * n - s.value) / 2;
      row["solver_second_halves"] = guaranteed;
      row["solver_nodes"] = s.nodes_visited;
      if (!s.complete || guaranteed < second)
        rep.violations.push_back({"Second guarantees >= " + std::to_string(second) + " halves",
                                  s.complete ? std::to_string(guaranteed) + " halves" : "search incomplete",
                                  record_json(st)});
    }
    rows.push_back(row);
  }
  rep.details = {{"playouts", rows}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

LatticeCycle canonical_shape(const LatticeCycle& c) {
  std::optional<LatticeCycle> best;
  for (int k = 0; k < 8; ++k) {
    std::vector<Point> pts;
    for (const Point& p : c.vertices()) pts.push_back(transform(p, k));
    int mx = pts[0].x, my = pts[0].y;
    for (const Point& p : pts) mx = std::min(mx, p.x), my = std::min(my, p.y);
    for (Point& p : pts) p = {p.x - mx, p.y - my};
    LatticeCycle img(std::move(pts));
    if (!best || img < *best) best = std::move(img);
  }
  return *best;
}

std::vector<LatticeCycle> convex_polygons(int boundary_points, int max_box) {
  std::set<LatticeCycle> out;
  for_each_convex(max_box, boundary_points, false,
                  [&](const std::vector<Point>& v) { out.insert(canonical_shape(LatticeCycle(v))); });
  return {out.begin(), out.end()};
}

std::vector<LatticeCycle> convex_polygons_naive(int boundary_points, int max_box) {
  std::vector<Point> grid;
  for (int x = 0; x <= max_box; ++x)
    for (int y = 0; y <= max_box; ++y) grid.push_back({x, y});
  std::set<LatticeCycle> out;
  std::vector<Point> pick;
  auto hull_ok = [&]() {
    // Monotone chain with strict turns: every picked point must be a corner.
    std::vector<Point> pts = pick;
    std::sort(pts.begin(), pts.end());
    std::vector<Point> h;
    for (int pass = 0; pass < 2; ++pass) {
      const std::size_t base = h.size();
      for (const Point& p : pts) {
        while (h.size() >= base + 2 && cross(h[h.size() - 2], h.back(), p) <= 0) h.pop_back();
        h.push_back(p);
      }
      h.pop_back();
      std::reverse(pts.begin(), pts.end());
    }
    if (h.size() != pick.size()) return;
    int b = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Point& p = h[i];
      const Point& q = h[(i + 1) % h.size()];
      b += gcd_abs(q.x - p.x, q.y - p.y);
    }
    if (b == boundary_points) out.insert(canonical_shape(LatticeCycle(h)));
  };
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (pick.size() >= 3) hull_ok();
    if (static_cast<int>(pick.size()) == boundary_points) return;
    for (std::size_t i = from; i < grid.size(); ++i) {
      pick.push_back(grid[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return {out.begin(), out.end()};
}

bool outline_extremely_reduced(const LatticeCycle& c) {
  if (lattice_census(c).interior.empty()) return false;
  return outline_chords(c).empty();
}

TheoremReport enumerate_convex_ers(int boundary_points, int max_box) {
  if (boundary_points < 3) throw std::invalid_argument("boundary_points must be at least 3");
  if (max_box < 1 || max_box > 8) throw std::invalid_argument("max_box must be in 1..8");
  Stopwatch clock;
  TheoremReport rep;
  rep.theorem = "convex-ers-" + std::to_string(boundary_points);
  rep.params = {{"boundary_points", boundary_points}, {"max_box", max_box}};
  const auto shapes = convex_polygons(boundary_points, max_box);
  std::vector<LatticeCycle> found;
  for (const LatticeCycle& c : shapes) {
    ++rep.checked;
    const bool ers = outline_extremely_reduced(c);
    // The engine-level classifier must agree wherever the outline has interior points.
    if (ers || max_box <= 4) {
      const Region r = Region::from_fixture(outline_fixture("shape", c, Variant::Triangles, max_box));
      const bool engine_ers = !r.interior_points().empty() &&
                              classify_reduction(r) == ReductionClass::ExtremelyReduced;
      if (engine_ers != ers)
        rep.violations.push_back({"classifier agrees with the outline test",
                                  std::string("outline test ") + (ers ? "true" : "false"),
                                  fixture_json(outline_fixture("shape", c, Variant::Triangles, max_box))});
    }
    if (ers) found.push_back(c);
  }
  if (boundary_points == 5)
    for (const LatticeCycle& c : found)
      rep.violations.push_back({"no extremely reduced shape", "extremely reduced",
                                fixture_json(outline_fixture("shape", c, Variant::Triangles, max_box))});
  if (boundary_points == 6) {
    const LatticeCycle hex = canonical_shape(load_fixture("fig13").outer);
    const bool fits = hex.vertices().size() > 0 &&
                      std::all_of(hex.vertices().begin(), hex.vertices().end(),
                                  [&](const Point& p) { return p.x <= max_box && p.y <= max_box; });
    if (found.empty())
      rep.violations.push_back({"at least one shape", "none", json::object()});
    if (fits && std::find(found.begin(), found.end(), hex) == found.end())
      rep.violations.push_back({"the Fig 13 hexagon class", "missing",
                                fixture_json(outline_fixture("fig13", hex, Variant::Triangles, max_box))});
  }
  json details = {{"shapes", shapes.size()}, {"found", cycles_json(found)},
                  {"scope", "verified within bounding box " + std::to_string(max_box)}};
  if (max_box <= 4) {
    const auto naive = convex_polygons_naive(boundary_points, max_box);
    details["naive_shapes"] = naive.size();
    if (naive != shapes)
      rep.violations.push_back({std::to_string(naive.size()) + " shapes from the plain enumeration",
                                std::to_string(shapes.size()) + " shapes", json::object()});
  }
  rep.details = details;
  rep.elapsed_ms = clock.ms();
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct EyeTally {
  std::uint64_t eyes = 0;
  std::uint64_t replies = 0;
  std::optional<HalfArea> smallest;
};

// Checks both statements on one candidate region; returns false if it is not
// a reduced eye.
bool check_eye(const Region& r, const Fixture& f, TheoremReport& rep, EyeTally& tally) {
  if (!is_reduced_eye(r)) return false;
  ++tally.eyes;
  ++rep.checked;
  if (!tally.smallest || r.unclaimed_area() < *tally.smallest) tally.smallest = r.unclaimed_area();
  if (classify_reduction(r) != ReductionClass::ExtremelyReduced)
    rep.violations.push_back({"extremely reduced", to_string(classify_reduction(r)), fixture_json(f)});
  for (const Segment& first : r.moves()) {
    ++tally.replies;
    auto [after, out] = apply_move(r.state(), first);
    if (!out.claimed.empty()) {
      rep.violations.push_back({"first move claims nothing", "claims", fixture_json(f)});
      continue;
    }
    const auto reply = second_player_eye_reply(r, first);
    if (!reply || !claims_everything(r.with_state(after), *reply)) {
      Fixture w = f;
      w.moves = {first};
      rep.violations.push_back({"reply claims the whole eye", "no such reply", fixture_json(w)});
    }
  }
  return true;
}

}  // namespace

TheoremReport verify_eye_theorems(int max_box, std::uint64_t iris_limit) {
  if (max_box < 1 || max_box > 6) throw std::invalid_argument("max_box must be in 1..6");
  Stopwatch clock;
  TheoremReport rep;
  rep.theorem = "eye-theorems";
  rep.params = {{"max_box", max_box}, {"iris_limit", iris_limit}};

  std::set<LatticeCycle> outlines;
  for_each_convex(max_box, 0, true, [&](const std::vector<Point>& v) {
    outlines.insert(canonical_shape(LatticeCycle(v)));
  });

  std::map<std::string, EyeTally> tally;
  std::uint64_t candidates = 0, irises = 0;
  for (const LatticeCycle& outer : outlines) {
    const auto interior = lattice_census(outer).interior;
    if (interior.empty()) continue;
    // A chord with no interior point on one side can never be blocked by an
    // iris, so the region could not be reduced.
    bool hopeless = false;
    for (const Segment& c : outline_chords(outer)) {
      const auto [l, rgt] = sides(c.a(), c.b(), interior);
      if (l == 0 || rgt == 0) hopeless = true;
    }
    if (hopeless) continue;
    ++candidates;
    std::vector<Segment> links;
    for (std::size_t i = 0; i < interior.size(); ++i)
      for (std::size_t j = i + 1; j < interior.size(); ++j)
        if (is_primitive(Segment(interior[i], interior[j]))) links.emplace_back(interior[i], interior[j]);
    for_each_maximal(links, iris_limit, [&](const std::vector<Segment>& iris) {
      ++irises;
      for (Variant v : {Variant::Triangles, Variant::Polygons}) {
        const Fixture f = outline_fixture("eye", outer, v, max_box, iris, unit_faces(iris));
        check_eye(Region::from_fixture(f), f, rep, tally[variant_token(v)]);
      }
    });
  }

  // The figure eyes: Fig 8 left once its corners are claimed, and Fig 14.
  json figures = json::array();
  for (Variant v : {Variant::Triangles, Variant::Polygons}) {
    Fixture f8 = load_fixture("fig8L");
    f8.variant = v;
    const Region r8 = Region::from_fixture(f8);
    GameState st = r8.state();
    for (const Segment& s : expand_boundary(r8)) st.play(s);
    std::optional<Region> eye;
    for (const Face& face : st.faces())
      if (!face.owner) eye = Region::from_face(st, face);
    Fixture reduced = f8;
    if (eye) {
      reduced.outer = eye->outer();
      reduced.claimed.clear();
      for (const Claim& c : st.claims()) reduced.claimed.push_back(c.outer);
    }
    const bool ok = eye && check_eye(*eye, reduced, rep, tally["fig8L-" + variant_token(v)]);
    if (!ok) rep.violations.push_back({"Fig 8 left reduces to a reduced eye", "not a reduced eye", fixture_json(f8)});
    figures.push_back({{"fixture", "fig8L"}, {"variant", variant_token(v)}, {"reduced_eye", ok}});
  }
  {
    const Fixture f14 = load_fixture("fig14");
    const bool ok = check_eye(Region::from_fixture(f14), f14, rep, tally["fig14-polygons"]);
    if (!ok) rep.violations.push_back({"Fig 14 is a reduced eye", "not a reduced eye", fixture_json(f14)});
    figures.push_back({{"fixture", "fig14"}, {"variant", "polygons"}, {"reduced_eye", ok}});
  }

  json per = json::object();
  for (const auto& [k, t] : tally) {
    per[k] = {{"eyes", t.eyes}, {"first_moves", t.replies}};
    if (t.smallest) per[k]["smallest_halves"] = t.smallest->halves;
  }
  rep.details = {{"outlines", outlines.size()}, {"candidate_outlines", candidates}, {"irises", irises},
                 {"by_variant", per}, {"figures", figures},
                 {"scope", "convex outlines verified within bounding box " + std::to_string(max_box) +
                               (iris_limit ? ", first " + std::to_string(iris_limit) + " expanded irises per outline"
                                           : ", every expanded iris")}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Simple lattice polygons with area at most max_halves inside [0, box]^2, one
// per congruence class.
std::vector<LatticeCycle> small_polygons(int max_halves, int box) {
  const int max_points = max_halves + 2;  // B + 2I = 2A + 2
  std::set<LatticeCycle> out;
  std::vector<Point> path;
  auto rec = [&](auto&& self) -> void {
    const Point last = path.back();
    if (path.size() >= 3 && is_primitive(Segment(last, path.front()))) {
      const auto area2 = std::abs(signed_area2(path));
      if (area2 > 0 && area2 <= max_halves && is_simple(path)) {
        const auto cs = corners(path);
        const LatticeCycle c(cs);
        // Only count cycles listing every boundary point exactly once.
        if (boundary_points(c.vertices()).size() == path.size()) out.insert(canonical_shape(c));
      }
    }
    if (static_cast<int>(path.size()) == max_points) return;
    for (int x = 0; x <= box; ++x)
      for (int y = 0; y <= box; ++y) {
        const Point p{x, y};
        if (p < path.front() || std::find(path.begin(), path.end(), p) != path.end()) continue;
        if (!is_primitive(Segment(last, p))) continue;
        path.push_back(p);
        self(self);
        path.pop_back();
      }
  };
  for (int x = 0; x <= box; ++x)
    for (int y = 0; y <= box; ++y) {
      path = {{x, y}};
      rec(rec);
    }
  return {out.begin(), out.end()};
}

struct DealInstance {
  LatticeCycle outer;
  HalfArea area;
  int interior = 0;
  std::vector<Segment> drawn;
  Segment move;
  HalfArea ceded;
};

struct DealSearch {
  std::vector<DealInstance> found;
  std::uint64_t shapes = 0;
  std::uint64_t positions = 0;
  std::map<std::int64_t, std::uint64_t> positions_by_area;
};

// Every position drawn inside each small region (pairwise non-crossing and
// without a closed cycle, so nothing is claimed yet) and every double-dealing
// move in it.
DealSearch search_deals(int max_halves, int box) {
  DealSearch out;
  const BoardSpec board{box + 1, box + 1};
  const auto geo = BoardGeometry::get(board);
  for (const LatticeCycle& outer : small_polygons(max_halves, box)) {
    ++out.shapes;
    const HalfArea area = shoelace_area(outer);
    const int interior = static_cast<int>(lattice_census(outer).interior.size());
    std::vector<Segment> segs;
    for (const Segment& s : geo->candidates())
      if (segment_in_polygon(s, outer.vertices())) segs.push_back(s);
    SegmentMask domain = geo->empty_mask();
    for (const Segment& s : segs) domain.set(static_cast<std::size_t>(geo->index_of(s)));

    std::vector<Segment> drawn;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == segs.size()) {
        std::vector<DrawnSegment> ds;
        for (const Segment& s : drawn) ds.push_back({s, Player::First});
        const GameState st = GameState::from_position(board, Variant::Polygons, ds, {}, Player::First);
        ++out.positions;
        ++out.positions_by_area[area.halves];
        for (const Segment& s : double_dealing_moves(st, domain))
          out.found.push_back({outer, area, interior, drawn, s, double_dealing(st, s).ceded});
        return;
      }
      self(self, i + 1);
      const Segment& s = segs[i];
      for (const Segment& t : drawn)
        if (segments_conflict(s, t)) return;
      // Reject a segment that would close a cycle.
      std::map<Point, Point> parent;
      std::function<Point(Point)> find = [&](Point p) {
        auto it = parent.find(p);
        if (it == parent.end() || it->second == p) return p;
        return it->second = find(it->second);
      };
      for (const Segment& t : drawn) parent[find(t.a())] = find(t.b());
      if (find(s.a()) == find(s.b())) return;
      drawn.push_back(s);
      self(self, i + 1);
      drawn.pop_back();
    };
    rec(rec, 0);
  }
  return out;
}

json instance_json(const DealInstance& d, int box) {
  Fixture f{"deal", {box + 1, box + 1}, Variant::Polygons, d.outer, false, d.drawn, {}, {d.move}};
  json j = fixture_json(f);
  j["ceded_halves"] = d.ceded.halves;
  return j;
}

}  // namespace

TheoremReport verify_min_double_deal(int max_box) {
  if (max_box < 1 || max_box > 4) throw std::invalid_argument("max_box must be in 1..4");
  Stopwatch clock;
  TheoremReport rep;
  rep.theorem = "min-double-deal";
  rep.params = {{"max_box", max_box}, {"max_area_halves", 3}};
  const DealSearch s = search_deals(3, max_box);
  rep.checked = s.positions;
  std::map<std::int64_t, std::uint64_t> by_area;
  for (const DealInstance& d : s.found) {
    ++by_area[d.area.halves];
    if (d.area.halves < 3)
      rep.violations.push_back({"no double-dealing move below area 3/2",
                                "found at area " + to_string(d.area), instance_json(d, max_box)});
  }
  const LatticeCycle fig10 = canonical_shape(load_fixture("fig10").outer);
  const bool fits = std::all_of(fig10.vertices().begin(), fig10.vertices().end(),
                                [&](const Point& p) { return p.x <= max_box && p.y <= max_box; });
  const bool fig10_found = std::any_of(s.found.begin(), s.found.end(), [&](const DealInstance& d) {
    return d.outer == fig10 && d.ceded.halves == 3;
  });
  if (fits) {
    if (!by_area.count(3)) rep.violations.push_back({"a double-dealing move at area 3/2", "none", json::object()});
    if (!fig10_found)
      rep.violations.push_back({"the Fig 10 region", "not found", fixture_json(load_fixture("fig10"))});
  }
  // The figure position itself.
  const GameState g10 = fixture_state(load_fixture("fig10"));
  const DoubleDeal d10 = double_dealing(g10, Segment({0, 1}, {0, 0}));
  ++rep.checked;
  if (!d10.dealing || d10.ceded.halves != 3)
    rep.violations.push_back({"(0,1)-(0,0) deals 3/2", d10.dealing ? "deals " + to_string(d10.ceded) : "not dealing",
                              fixture_json(load_fixture("fig10"))});

  json found = json::array();
  for (const DealInstance& d : s.found)
    if (found.size() < 20) found.push_back(instance_json(d, max_box));
  json positions = json::object();
  for (const auto& [a, n] : s.positions_by_area) positions[std::to_string(a)] = n;
  json deals = json::object();
  for (const auto& [a, n] : by_area) deals[std::to_string(a)] = n;
  rep.details = {{"regions", s.shapes}, {"positions_by_area_halves", positions},
                 {"deals_by_area_halves", deals}, {"fig10_class_found", fig10_found},
                 {"examples", found}, {"scope", "regions within bounding box " + std::to_string(max_box)}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

TheoremReport verify_no_deal_without_interior(int max_box) {
  if (max_box < 1 || max_box > 4) throw std::invalid_argument("max_box must be in 1..4");
  Stopwatch clock;
  TheoremReport rep;
  rep.theorem = "no-deal-without-interior";
  rep.params = {{"max_box", max_box}, {"max_area_halves", 4}};
  const DealSearch s = search_deals(4, max_box);
  for (const DealInstance& d : s.found)
    if (d.interior == 0)
      rep.violations.push_back({"no double-dealing move", "found", instance_json(d, max_box)});
  rep.checked = s.positions;
  rep.details = {{"regions", s.shapes}, {"deals_with_interior_points", s.found.size() - rep.violations.size()},
                 {"scope", "regions of area <= 2 within bounding box " + std::to_string(max_box)}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

TheoremReport verify_single_turn_claims(std::uint64_t seed) {
  Stopwatch clock;
  TheoremReport rep;
  rep.theorem = "single-turn-claims";
  rep.params = {{"seed", seed}, {"random_regions", 200}};
  json fixtures = json::array();
  for (const std::string& name : fixture_names()) {
    const Fixture f = load_fixture(name);
    const Region r = Region::from_fixture(f);
    if (!r.closed() || !r.interior_points().empty() || r.unclaimed_area() == HalfArea{}) continue;
    ++rep.checked;
    fixtures.push_back(name);
    if (!claims_everything(r, claim_all_no_interior(r)))
      rep.violations.push_back({"claimed in one turn", "not claimed", fixture_json(f)});
  }
  std::mt19937_64 rng(seed);
  int made = 0;
  while (made < 200) {
    const LatticeCycle c = random_simple_cycle(rng, 5, 8);
    if (!lattice_census(c).interior.empty()) continue;
    const Variant v = made % 2 ? Variant::Polygons : Variant::Triangles;
    const Fixture f = outline_fixture("random", c, v, 5);
    const Region r = Region::from_fixture(f);
    // A bare unit triangle would have been claimed when it closed.
    if (!r.has_move()) continue;
    ++made;
    ++rep.checked;
    std::vector<Segment> seq;
    try {
      seq = claim_all_no_interior(r);
    } catch (const RegionError& e) {
      rep.violations.push_back({"claimed in one turn", e.what(), fixture_json(f)});
      continue;
    }
    if (!claims_everything(r, seq)) {
      Fixture w = f;
      w.moves = seq;
      rep.violations.push_back({"claimed in one turn", "sequence fails", fixture_json(w)});
    }
  }
  for (const char* name : {"fig11M", "fig11R"}) {
    const Fixture f = load_fixture(name);
    const Region r = Region::from_fixture(f);
    ++rep.checked;
    const auto seq = single_turn_claim(r);
    if (!seq || !claims_everything(r, *seq))
      rep.violations.push_back({"claimed in one turn", "no one-turn claim", fixture_json(f)});
  }
  {
    const Fixture f = load_fixture("fig12");
    ++rep.checked;
    if (const auto seq = single_turn_claim(Region::from_fixture(f))) {
      Fixture w = f;
      w.moves = *seq;
      rep.violations.push_back({"no one-turn claim", "claimed by " + moves_json(*seq).dump(), fixture_json(w)});
    }
  }
  rep.details = {{"zero_interior_fixtures", fixtures}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

TheoremReport verify_deal_negatives() {
  Stopwatch clock;
  TheoremReport rep;
  rep.theorem = "deal-negatives";
  const Fixture f15 = load_fixture("fig15");
  const GameState g15 = fixture_state(f15);
  rep.checked += g15.legal_moves().size();
  for (const Segment& s : double_dealing_moves(g15)) {
    Fixture w = f15;
    w.moves = {s};
    rep.violations.push_back({"not double-dealing", "double-dealing", fixture_json(w)});
  }
  const Fixture f16 = load_fixture("fig16");
  ++rep.checked;
  if (is_double_dealing(fixture_state(f16), Segment({1, 2}, {1, 3}))) {
    Fixture w = f16;
    w.moves = {Segment({1, 2}, {1, 3})};
    rep.violations.push_back({"not double-dealing", "double-dealing", fixture_json(w)});
  }
  rep.elapsed_ms = clock.ms();
  return rep;
}

TheoremReport verify_doublecross_necessity(int games, BoardSpec board, std::uint64_t seed) {
  Stopwatch clock;
  TheoremReport rep;
  rep.theorem = "doublecross-necessity";
  rep.params = {{"games", games}, {"board", board_json(board)}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  std::uint64_t doublecrosses = 0, avoidable = 0;
  std::map<std::string, std::uint64_t> kinds;
  for (int g = 0; g < games; ++g) {
    GameState st = GameState::new_game(board, Variant::Polygons);
    while (st.has_legal_move()) {
      const auto legal = st.legal_moves();
      const Segment m = legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)];
      const std::size_t idx = static_cast<std::size_t>(st.geometry().index_of(m));
      if (st.claims_if(idx).size() == 2) {
        ++doublecrosses;
        // The region the move is played in: the unclaimed face containing it.
        std::optional<Region> region;
        for (const Face& f : st.faces()) {
          if (f.owner) continue;
          try {
            Region r = Region::from_face(st, f);
            if (r.domain().test(idx)) region = std::move(r);
          } catch (const RegionError&) {
            // the unbounded face
          }
        }
        bool forced = region.has_value();
        if (region)
          region->move_mask().for_each([&](std::size_t i) {
            const auto c = st.claims_if(i);
            if (!c.empty() && c.size() != 2) forced = false;
          });
        if (!forced) {
          ++avoidable;
        } else {
          ++rep.checked;
          const EyeKind k = classify_eye(*region).kind;
          ++kinds[to_string(k)];
          if (k != EyeKind::HangingEye && k != EyeKind::SplitHangingEye) {
            json w = record_json(st);
            w["next_move"] = {{"from", point_json(m.a())}, {"to", point_json(m.b())}};
            w["region"] = cycle_json(region->outer());
            rep.violations.push_back({"hanging or split hanging eye", to_string(k), w});
          }
        }
      }
      st.play(m);
    }
  }
  json k = json::object();
  for (const auto& [name, n] : kinds) k[name] = n;
  rep.details = {{"doublecrosses", doublecrosses}, {"not_forced", avoidable}, {"forced_by_region_kind", k}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

TheoremReport merged(const std::string& id, const std::vector<TheoremReport>& parts) {
  TheoremReport rep;
  rep.theorem = id;
  rep.params = {{"runs", json::array()}};
  for (const TheoremReport& p : parts) {
    rep.params["runs"].push_back(p.params);
    rep.checked += p.checked;
    rep.violations.insert(rep.violations.end(), p.violations.begin(), p.violations.end());
    rep.elapsed_ms += p.elapsed_ms;
    if (!p.details.empty()) rep.details["runs"].push_back(p.details);
  }
  return rep;
}

}  // namespace

std::vector<std::string> theorem_ids() {
  return {"turn-identity-triangles", "turn-identity-polygons", "nested-diamond", "convex-ers-5",
          "convex-ers-6", "eye-theorems", "min-double-deal", "no-deal-without-interior",
          "single-turn-claims", "deal-negatives", "doublecross-necessity"};
}

TheoremReport run_theorem(const std::string& id, std::uint64_t seed) {
  if (id == "turn-identity-triangles" || id == "turn-identity-polygons") {
    const Variant v = id == "turn-identity-triangles" ? Variant::Triangles : Variant::Polygons;
    std::vector<TheoremReport> parts;
    for (BoardSpec b : {BoardSpec{2, 2}, BoardSpec{2, 3}, BoardSpec{3, 3}})
      parts.push_back(verify_turn_identity(v, 500, b, seed));
    return merged(id, parts);
  }
  if (id == "nested-diamond") return verify_nested_diamond(3);
  if (id == "convex-ers-5") return enumerate_convex_ers(5, 8);
  if (id == "convex-ers-6") return enumerate_convex_ers(6, 8);
  if (id == "eye-theorems") return verify_eye_theorems(6, 4);
  if (id == "min-double-deal") return verify_min_double_deal(4);
  if (id == "no-deal-without-interior") return verify_no_deal_without_interior(4);
  if (id == "single-turn-claims") return verify_single_turn_claims(seed);
  if (id == "deal-negatives") return verify_deal_negatives();
  if (id == "doublecross-necessity") {
    std::vector<TheoremReport> parts;
    for (BoardSpec b : {BoardSpec{3, 3}, BoardSpec{4, 4}, BoardSpec{5, 4}})
      parts.push_back(verify_doublecross_necessity(1000, b, seed));
    return merged(id, parts);
  }
  throw std::invalid_argument("unknown theorem: " + id);
}

}  // namespace dnp
