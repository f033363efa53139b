#include "dnp/strategy.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "dnp/shapes.hpp"

namespace dnp {

std::string to_string(StrategyId id) {
  switch (id) {
    case StrategyId::Random: return "random";
    case StrategyId::GreedyChild: return "greedy";
    case StrategyId::DoubleDealer: return "double-dealer";
    case StrategyId::NestedDiamondSecond: return "nested-diamond";
    case StrategyId::Exact: return "exact";
  }
  return "?";
}

StrategyId parse_strategy(const std::string& s) {
  for (StrategyId id : all_strategies())
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

std::vector<StrategyId> all_strategies() {
  return {StrategyId::Random, StrategyId::GreedyChild, StrategyId::DoubleDealer,
          StrategyId::NestedDiamondSecond, StrategyId::Exact};
}

std::size_t PositionKeyHash::operator()(const PositionKey& k) const {
  std::uint64_t h = k.claims * 0x9e3779b97f4a7c15ull;
  for (auto w : k.words) h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h ^ (h >> 29));
}

PositionKey position_key(const GameState& st) {
  PositionKey k{st.drawn().words(), 0};
  // Triangle claims follow from the drawn set; polygon claims may not.
  if (st.variant() == Variant::Polygons) {
    std::hash<Point> hp;
    for (const Claim& c : st.claims()) {
      std::size_t h = c.outer.size();
      for (const Point& p : c.outer.vertices()) h = h * 1000003u ^ hp(p);
      k.claims += h;  // order-independent
    }
  }
  return k;
}

SegmentMask moves_in(const GameState& st, const std::optional<SegmentMask>& domain) {
  SegmentMask m = st.legal_mask();
  if (domain) m &= *domain;
  return m;
}

namespace {

HalfArea gain_of(const std::vector<Claim>& claims) {
  HalfArea a;
  for (const Claim& c : claims) a += c.area;
  return a;
}

class OneTurnSolver {
 public:
  explicit OneTurnSolver(std::optional<SegmentMask> domain) : domain_(std::move(domain)) {}

  std::int64_t best(const GameState& st) {
    PositionKey key = position_key(st);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::int64_t best = 0;
    const bool triangles = st.variant() == Variant::Triangles;
    claiming(st).for_each([&](std::size_t i) {
      const std::int64_t g = st.gain_if(i).halves;
      if (g == 0) return;
      if (triangles) {
        // The child's key is the parent's plus one bit; look it up before
        // paying for a state copy.
        key.words[i >> 6] |= std::uint64_t{1} << (i & 63);
        auto it = memo_.find(key);
        key.words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
        if (it != memo_.end()) {
          best = std::max(best, g + it->second);
          return;
        }
      }
      GameState next = st;
      next.play_index(i);
      best = std::max(best, g + this->best(next));
    });
    memo_.emplace(std::move(key), best);
    return best;
  }

  OneTurn run(const GameState& root) {
    OneTurn out{HalfArea{best(root)}, {}};
    GameState st = root;
    for (std::int64_t left = out.gain.halves; left > 0;) {
      bool stepped = false;
      for (std::size_t i : claiming(st).indices()) {
        const std::int64_t g = st.gain_if(i).halves;
        GameState next = st;
        next.play_index(i);
        if (g + best(next) != left) continue;
        out.moves.push_back(st.geometry().candidate(i));
        left -= g;
        st = std::move(next);
        stepped = true;
        break;
      }
      if (!stepped) throw std::logic_error("one-turn reconstruction failed");
    }
    return out;
  }

 private:
  // Claiming moves to branch on. A triangle claim that blocks no move still
  // open to this search can go first in any optimal sequence, so when one
  // exists it is the only branch.
  SegmentMask claiming(const GameState& st) const {
    SegmentMask m = st.claiming_mask();
    if (domain_) m &= *domain_;
    if (st.variant() != Variant::Triangles) return m;
    SegmentMask open = st.legal_mask();
    if (domain_) open &= *domain_;
    std::optional<std::size_t> safe;
    m.for_each([&](std::size_t i) {
      if (!safe && !st.geometry().conflicts(i).intersects(open)) safe = i;
    });
    if (!safe) return m;
    SegmentMask one = st.geometry().empty_mask();
    one.set(*safe);
    return one;
  }

  std::optional<SegmentMask> domain_;
  std::unordered_map<PositionKey, std::int64_t, PositionKeyHash> memo_;
};

bool has_claiming_move(const GameState& st, const SegmentMask& moves) {
  return st.claiming_mask().intersects(moves);
}

// Smallest unclaimed face whose moves include a claiming move, as a domain.
std::optional<SegmentMask> claimable_region(const GameState& st, const SegmentMask& moves) {
  std::optional<SegmentMask> best;
  HalfArea best_area;
  for (const Face& f : st.faces()) {
    if (f.owner) continue;
    SegmentMask dom = st.geometry().empty_mask();
    try {
      dom = Region::from_face(st, f).domain();
    } catch (const RegionError&) {
      continue;
    }
    dom &= moves;
    if (!has_claiming_move(st, dom)) continue;
    if (!best || f.area < best_area) {
      best = std::move(dom);
      best_area = f.area;
    }
  }
  return best;
}

// The least area the opponent can take after a non-claiming move by the
// player to move, and the lex-least move achieving it.
std::pair<std::optional<std::size_t>, HalfArea> cheapest_cede(const GameState& st,
                                                              const std::optional<SegmentMask>& domain) {
  std::optional<std::size_t> best;
  HalfArea best_cede;
  OneTurnSolver solver(domain);
  const SegmentMask claiming = st.claiming_mask();
  for (std::size_t i : moves_in(st, domain).indices()) {
    if (claiming.test(i)) continue;
    GameState next = st;
    next.play_index(i);
    const HalfArea cede{solver.best(next)};
    if (!best || cede < best_cede) {
      best = i;
      best_cede = cede;
      if (cede.halves == 0) break;
    }
  }
  return {best, best_cede};
}

Segment greedy_move(const GameState& st, const std::optional<SegmentMask>& domain) {
  const OneTurn take = best_one_turn(st, domain);
  if (!take.moves.empty()) return take.moves.front();
  const auto [move, cede] = cheapest_cede(st, domain);
  if (move) return st.geometry().candidate(*move);
  // Every remaining move claims; best_one_turn would have found one.
  throw std::logic_error("no move for greedy policy");
}

GameState after_all(GameState st, const std::vector<Segment>& seq) {
  for (const Segment& s : seq) st.play(s);
  return st;
}

Segment dealing_move(StrategyId id, const GameState& st, const std::optional<SegmentMask>& domain) {
  const SegmentMask moves = moves_in(st, domain);
  const OneTurn take = best_one_turn(st, domain);
  if (take.moves.empty()) return greedy_move(st, domain);

  const GameState taken = after_all(st, take.moves);
  const SegmentMask left = moves_in(taken, domain);
  // Nothing to keep control of: take everything.
  if (!left.any()) return take.moves.front();

  const auto region = claimable_region(st, moves);
  const auto plan = double_deal_plan(st, region ? *region : moves);
  if (!plan) return take.moves.front();
  if (id == StrategyId::DoubleDealer) {
    // Keep control only if moving next would cost more than the deal.
    const HalfArea cost = cheapest_cede(taken, domain).second;
    if (!(plan->ceded < cost)) return take.moves.front();
  }
  return plan->claims.empty() ? plan->deal : plan->claims.front();
}

}  // namespace

OneTurn best_one_turn(const GameState& st, const std::optional<SegmentMask>& domain) {
  OneTurnSolver solver(domain);
  return solver.run(st);
}

namespace {

// Candidates of `mask` inside one of the cycles.
SegmentMask segments_within(const GameState& st, const std::vector<Claim>& cycles,
                            const SegmentMask& mask) {
  SegmentMask out = st.geometry().empty_mask();
  for (const Claim& c : cycles) {
    const auto v = c.outer.vertices();
    int x0 = v[0].x, x1 = x0, y0 = v[0].y, y1 = y0;
    for (const Point& p : v) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    mask.for_each([&](std::size_t i) {
      const Segment& s = st.geometry().candidate(i);
      if (s.a().x < x0 || s.b().x > x1 || std::min(s.a().y, s.b().y) < y0 ||
          std::max(s.a().y, s.b().y) > y1)
        return;
      if (segment_in_polygon(s, v)) out.set(i);
    });
  }
  return out;
}

// With a domain, both sides are confined to it.
struct DealContext {
  explicit DealContext(std::optional<SegmentMask> d = {}) : domain(d), full(std::move(d)) {}

  std::optional<SegmentMask> domain;
  OneTurnSolver full;
  std::unordered_map<SegmentMask, OneTurnSolver, SegmentMaskHash> by_region;

  OneTurnSolver& region(const SegmentMask& m) {
    auto it = by_region.find(m);
    if (it == by_region.end()) it = by_region.emplace(m, OneTurnSolver(m)).first;
    return it->second;
  }
};

DoubleDeal double_dealing_at(const GameState& st, std::size_t idx, DealContext& ctx) {
  OneTurnSolver& full = ctx.full;
  if (st.gain_if(idx).halves > 0) return {};
  GameState after = st;
  after.play_index(idx);
  if (full.best(after) == 0) return {};
  const OneTurn reply = full.run(after);

  // The region R taken by the reply.
  GameState end = after;
  std::vector<Claim> taken;
  for (const Segment& m : reply.moves) {
    auto out = end.play(m);
    taken.insert(taken.end(), out.claimed.begin(), out.claimed.end());
  }
  SegmentMask self = st.geometry().empty_mask();
  self.set(idx);
  if (!segments_within(st, taken, self).any()) return {};
  // The opponent must move again without claiming.
  if (!end.has_legal_move()) return {};
  const SegmentMask region = segments_within(st, taken, moves_in(st, ctx.domain));
  if (ctx.region(region).best(st) != reply.gain.halves) return {};
  return {true, reply.gain};
}

}  // namespace

DoubleDeal double_dealing(const GameState& st, const Segment& s) {
  const int idx = st.geometry().index_of(s);
  if (idx < 0 || !st.legal_mask().test(static_cast<std::size_t>(idx))) return {};
  DealContext ctx;
  return double_dealing_at(st, static_cast<std::size_t>(idx), ctx);
}

bool is_double_dealing(const GameState& st, const Segment& s) { return double_dealing(st, s).dealing; }

std::vector<Segment> double_dealing_moves(const GameState& st, const std::optional<SegmentMask>& domain) {
  std::vector<Segment> out;
  DealContext ctx(domain);
  for (std::size_t i : moves_in(st, domain).indices())
    if (double_dealing_at(st, i, ctx).dealing) out.push_back(st.geometry().candidate(i));
  return out;
}

std::optional<DealPlan> double_deal_plan(const GameState& root, const SegmentMask& domain) {
  std::optional<DealPlan> best;
  std::unordered_set<PositionKey, PositionKeyHash> seen;
  std::vector<Segment> prefix;
  DealContext ctx(domain);

  auto visit = [&](auto&& self, const GameState& st) -> void {
    if (!seen.insert(position_key(st)).second) return;
    const SegmentMask moves = moves_in(st, domain);
    const SegmentMask claiming = st.claiming_mask() & moves;
    for (std::size_t i : moves.indices()) {
      if (claiming.test(i)) continue;
      const DoubleDeal d = double_dealing_at(st, i, ctx);
      if (d.dealing && (!best || d.ceded < best->ceded))
        best = DealPlan{prefix, st.geometry().candidate(i), d.ceded};
    }
    for (std::size_t i : claiming.indices()) {
      GameState next = st;
      next.play_index(i);
      prefix.push_back(st.geometry().candidate(i));
      self(self, next);
      prefix.pop_back();
    }
  };
  visit(visit, root);
  return best;
}

Segment choose_move(StrategyId id, const GameState& st, const StrategyOptions& opt) {
  const SegmentMask moves = moves_in(st, opt.domain);
  if (!moves.any()) throw StrategyError("no legal move left");
  switch (id) {
    case StrategyId::Random: {
      const auto idx = moves.indices();
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
      return st.geometry().candidate(idx[pick(rng)]);
    }
    case StrategyId::GreedyChild:
      return greedy_move(st, opt.domain);
    case StrategyId::DoubleDealer:
    case StrategyId::NestedDiamondSecond:
      return dealing_move(id, st, opt.domain);
    case StrategyId::Exact: {
      const SolveResult r = solve(st, opt.solver_budget, opt.domain);
      if (r.complete && !r.principal_variation.empty()) return r.principal_variation.front();
      return greedy_move(st, opt.domain);
    }
  }
  throw StrategyError("unknown strategy");
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

class Solver {
 public:
  Solver(std::uint64_t budget, const std::optional<SegmentMask>& domain, SearchOrder order)
      : budget_(budget), domain_(domain), order_(order) {}

  std::int64_t search(const GameState& st, std::int64_t alpha, std::int64_t beta) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return 0;
    }
    const SegmentMask moves = moves_in(st, domain_);
    if (!moves.any()) return 0;

    PositionKey key = position_key(st);
    if (auto it = table_.find(key); it != table_.end()) {
      const Entry& e = it->second;
      if (e.bound == Bound::Exact) return e.value;
      if (e.bound == Bound::Lower) alpha = std::max(alpha, e.value);
      if (e.bound == Bound::Upper) beta = std::min(beta, e.value);
      if (alpha >= beta) return e.value;
    }

    const std::int64_t alpha0 = alpha;
    std::int64_t best = -kInf;
    for (std::size_t i : ordered(st, moves)) {
      const std::int64_t v = child_value(st, i, alpha, beta);
      if (aborted_) return 0;
      best = std::max(best, v);
      alpha = std::max(alpha, v);
      if (alpha >= beta) break;
    }
    const Bound b = best <= alpha0 ? Bound::Upper : best >= beta ? Bound::Lower : Bound::Exact;
    table_[std::move(key)] = Entry{best, b};
    return best;
  }

  // Value of playing candidate i, from the current mover's side.
  std::int64_t child_value(const GameState& st, std::size_t i, std::int64_t alpha, std::int64_t beta) {
    GameState next = st;
    const std::int64_t gain = st.gain_if(i).halves;
    next.play_index(i);
    if (gain > 0) return gain + search(next, alpha - gain, beta - gain);
    return -search(next, -beta, -alpha);
  }

  std::vector<std::size_t> ordered(const GameState& st, const SegmentMask& moves) const {
    std::vector<std::size_t> idx = moves.indices();
    if (order_ == SearchOrder::ClaimsFirstReversed) {
      const SegmentMask claiming = st.claiming_mask();
      std::reverse(idx.begin(), idx.end());
      std::stable_partition(idx.begin(), idx.end(),
                            [&](std::size_t i) { return claiming.test(i); });
    }
    return idx;
  }

  std::vector<Segment> principal_variation(GameState st, std::int64_t value) {
    std::vector<Segment> pv;
    while (!aborted_) {
      const SegmentMask moves = moves_in(st, domain_);
      if (!moves.any()) break;
      bool stepped = false;
      for (std::size_t i : ordered(st, moves)) {
        const std::int64_t v = child_value(st, i, -kInf, kInf);
        if (aborted_ || v != value) continue;
        const MoveOutcome out = st.play_index(i);
        pv.push_back(out.move);
        const std::int64_t gain = gain_of(out.claimed).halves;
        value = gain > 0 ? value - gain : -value;
        stepped = true;
        break;
      }
      if (!stepped) break;
    }
    return pv;
  }

  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

 private:
  enum class Bound { Exact, Lower, Upper };
  struct Entry {
    std::int64_t value;
    Bound bound;
  };

  std::uint64_t budget_;
  const std::optional<SegmentMask>& domain_;
  SearchOrder order_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::unordered_map<PositionKey, Entry, PositionKeyHash> table_;
};

}  // namespace

SolveResult solve(const GameState& st, std::uint64_t node_budget,
                  const std::optional<SegmentMask>& domain, SearchOrder order) {
  Solver solver(node_budget, domain, order);
  SolveResult r;
  r.value = solver.search(st, -kInf, kInf);
  if (!solver.aborted()) r.principal_variation = solver.principal_variation(st, r.value);
  r.nodes_visited = solver.nodes();
  r.complete = !solver.aborted();
  if (!r.complete) {
    r.value = 0;
    r.principal_variation.clear();
  }
  return r;
}

// ---------------------------------------------------------------------------

BoardSpec nested_diamond_board(const NestedDiamondSpec& spec) {
  return {spec.center.x + spec.n + 1, spec.center.y + spec.n + 1};
}

GameState nested_diamond_state(const NestedDiamondSpec& spec, Variant v, BoardSpec board) {
  const Point c = spec.center;
  if (spec.n < 1) throw std::invalid_argument("nested diamond needs n >= 1");
  if (!board.contains({c.x - spec.n, c.y - spec.n}) || !board.contains({c.x + spec.n, c.y + spec.n}))
    throw std::invalid_argument("nested diamond does not fit the board");
  std::vector<DrawnSegment> segs;
  for (int k = 1; k <= spec.n; ++k) {
    const Point q[4] = {{c.x, c.y - k}, {c.x + k, c.y}, {c.x, c.y + k}, {c.x - k, c.y}};
    for (int e = 0; e < 4; ++e) segs.push_back({Segment(q[e], q[(e + 1) % 4]), Player::First});
  }
  return GameState::from_position(board, v, segs, {}, Player::First);
}

SegmentMask nested_diamond_domain(const NestedDiamondSpec& spec, const GameState& st) {
  const Point c = spec.center;
  const int n = spec.n;
  const std::vector<Point> outer{{c.x, c.y - n}, {c.x + n, c.y}, {c.x, c.y + n}, {c.x - n, c.y}};
  SegmentMask m = st.geometry().empty_mask();
  for (std::size_t i = 0; i < st.geometry().candidate_count(); ++i)
    if (segment_in_polygon(st.geometry().candidate(i), outer)) m.set(i);
  return m;
}

PlayoutResult nested_diamond_playout(const NestedDiamondSpec& spec, Variant v) {
  GameState st = nested_diamond_state(spec, v, nested_diamond_board(spec));
  StrategyOptions opt;
  opt.domain = nested_diamond_domain(spec, st);
  PlayoutResult r;
  while (moves_in(st, opt.domain).any()) {
    const StrategyId id =
        st.to_move() == Player::First ? StrategyId::GreedyChild : StrategyId::NestedDiamondSecond;
    MoveOutcome out = st.play(choose_move(id, st, opt));
    const HalfArea g = gain_of(out.claimed);
    (out.player == Player::First ? r.first_area : r.second_area) += g;
    r.moves.push_back(std::move(out));
  }
  return r;
}

}  // namespace dnp
