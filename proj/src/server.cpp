#include "dnp/server.hpp"

#include <iomanip>
#include <random>
#include <sstream>

#include "dnp/shapes.hpp"

namespace dnp {

namespace {

// Node budget for the exact solver when it plays in a session; a reply has to
// come back within a request.
constexpr std::uint64_t kSessionSolverBudget = 200'000;

std::string new_session_id() {
  static std::mutex mu;
  static std::random_device rd;
  std::lock_guard lock(mu);
  std::ostringstream os;
  for (int i = 0; i < 4; ++i) os << std::hex << std::setw(8) << std::setfill('0') << rd();
  return os.str();
}

json scores_json(const GameState& st) {
  const Scores sc = st.scores();
  return {{"p1_halves", sc.first.halves}, {"p2_halves", sc.second.halves}};
}

json segment_json(const Segment& s) { return {{"from", point_json(s.a())}, {"to", point_json(s.b())}}; }

Point point_arg(const json& body, const char* key) {
  try {
    return point_from_json(body.at(key));
  } catch (const std::exception&) {
    throw ApiError(400, "bad-request", std::string("'") + key + "' must be [x, y]");
  }
}

}  // namespace

std::string to_string(const Seat& s) { return s.human() ? "human" : to_string(*s.strategy); }

Seat parse_seat(const std::string& s) {
  if (s == "human") return {};
  return {parse_strategy(s)};
}

Session::Session(std::string id, BoardSpec board, Variant v, Seat p1, Seat p2, std::uint64_t seed)
    : id_(std::move(id)), p1_(p1), p2_(p2), seed_(seed), state_(GameState::new_game(board, v)) {}

json Session::state() const {
  std::lock_guard lock(mu_);
  json j = state_json(state_);
  j["id"] = id_;
  j["seats"] = {{"p1", to_string(p1_)}, {"p2", to_string(p2_)}};
  j["seq"] = events_.size();
  return j;
}

json Session::legal() const {
  std::lock_guard lock(mu_);
  json out = json::array();
  for (const Segment& s : state_.legal_moves()) out.push_back(segment_json(s));
  return out;
}

json Session::record() const {
  std::lock_guard lock(mu_);
  return record_json(state_);
}

json Session::classify() const {
  GameState st = [&] {
    std::lock_guard lock(mu_);
    return state_;
  }();
  json out = json::array();
  for (const Face& f : st.faces()) {
    if (f.owner) continue;
    std::optional<Region> r;
    try {
      r = Region::from_face(st, f);
    } catch (const RegionError&) {
      continue;  // the unbounded face
    }
    const EyeClass eye = classify_eye(*r);
    out.push_back({{"region", cycle_json(r->outer())},
                   {"area_halves", r->unclaimed_area().halves},
                   {"reduction", to_string(classify_reduction(*r))},
                   {"eye", to_string(eye.kind)},
                   {"lazy", eye.lazy}});
  }
  return out;
}

std::vector<json> Session::events_since(std::uint64_t seq) const {
  std::lock_guard lock(mu_);
  if (seq >= events_.size()) return {};
  return {events_.begin() + static_cast<std::ptrdiff_t>(seq), events_.end()};
}

json Session::apply(const Segment& s) {
  const MoveOutcome out = state_.play(s);
  json claims = json::array();
  for (const Claim& c : out.claimed)
    claims.push_back({{"outer", cycle_json(c.outer)},
                      {"player", player_number(c.owner)},
                      {"area_halves", c.area.halves}});
  json ev = {{"seq", events_.size() + 1},
             {"move", {{"player", player_number(out.player)}, {"from", point_json(s.a())}, {"to", point_json(s.b())}}},
             {"claims", claims},
             {"extra_turn", out.extra_turn},
             {"doublecross", out.doublecross},
             {"scores", scores_json(state_)},
             {"to_move", player_number(state_.to_move())},
             {"game_over", out.game_over}};
  events_.push_back(ev);
  return ev;
}

std::vector<json> Session::run_ai_locked() {
  std::vector<json> batch;
  while (!stop_ && state_.has_legal_move()) {
    const Seat& s = seat(state_.to_move());
    if (s.human()) break;
    StrategyOptions opt;
    opt.seed = seed_ + events_.size();
    opt.solver_budget = kSessionSolverBudget;
    batch.push_back(apply(choose_move(*s.strategy, state_, opt)));
  }
  return batch;
}

std::vector<json> Session::run_ai() {
  // One turn per lock so readers see the game progress.
  std::vector<json> all;
  while (!stop_) {
    std::lock_guard lock(mu_);
    if (!state_.has_legal_move() || seat(state_.to_move()).human()) break;
    const Player mover = state_.to_move();
    std::vector<json> turn;
    StrategyOptions opt;
    opt.solver_budget = kSessionSolverBudget;
    while (state_.has_legal_move() && state_.to_move() == mover) {
      opt.seed = seed_ + events_.size();
      turn.push_back(apply(choose_move(*seat(mover).strategy, state_, opt)));
    }
    publish(turn);
    all.insert(all.end(), turn.begin(), turn.end());
  }
  return all;
}

json Session::post_move(const Point& from, const Point& to) {
  std::lock_guard lock(mu_);
  if (!state_.has_legal_move())
    throw ApiError(409, "not-your-turn", "the game is over");
  if (!seat(state_.to_move()).human())
    throw ApiError(409, "not-your-turn", "player " + std::to_string(player_number(state_.to_move())) +
                                             " is not a human seat");
  if (const auto reason = state_.check_move(from, to))
    throw ApiError(422, to_string(*reason), "illegal move " + to_string(from) + "-" + to_string(to));
  const Segment s(from, to);
  std::vector<json> batch{apply(s)};
  const json outcome = [&] {
    json o = batch.front();
    o.erase("seq");
    return o;
  }();
  for (json& e : run_ai_locked()) batch.push_back(std::move(e));
  publish(batch);
  json st = state_json(state_);
  st["id"] = id_;
  st["seats"] = {{"p1", to_string(p1_)}, {"p2", to_string(p2_)}};
  st["seq"] = events_.size();
  return {{"outcome", outcome}, {"state", st}, {"events", batch}};
}

void Session::publish(const std::vector<json>& batch) {
  if (batch.empty()) return;
  for (auto& [token, sink] : sinks_) sink(batch);
}

std::uint64_t Session::subscribe(EventSink sink, std::uint64_t since, std::vector<json>* backlog) {
  std::lock_guard lock(mu_);
  if (backlog && since < events_.size())
    backlog->assign(events_.begin() + static_cast<std::ptrdiff_t>(since), events_.end());
  const std::uint64_t token = next_sink_++;
  sinks_.emplace(token, std::move(sink));
  return token;
}

void Session::unsubscribe(std::uint64_t token) {
  std::lock_guard lock(mu_);
  sinks_.erase(token);
}

bool Session::replay_consistent() const {
  std::lock_guard lock(mu_);
  GameState st = GameState::new_game(state_.board(), state_.variant());
  for (const json& e : events_) {
    const json& m = e.at("move");
    if (m.at("player").get<int>() != player_number(st.to_move())) return false;
    st.play(Segment(point_from_json(m.at("from")), point_from_json(m.at("to"))));
  }
  return st == state_;
}

// ---------------------------------------------------------------------------

SessionManager::~SessionManager() { shutdown(); }

std::shared_ptr<Session> SessionManager::create(BoardSpec board, Variant v, Seat p1, Seat p2,
                                                std::uint64_t seed) {
  if (board.width < 2 || board.height < 2 || board.width > kMaxBoardSide || board.height > kMaxBoardSide)
    throw ApiError(400, "invalid-board",
                   "board sides must be between 2 and " + std::to_string(kMaxBoardSide) + " dots");
  auto s = std::make_shared<Session>(new_session_id(), board, v, p1, p2, seed);
  {
    std::lock_guard lock(mu_);
    sessions_.emplace(s->id(), s);
  }
  if (s->ai_only()) {
    std::lock_guard lock(mu_);
    workers_.emplace_back([s] { s->run_ai(); });
  } else {
    s->run_ai();
  }
  return s;
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ApiError(404, "no-such-game", "no game with id '" + id + "'");
  return it->second;
}

std::size_t SessionManager::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

void SessionManager::shutdown() {
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(mu_);
    for (auto& [id, s] : sessions_) s->stop();
    workers.swap(workers_);
  }
  for (std::thread& t : workers) t.join();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

json parse_body(const std::string& body) {
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw ApiError(400, "bad-request", "body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw ApiError(400, "bad-request", std::string("malformed JSON: ") + e.what());
  }
}

HttpResponse create_game(SessionManager& sessions, const std::string& body) {
  const json j = parse_body(body);
  BoardSpec board;
  Variant v;
  Seat p1, p2;
  std::uint64_t seed = 0;
  try {
    board = {j.at("board").at("width").get<int>(), j.at("board").at("height").get<int>()};
    v = parse_variant(j.at("variant").get<std::string>());
    if (j.contains("seats")) {
      p1 = parse_seat(j["seats"].value("p1", "human"));
      p2 = parse_seat(j["seats"].value("p2", "human"));
    }
    if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
  } catch (const ApiError&) {
    throw;
  } catch (const std::exception& e) {
    throw ApiError(400, "bad-request", e.what());
  }
  const auto s = sessions.create(board, v, p1, p2, seed);
  return {201, {{"id", s->id()}, {"state", s->state()}}};
}

}  // namespace

std::optional<std::pair<std::string, std::uint64_t>> parse_events_target(const std::string& target) {
  const auto q = target.find('?');
  const auto parts = split_path(target.substr(0, q));
  if (parts.size() != 3 || parts[0] != "games" || parts[2] != "events") return std::nullopt;
  std::uint64_t since = 0;
  if (q != std::string::npos) {
    const std::string query = target.substr(q + 1);
    const std::string key = "since=";
    const auto at = query.find(key);
    if (at != std::string::npos) {
      try {
        since = std::stoull(query.substr(at + key.size()));
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
  }
  return std::pair{parts[1], since};
}

HttpResponse handle_request(SessionManager& sessions, const std::string& method,
                            const std::string& target, const std::string& body) {
  try {
    const auto parts = split_path(target.substr(0, target.find('?')));
    auto allow = [&](const char* m) {
      if (method != m) throw ApiError(405, "method-not-allowed", method + " " + target);
    };
    if (parts.size() == 1 && parts[0] == "games") {
      allow("POST");
      return create_game(sessions, body);
    }
    if (parts.size() >= 2 && parts[0] == "games") {
      const auto s = sessions.find(parts[1]);
      if (parts.size() == 2) {
        allow("GET");
        return {200, s->state()};
      }
      if (parts.size() == 3) {
        const std::string& what = parts[2];
        if (what == "legal") {
          allow("GET");
          return {200, s->legal()};
        }
        if (what == "moves") {
          allow("POST");
          const json j = parse_body(body);
          return {200, s->post_move(point_arg(j, "from"), point_arg(j, "to"))};
        }
        if (what == "classify") {
          allow("GET");
          return {200, s->classify()};
        }
        if (what == "record") {
          allow("GET");
          HttpResponse r;
          r.raw = s->record().dump(2) + "\n";
          return r;
        }
        if (what == "events") throw ApiError(426, "upgrade-required", "connect with a WebSocket");
      }
    }
    throw ApiError(404, "not-found", "no route for " + target);
  } catch (const ApiError& e) {
    return {e.status(), e.body()};
  } catch (const std::exception& e) {
    return {500, {{"error", "internal"}, {"message", e.what()}}};
  }
}

}  // namespace dnp
