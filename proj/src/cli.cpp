#include "dnp/cli.hpp"

#include <boost/asio/io_context.hpp>
#include <boost/asio/signal_set.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "dnp/server.hpp"
#include "dnp/verify.hpp"

namespace dnp {

namespace {

constexpr std::uint64_t kDefaultBudget = 200'000;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Variant variant_arg(const std::string& s) {
  try {
    return parse_variant(s);
  } catch (const std::exception&) {
    throw UsageError("variant must be 'triangles' or 'polygons', got '" + s + "'");
  }
}

Seat seat_arg(const std::string& s) {
  try {
    return parse_seat(s);
  } catch (const std::exception&) {
    std::string names = "human";
    for (StrategyId id : all_strategies()) names += ", " + to_string(id);
    throw UsageError("unknown player '" + s + "' (expected one of: " + names + ")");
  }
}

BoardSpec board_arg(int w, int h) {
  if (w < 2 || h < 2 || w > kMaxBoardSide || h > kMaxBoardSide)
    throw UsageError("board sides must be between 2 and " + std::to_string(kMaxBoardSide));
  return {w, h};
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::optional<Segment> parse_move_text(const std::string& line) {
  static const std::regex re(R"(\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*-\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*)");
  std::smatch m;
  if (!std::regex_match(line, m, re)) return std::nullopt;
  const Point a{std::stoi(m[1]), std::stoi(m[2])}, b{std::stoi(m[3]), std::stoi(m[4])};
  if (a == b) return std::nullopt;
  return Segment(a, b);
}

std::string scores_text(const GameState& st) {
  const Scores s = st.scores();
  return "P1 " + to_string(s.first) + " : P2 " + to_string(s.second);
}

// ---------------------------------------------------------------------------

struct PlayArgs {
  int width = 4, height = 4;
  std::string variant = "triangles", p1 = "human", p2 = "greedy", record;
  std::uint64_t seed = 0, budget = kDefaultBudget;
};

int cmd_play(const PlayArgs& a, std::istream& in, std::ostream& out) {
  GameState st = GameState::new_game(board_arg(a.width, a.height), variant_arg(a.variant));
  const Seat seats[2] = {seat_arg(a.p1), seat_arg(a.p2)};
  bool quit = false;
  while (st.has_legal_move() && !quit) {
    const Player p = st.to_move();
    const Seat& seat = seats[p == Player::First ? 0 : 1];
    out << render_board(st) << scores_text(st) << "\n";
    Segment m({0, 0}, {0, 1});
    if (seat.human()) {
      out << "P" << player_number(p) << " move (x1,y1-x2,y2, or 'quit')> " << std::flush;
      std::string line;
      if (!std::getline(in, line) || line == "quit" || line == "q") {
        quit = true;
        break;
      }
      const auto parsed = parse_move_text(line);
      if (!parsed) {
        out << "could not read a move from '" << line << "'\n";
        continue;
      }
      if (const auto reason = st.check_move(*parsed)) {
        out << "rejected: " << to_string(*reason) << "\n";
        continue;
      }
      m = *parsed;
    } else {
      StrategyOptions opt;
      opt.seed = a.seed + st.segments().size();
      opt.solver_budget = a.budget;
      m = choose_move(*seat.strategy, st, opt);
    }
    const MoveOutcome o = st.play(m);
    out << "P" << player_number(p) << " plays " << to_string(m);
    if (!o.claimed.empty()) {
      HalfArea gained;
      for (const Claim& c : o.claimed) gained = gained + c.area;
      out << ", claims " << to_string(gained) << (o.doublecross ? " (doublecross)" : "") << ", moves again";
    }
    out << "\n";
  }
  out << render_board(st) << scores_text(st) << "\n";
  if (!quit) {
    const Scores s = st.scores();
    out << (s.first == s.second ? std::string("draw")
                                : std::string("player ") + (s.second < s.first ? "1" : "2") + " wins")
        << "\n";
  }
  if (!a.record.empty()) write_text(a.record, save_record(st), out);
  return quit ? 1 : 0;
}

struct SimulateArgs {
  int games = 100, width = 3, height = 3;
  std::string variant = "triangles", p1 = "random", p2 = "random", out;
  std::uint64_t seed = 1, budget = kDefaultBudget;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const BoardSpec board = board_arg(a.width, a.height);
  const Variant v = variant_arg(a.variant);
  const Seat seats[2] = {seat_arg(a.p1), seat_arg(a.p2)};
  if (seats[0].human() || seats[1].human()) throw UsageError("simulate needs two strategies, not 'human'");
  if (a.games < 1) throw UsageError("--games must be positive");
  std::mt19937_64 rng(a.seed);
  int p1 = 0, p2 = 0, draws = 0;
  std::int64_t margin = 0;
  for (int g = 0; g < a.games; ++g) {
    const std::uint64_t game_seed = rng();
    GameState st = GameState::new_game(board, v);
    while (st.has_legal_move()) {
      StrategyOptions opt;
      opt.seed = game_seed + st.segments().size();
      opt.solver_budget = a.budget;
      st.play(choose_move(*seats[st.to_move() == Player::First ? 0 : 1].strategy, st, opt));
    }
    const Scores s = st.scores();
    const std::int64_t d = s.first.halves - s.second.halves;
    margin += d;
    (d > 0 ? p1 : d < 0 ? p2 : draws) += 1;
  }
  const json stats = {{"games", a.games},
                      {"p1_wins", p1},
                      {"p2_wins", p2},
                      {"draws", draws},
                      {"mean_margin_halves", static_cast<double>(margin) / a.games}};
  write_text(a.out, stats.dump(2) + "\n", out);
  return 0;
}

struct SolveArgs {
  int width = 2, height = 2;
  std::string variant = "triangles";
  std::uint64_t budget = 50'000'000;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const GameState st = GameState::new_game(board_arg(a.width, a.height), variant_arg(a.variant));
  const SolveResult r = solve(st, a.budget);
  json pv = json::array();
  for (const Segment& s : r.principal_variation) pv.push_back(to_string(s));
  const json j = {{"board", {{"width", a.width}, {"height", a.height}}},
                  {"variant", a.variant},
                  {"complete", r.complete},
                  {"value_halves", r.value},
                  {"nodes", r.nodes_visited},
                  {"principal_variation", pv}};
  out << j.dump(2) << "\n";
  return r.complete ? 0 : 2;
}

struct VerifyArgs {
  std::string theorem, out, variant;
  std::optional<int> games, width, height, max_box, n_max, boundary_points;
  std::optional<std::uint64_t> seed, iris_limit;
};

TheoremReport run_verify(const VerifyArgs& a) {
  const std::uint64_t seed = a.seed.value_or(1);
  const bool custom = a.games || a.width || a.height || a.max_box || a.n_max || a.boundary_points ||
                      a.iris_limit || !a.variant.empty();
  std::string id = a.theorem;
  if (id == "turn-identity") {
    if (a.variant.empty()) throw UsageError("turn-identity needs --variant");
    id += "-" + a.variant;
  }
  if (id == "convex-ers" && !a.boundary_points) throw UsageError("convex-ers needs --boundary-points");
  const auto ids = theorem_ids();
  if (id != "convex-ers" && std::find(ids.begin(), ids.end(), id) == ids.end())
    throw UsageError("unknown theorem '" + a.theorem + "'");
  if (!custom) return run_theorem(id, seed);
  if (a.max_box && (*a.max_box < 1 || *a.max_box > 8)) throw UsageError("--max-box must be in 1..8");

  const BoardSpec board = board_arg(a.width.value_or(3), a.height.value_or(3));
  if (id == "turn-identity-triangles" || id == "turn-identity-polygons") {
    TheoremReport r = verify_turn_identity(variant_arg(id.substr(id.rfind('-') + 1)), a.games.value_or(500), board, seed);
    r.theorem = id;
    return r;
  }
  if (id == "nested-diamond") return verify_nested_diamond(a.n_max.value_or(3));
  if (id.rfind("convex-ers", 0) == 0) {
    const int k = a.boundary_points.value_or(id == "convex-ers-6" ? 6 : 5);
    return enumerate_convex_ers(k, a.max_box.value_or(8));
  }
  if (id == "eye-theorems") return verify_eye_theorems(a.max_box.value_or(6), a.iris_limit.value_or(4));
  if (id == "min-double-deal") return verify_min_double_deal(a.max_box.value_or(4));
  if (id == "no-deal-without-interior") return verify_no_deal_without_interior(a.max_box.value_or(4));
  if (id == "single-turn-claims") return verify_single_turn_claims(seed);
  if (id == "deal-negatives") return verify_deal_negatives();
  if (id == "doublecross-necessity") return verify_doublecross_necessity(a.games.value_or(1000), board, seed);
  throw UsageError("unknown theorem '" + a.theorem + "'");
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  TheoremReport r;
  try {
    r = run_verify(a);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_text(a.out, r.to_json().dump(2) + "\n", out);
  err << (r.pass() ? "PASS " : "FAIL ") << r.theorem << ": checked " << r.checked << ", "
      << r.violations.size() << " violations\n";
  return r.pass() ? 0 : 1;
}

struct EnumerateArgs {
  int boundary_points = 5, max_box = 8;
  std::string out;
};

int cmd_enumerate_ers(const EnumerateArgs& a, std::ostream& out) {
  if (a.boundary_points < 3) throw UsageError("--boundary-points must be at least 3");
  if (a.max_box < 1 || a.max_box > 8) throw UsageError("--max-box must be in 1..8");
  const TheoremReport r = enumerate_convex_ers(a.boundary_points, a.max_box);
  const json& found = r.details.at("found");
  std::ostringstream text;
  text << found.size() << " shapes (convex, " << a.boundary_points << " boundary points, verified within bounding box "
       << a.max_box << ", " << r.details.at("shapes").get<std::size_t>() << " convex shapes examined)\n";
  for (const json& c : found) text << c.dump() << "\n";
  if (!a.out.empty()) write_text(a.out, r.to_json().dump(2) + "\n", out);
  out << text.str();
  return r.pass() ? 0 : 1;
}

struct ServeArgs {
  std::string address = "0.0.0.0";
  int port = 8080, threads = 2;
};

int cmd_serve(const ServeArgs& a, std::ostream& out) {
  if (a.port < 0 || a.port > 65535) throw UsageError("--port must be in 0..65535");
  SessionManager sessions;
  Server server(sessions);
  const unsigned short port = server.start(a.address, static_cast<unsigned short>(a.port), a.threads);
  out << "listening on " << a.address << ":" << port << std::endl;
  boost::asio::io_context ioc;
  boost::asio::signal_set signals(ioc, SIGINT, SIGTERM);
  signals.async_wait([&](const boost::system::error_code&, int) { ioc.stop(); });
  ioc.run();
  server.stop();
  sessions.shutdown();
  out << "stopped" << std::endl;
  return 0;
}

}  // namespace

std::string render_board(const GameState& st) {
  const BoardSpec b = st.board();
  const int cols = 2 * b.width - 1, rows = 2 * b.height - 1;
  std::vector<std::string> grid(rows, std::string(cols, ' '));
  auto at = [&](int x2, int y2) -> char& { return grid[rows - 1 - y2][x2]; };
  for (int y = 0; y < b.height; ++y)
    for (int x = 0; x < b.width; ++x) at(2 * x, 2 * y) = '.';
  for (int y = 0; y + 1 < b.height; ++y)
    for (int x = 0; x + 1 < b.width; ++x)
      for (const Claim& c : st.claims())
        if (locate_doubled(2 * x + 1, 2 * y + 1, c.outer.vertices()) == Location::Inside)
          at(2 * x + 1, 2 * y + 1) = c.owner == Player::First ? '1' : '2';
  std::vector<Segment> other;
  for (const DrawnSegment& d : st.segments()) {
    const Segment& s = d.segment;
    const int dx = s.b().x - s.a().x, dy = s.b().y - s.a().y;
    const int mx = s.a().x + s.b().x, my = s.a().y + s.b().y;
    if (std::abs(dx) + std::abs(dy) == 1)
      at(mx, my) = dx ? '-' : '|';
    else if (std::abs(dx) == 1 && std::abs(dy) == 1)
      at(mx, my) = dx * dy > 0 ? '/' : '\\';
    else
      other.push_back(s);
  }
  std::ostringstream os;
  for (int r = 0; r < rows; ++r) {
    const int y = b.height - 1 - r / 2;
    os << (r % 2 ? "   " : (y < 10 ? " " : "") + std::to_string(y) + " ") << grid[r] << "\n";
  }
  os << "   ";
  for (int x = 0; x < b.width; ++x) os << (x % 10) << (x + 1 < b.width ? " " : "");
  os << "\n";
  if (!other.empty()) {
    os << "longer segments:";
    for (const Segment& s : other) os << " " << to_string(s);
    os << "\n";
  }
  for (const Claim& c : st.claims()) {
    os << "P" << player_number(c.owner) << " owns " << to_string(c.area) << ":";
    for (const Point& q : c.outer.vertices()) os << " " << to_string(q);
    os << "\n";
  }
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dots-and-Triangles and Dots-and-Polygons: play, analyse and verify", "dnp"};
  app.require_subcommand(1);

  PlayArgs play;
  auto* p = app.add_subcommand("play", "Play in the terminal; moves are typed as x1,y1-x2,y2");
  p->add_option("--width", play.width, "dot columns")->capture_default_str();
  p->add_option("--height", play.height, "dot rows")->capture_default_str();
  p->add_option("--variant", play.variant, "triangles or polygons")->capture_default_str();
  p->add_option("--p1", play.p1, "human or a strategy")->capture_default_str();
  p->add_option("--p2", play.p2, "human or a strategy")->capture_default_str();
  p->add_option("--record", play.record, "write the game record here");
  p->add_option("--seed", play.seed, "seed for the AI seats")->capture_default_str();
  p->add_option("--budget", play.budget, "node budget for the exact strategy")->capture_default_str();

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Play strategies against each other and report win statistics");
  s->add_option("--games", sim.games)->capture_default_str();
  s->add_option("--p1", sim.p1)->capture_default_str();
  s->add_option("--p2", sim.p2)->capture_default_str();
  s->add_option("--width", sim.width)->capture_default_str();
  s->add_option("--height", sim.height)->capture_default_str();
  s->add_option("--variant", sim.variant)->capture_default_str();
  s->add_option("--seed", sim.seed)->capture_default_str();
  s->add_option("--budget", sim.budget, "node budget for the exact strategy")->capture_default_str();
  s->add_option("--out", sim.out, "stats JSON file (default: stdout)");

  SolveArgs sol;
  auto* so = app.add_subcommand("solve", "Exact value of the empty board for the first player, in halves");
  so->add_option("--width", sol.width)->capture_default_str();
  so->add_option("--height", sol.height)->capture_default_str();
  so->add_option("--variant", sol.variant)->capture_default_str();
  so->add_option("--budget", sol.budget, "node budget")->capture_default_str();

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run a bounded theorem check and write its JSON report");
  v->add_option("theorem", ver.theorem, "theorem id (see README), or turn-identity with --variant")->required();
  v->add_option("--variant", ver.variant);
  v->add_option("--games", ver.games);
  v->add_option("--width", ver.width);
  v->add_option("--height", ver.height);
  v->add_option("--seed", ver.seed);
  v->add_option("--max-box", ver.max_box);
  v->add_option("--n-max", ver.n_max);
  v->add_option("--boundary-points", ver.boundary_points);
  v->add_option("--iris-limit", ver.iris_limit, "expanded irises per outline, 0 for all");
  v->add_option("--out", ver.out, "report file (default: stdout)");

  EnumerateArgs en;
  auto* e = app.add_subcommand("enumerate", "Enumerate shapes");
  e->require_subcommand(1);
  auto* ers = e->add_subcommand("ers", "Convex extremely reduced shapes");
  ers->add_option("--boundary-points", en.boundary_points)->required();
  ers->add_option("--max-box", en.max_box)->capture_default_str();
  ers->add_option("--out", en.out, "also write the JSON report here");

  ServeArgs srv;
  auto* sv = app.add_subcommand("serve", "Serve the HTTP and WebSocket API");
  sv->add_option("--port", srv.port)->capture_default_str();
  sv->add_option("--address", srv.address)->capture_default_str();
  sv->add_option("--threads", srv.threads)->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*p) return cmd_play(play, in, out);
    if (*s) return cmd_simulate(sim, out);
    if (*so) return cmd_solve(sol, out);
    if (*v) return cmd_verify(ver, out, err);
    if (*ers) return cmd_enumerate_ers(en, out);
    if (*sv) return cmd_serve(srv, out);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n" << "run with --help for usage\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace dnp
