#pragma once

// Game sessions behind an HTTP + WebSocket front end. SessionManager and
// handle_request are transport-free; Server puts them on a socket.

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "dnp/record.hpp"
#include "dnp/strategy.hpp"

namespace dnp {

// A failed request: HTTP status plus a short error token for clients.
class ApiError : public std::runtime_error {
 public:
  ApiError(int status, std::string token, const std::string& message)
      : std::runtime_error(message), status_(status), token_(std::move(token)) {}
  int status() const { return status_; }
  const std::string& token() const { return token_; }
  json body() const { return {{"error", token_}, {"message", what()}}; }

 private:
  int status_;
  std::string token_;
};

struct Seat {
  std::optional<StrategyId> strategy;  // empty for a human
  bool human() const { return !strategy; }
};
std::string to_string(const Seat& s);
Seat parse_seat(const std::string& s);  // "human" or a strategy token

// Events are the JSON objects streamed on /games/{id}/events.
using EventSink = std::function<void(const std::vector<json>&)>;

class Session {
 public:
  Session(std::string id, BoardSpec board, Variant v, Seat p1, Seat p2, std::uint64_t seed);

  const std::string& id() const { return id_; }
  json state() const;
  json legal() const;
  json record() const;
  json classify() const;
  std::vector<json> events_since(std::uint64_t seq) const;

  // A human move and the AI replies it triggers. Returns {outcome, state,
  // events}. Throws ApiError.
  json post_move(const Point& from, const Point& to);
  // Lets AI seats move until a human is to move or the game ends. Returns the
  // new events.
  std::vector<json> run_ai();
  bool ai_only() const { return !p1_.human() && !p2_.human(); }

  // The sink receives each batch of new events, in order, under the session
  // lock. The returned token unsubscribes.
  std::uint64_t subscribe(EventSink sink, std::uint64_t since, std::vector<json>* backlog);
  void unsubscribe(std::uint64_t token);

  // Checks that replaying the event log on a fresh engine gives the state.
  bool replay_consistent() const;

  void stop() { stop_ = true; }

 private:
  json apply(const Segment& s);  // under lock
  std::vector<json> run_ai_locked();
  void publish(const std::vector<json>& batch);
  const Seat& seat(Player p) const { return p == Player::First ? p1_ : p2_; }

  std::string id_;
  Seat p1_, p2_;
  std::uint64_t seed_;
  mutable std::mutex mu_;
  GameState state_;
  std::vector<json> events_;
  std::map<std::uint64_t, EventSink> sinks_;
  std::uint64_t next_sink_ = 1;
  std::atomic<bool> stop_{false};
};

class SessionManager {
 public:
  SessionManager() = default;
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  // Throws ApiError(400) on bad parameters. Sessions with two AI seats play
  // out on a background thread.
  std::shared_ptr<Session> create(BoardSpec board, Variant v, Seat p1, Seat p2,
                                  std::uint64_t seed = 0);
  std::shared_ptr<Session> find(const std::string& id) const;  // throws ApiError(404)
  std::size_t size() const;
  // Stops background games and waits for their threads.
  void shutdown();

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::vector<std::thread> workers_;
};

struct HttpResponse {
  HttpResponse() = default;
  HttpResponse(int s, json b) : status(s), body(std::move(b)) {}

  int status = 200;
  json body;
  std::string content_type = "application/json";
  std::string raw;  // used instead of body when non-empty
};

// Routes one request: method, target (path plus optional query) and body.
HttpResponse handle_request(SessionManager& sessions, const std::string& method,
                            const std::string& target, const std::string& body);

// Parses "/games/{id}/events[?since=N]"; nothing if it does not match.
std::optional<std::pair<std::string, std::uint64_t>> parse_events_target(const std::string& target);

class Server {
 public:
  explicit Server(SessionManager& sessions);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds address:port (0 picks a free port) and serves on `threads` threads.
  // Returns the bound port.
  unsigned short start(const std::string& address, unsigned short port, int threads = 2);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dnp
