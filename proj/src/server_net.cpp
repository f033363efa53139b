#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <deque>

#include "dnp/server.hpp"

namespace dnp {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

class EventSocket;

// Live event sockets, so stop() can detach them from their games.
struct SocketRegistry {
  std::mutex mu;
  std::vector<std::weak_ptr<EventSocket>> sockets;
};

class EventSocket : public std::enable_shared_from_this<EventSocket> {
 public:
  EventSocket(tcp::socket&& socket, std::shared_ptr<Session> game, std::uint64_t since)
      : ws_(std::move(socket)), game_(std::move(game)), since_(since) {}

  ~EventSocket() { detach(); }

  void run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, beast::bind_front_handler(&EventSocket::on_accept, shared_from_this()));
  }

  void detach() {
    if (token_) game_->unsubscribe(*token_);
    token_.reset();
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    std::weak_ptr<EventSocket> weak = shared_from_this();
    auto exec = ws_.get_executor();
    std::vector<json> backlog;
    token_ = game_->subscribe(
        [weak, exec](const std::vector<json>& batch) {
          std::vector<std::string> texts;
          for (const json& e : batch) texts.push_back(e.dump());
          net::post(exec, [weak, texts = std::move(texts)] {
            if (auto self = weak.lock())
              for (const std::string& t : texts) self->send(t);
          });
        },
        since_, &backlog);
    for (const json& e : backlog) send(e.dump());
    do_read();
  }

  void do_read() {
    ws_.async_read(buffer_, beast::bind_front_handler(&EventSocket::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      detach();
      return;
    }
    buffer_.consume(buffer_.size());  // clients have nothing to say
    do_read();
  }

  void send(std::string text) {
    queue_.push_back(std::move(text));
    if (queue_.size() == 1) do_write();
  }

  void do_write() {
    ws_.text(true);
    ws_.async_write(net::buffer(queue_.front()),
                    beast::bind_front_handler(&EventSocket::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      detach();
      return;
    }
    queue_.pop_front();
    if (!queue_.empty()) do_write();
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Session> game_;
  std::uint64_t since_;
  std::optional<std::uint64_t> token_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
};

void add_common_headers(http::response<http::string_body>& res) {
  res.set(http::field::server, "dnp");
  res.set(http::field::access_control_allow_origin, "*");
}

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket&& socket, SessionManager& sessions, SocketRegistry& registry)
      : stream_(std::move(socket)), sessions_(sessions), registry_(registry) {}

  void run() {
    net::dispatch(stream_.get_executor(),
                  beast::bind_front_handler(&HttpConnection::do_read, shared_from_this()));
  }

 private:
  void do_read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(60));
    http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpConnection::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (ec) return;
    const std::string target(req_.target());
    if (websocket::is_upgrade(req_)) {
      const auto ev = parse_events_target(target);
      std::shared_ptr<Session> game;
      if (ev) {
        try {
          game = sessions_.find(ev->first);
        } catch (const ApiError&) {
        }
      }
      if (game) {
        stream_.expires_never();
        auto socket = std::make_shared<EventSocket>(stream_.release_socket(), game, ev->second);
        {
          std::lock_guard lock(registry_.mu);
          std::erase_if(registry_.sockets, [](const auto& w) { return w.expired(); });
          registry_.sockets.push_back(socket);
        }
        socket->run(std::move(req_));
        return;
      }
      reply({404, ApiError(404, "not-found", "no event stream at " + target).body()});
      return;
    }
    if (req_.method() == http::verb::options) {
      http::response<http::string_body> res{http::status::no_content, req_.version()};
      add_common_headers(res);
      res.set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
      res.set(http::field::access_control_allow_headers, "Content-Type");
      res.keep_alive(req_.keep_alive());
      write(std::move(res));
      return;
    }
    reply(handle_request(sessions_, std::string(req_.method_string()), target, req_.body()));
  }

  void reply(const HttpResponse& r) {
    http::response<http::string_body> res{static_cast<http::status>(r.status), req_.version()};
    add_common_headers(res);
    res.set(http::field::content_type, r.content_type);
    res.body() = r.raw.empty() ? r.body.dump() : r.raw;
    res.keep_alive(req_.keep_alive());
    res.prepare_payload();
    write(std::move(res));
  }

  void write(http::response<http::string_body>&& res) {
    auto sp = std::make_shared<http::response<http::string_body>>(std::move(res));
    res_ = sp;
    http::async_write(stream_, *sp,
                      [self = shared_from_this(), sp](beast::error_code ec, std::size_t) {
                        self->res_.reset();
                        if (ec) return;
                        if (!sp->keep_alive()) {
                          self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
                          return;
                        }
                        self->do_read();
                      });
  }

  beast::tcp_stream stream_;
  SessionManager& sessions_;
  SocketRegistry& registry_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  std::shared_ptr<void> res_;
};

}  // namespace

struct Server::Impl {
  explicit Impl(SessionManager& s) : sessions(s) {}

  void accept() {
    acceptor->async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (!acceptor->is_open()) return;
      if (!ec) std::make_shared<HttpConnection>(std::move(socket), sessions, registry)->run();
      accept();
    });
  }

  SessionManager& sessions;
  SocketRegistry registry;
  net::io_context ioc;
  std::optional<tcp::acceptor> acceptor;
  std::vector<std::thread> threads;
};

Server::Server(SessionManager& sessions) : impl_(std::make_unique<Impl>(sessions)) {}

Server::~Server() { stop(); }

unsigned short Server::start(const std::string& address, unsigned short port, int threads) {
  if (impl_->acceptor) throw std::logic_error("server already started");
  const tcp::endpoint ep{net::ip::make_address(address), port};
  impl_->acceptor.emplace(net::make_strand(impl_->ioc));
  impl_->acceptor->open(ep.protocol());
  impl_->acceptor->set_option(net::socket_base::reuse_address(true));
  impl_->acceptor->bind(ep);
  impl_->acceptor->listen(net::socket_base::max_listen_connections);
  const unsigned short bound = impl_->acceptor->local_endpoint().port();
  impl_->accept();
  for (int i = 0; i < std::max(1, threads); ++i) impl_->threads.emplace_back([this] { impl_->ioc.run(); });
  return bound;
}

void Server::stop() {
  if (!impl_ || !impl_->acceptor) return;
  net::post(impl_->acceptor->get_executor(), [this] {
    beast::error_code ec;
    impl_->acceptor->close(ec);
  });
  impl_->ioc.stop();
  for (std::thread& t : impl_->threads) t.join();
  impl_->threads.clear();
  {
    std::lock_guard lock(impl_->registry.mu);
    for (const auto& w : impl_->registry.sockets)
      if (auto s = w.lock()) s->detach();
  }
  // Drops pending handlers and with them the connections; event sockets
  // unsubscribe from their games as they go.
  impl_ = std::make_unique<Impl>(impl_->sessions);
}

}  // namespace dnp
