// Copyright 2026 The SUE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sue/gateway/server.hpp"

#include <spdlog/spdlog.h>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <set>

namespace sue::gateway {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket socket, Gateway& gateway, std::function<void(Session*)> on_end)
      : ws_(std::move(socket)), gateway_(gateway), on_end_(std::move(on_end)) {}

  void run() {
    http::async_read(ws_.next_layer(), buffer_, request_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) { self->on_request(ec); });
  }

  void close() {
    if (closing_) return;
    closing_ = true;
    if (!upgraded_) {
      beast::error_code ignored;
      ws_.next_layer().socket().close(ignored);
      return;
    }
    ws_.async_close(websocket::close_code::going_away,
                    [self = shared_from_this()](beast::error_code) { self->end(); });
  }

 private:
  void on_request(beast::error_code ec) {
    if (ec) return end();
    std::optional<Endpoint> endpoint;
    if (request_.target() == "/ingest") endpoint = Endpoint::ingest;
    if (request_.target() == "/console") endpoint = Endpoint::console;
    if (!endpoint || !websocket::is_upgrade(request_)) {
      return reject(endpoint ? http::status::bad_request : http::status::not_found);
    }
    endpoint_ = *endpoint;
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(request_, [self = shared_from_this()](beast::error_code ec) { self->on_accept(ec); });
  }

  void reject(http::status status) {
    auto res = std::make_shared<http::response<http::string_body>>(status, request_.version());
    res->set(http::field::content_type, "text/plain");
    res->body() = "websocket endpoints: /ingest, /console\n";
    res->prepare_payload();
    res->keep_alive(false);
    http::async_write(ws_.next_layer(), *res, [self = shared_from_this(), res](beast::error_code, std::size_t) {
      beast::error_code ignored;
      self->ws_.next_layer().socket().shutdown(tcp::socket::shutdown_send, ignored);
      self->end();
    });
  }

  void on_accept(beast::error_code ec) {
    if (ec) return end();
    upgraded_ = true;
    ws_.text(true);
    std::weak_ptr<Session> weak = shared_from_this();
    ConnectionHooks hooks;
    hooks.on_ready = [weak, exec = ws_.get_executor()] {
      asio::post(exec, [weak] {
        if (auto self = weak.lock()) self->flush();
      });
    };
    hooks.on_overflow = [weak, exec = ws_.get_executor()] {
      asio::post(exec, [weak] {
        if (auto self = weak.lock()) {
          self->id_.reset();
          self->close();
        }
      });
    };
    id_ = gateway_.connect(endpoint_, std::move(hooks));
    spdlog::debug("connection {} opened on {}", *id_, endpoint_ == Endpoint::ingest ? "/ingest" : "/console");
    read();
  }

  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return self->end();
      if (self->id_) {
        self->gateway_.receive(*self->id_, beast::buffers_to_string(self->buffer_.data()));
      }
      self->buffer_.consume(self->buffer_.size());
      self->read();
    });
  }

  void flush() {
    if (writing_ || closing_ || !id_) return;
    auto frame = gateway_.pop(*id_);
    if (!frame) return;
    writing_ = true;
    out_ = std::move(*frame);
    ws_.async_write(asio::buffer(out_), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->writing_ = false;
      if (ec) return self->end();
      self->flush();
    });
  }

  void end() {
    if (ended_) return;
    ended_ = true;
    if (id_) {
      spdlog::debug("connection {} closed", *id_);
      gateway_.disconnect(*id_);
      id_.reset();
    }
    if (on_end_) on_end_(this);
  }

  websocket::stream<beast::tcp_stream> ws_;
  Gateway& gateway_;
  std::function<void(Session*)> on_end_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> request_;
  Endpoint endpoint_ = Endpoint::console;
  std::optional<ConnectionId> id_;
  std::string out_;
  bool writing_ = false;
  bool closing_ = false;
  bool upgraded_ = false;
  bool ended_ = false;
};

}  // namespace

struct Server::Impl : std::enable_shared_from_this<Server::Impl> {
  Impl(asio::io_context& io, Gateway& gw, const tcp::endpoint& at) : io(io), gateway(gw), acceptor(io) {
    acceptor.open(at.protocol());
    acceptor.set_option(asio::socket_base::reuse_address(true));
    acceptor.bind(at);
    acceptor.listen(asio::socket_base::max_listen_connections);
  }

  void accept() {
    acceptor.async_accept([self = shared_from_this()](beast::error_code ec, tcp::socket s) {
      if (ec) return;  // acceptor closed
      std::weak_ptr<Impl> weak = self;
      auto session = std::make_shared<Session>(std::move(s), self->gateway, [weak](Session* ended) {
        if (auto impl = weak.lock()) {
          std::erase_if(impl->sessions, [ended](const auto& p) { return p.get() == ended; });
        }
      });
      self->sessions.insert(session);
      session->run();
      self->accept();
    });
  }

  asio::io_context& io;
  Gateway& gateway;
  tcp::acceptor acceptor;
  std::set<std::shared_ptr<Session>> sessions;
};

Server::Server(asio::io_context& io, Gateway& gateway, unsigned short port, const std::string& address)
    : impl_(std::make_shared<Impl>(io, gateway, tcp::endpoint(asio::ip::make_address(address), port))) {}

Server::~Server() {
  beast::error_code ignored;
  impl_->acceptor.close(ignored);
}

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::start() { impl_->accept(); }

void Server::stop() {
  beast::error_code ignored;
  impl_->acceptor.close(ignored);
  const auto sessions = impl_->sessions;
  for (const auto& s : sessions) s->close();
}

void start_replay(asio::io_context& io, Replayer& replayer, std::function<void()> done) {
  struct Loop : std::enable_shared_from_this<Loop> {
    Loop(asio::io_context& io, Replayer& r, std::function<void()> d)
        : timer(io), replayer(r), done(std::move(d)), start(Replayer::Clock::now()) {}

    void step() {
      if (replayer.done()) {
        if (done) done();
        return;
      }
      timer.expires_at(replayer.due(start));
      timer.async_wait([self = shared_from_this()](beast::error_code ec) {
        if (ec) return;
        self->replayer.deliver_next();
        self->step();
      });
    }

    asio::steady_timer timer;
    Replayer& replayer;
    std::function<void()> done;
    Replayer::Clock::time_point start;
  };
  std::make_shared<Loop>(io, replayer, std::move(done))->step();
}

TimeMs wall_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

void start_live_clock(asio::io_context& io, Gateway& gateway) {
  struct Loop : std::enable_shared_from_this<Loop> {
    Loop(asio::io_context& io, Gateway& g) : timer(io), gateway(g) {}

    void step() {
      const TimeMs now = wall_clock_ms();
      gateway.advance_to(now);
      const auto& clock = gateway.config().engine.clock;
      const TimeMs next = clock.start_of(clock.index_of(now) + 1);
      timer.expires_after(std::chrono::milliseconds(next - now + 1));
      timer.async_wait([self = shared_from_this()](beast::error_code ec) {
        if (!ec) self->step();
      });
    }

    asio::steady_timer timer;
    Gateway& gateway;
  };
  std::make_shared<Loop>(io, gateway)->step();
}

}  // namespace sue::gateway
