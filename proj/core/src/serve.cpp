/*
 * Copyright 2026 The Playtest Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "playtest/serve.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "json.hpp"
#include "serve_page.hpp"

#include "playtest/errors.hpp"
#include "playtest/game.hpp"
#include "playtest/harness.hpp"
#include "playtest/trace.hpp"

namespace playtest {
namespace {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace fs = std::filesystem;
using tcp = net::ip::tcp;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string base64(const std::vector<std::uint8_t>& bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(std::max(n, 0)));
  return out;
}

// Multi-producer queue with a deadline-aware pop.
template <typename T>
class Channel {
 public:
  void push(T v) {
    {
      std::lock_guard lock(mu_);
      if (closed_) return;
      items_.push_back(std::move(v));
    }
    cv_.notify_one();
  }
  std::optional<T> pop_until(Clock::time_point deadline) {
    std::unique_lock lock(mu_);
    cv_.wait_until(lock, deadline, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    T v = std::move(items_.front());
    items_.pop_front();
    return v;
  }
  // Drops pending items and accepts pushes again.
  void reset() {
    std::lock_guard lock(mu_);
    items_.clear();
    closed_ = false;
  }
  void close() {
    {
      std::lock_guard lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<T> items_;
  bool closed_ = false;
};

std::string new_session_id() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  std::ostringstream s;
  s << std::hex << ++counter << '-' << rd() << rd();
  return s.str();
}

json gesture_json(const Gesture& g) {
  return {{"kind", to_string(g.kind)},
          {"start", {g.start.x, g.start.y}},
          {"end", {g.end.x, g.end.y}},
          {"dur", g.dur}};
}

// ---- sessions -------------------------------------------------------------

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(std::string id, const ServeOptions& options) : id_(std::move(id)), options_(options) {}
  ~Session() { shutdown(); }

  const std::string& id() const { return id_; }

  // Outbound side; `notify` is called (from any thread) when messages wait.
  void attach(std::function<void()> notify) {
    {
      std::lock_guard lock(out_mu_);
      notify_ = std::move(notify);
    }
    send_status(running_ ? "running" : "idle");
  }
  void detach() {
    std::lock_guard lock(out_mu_);
    notify_ = nullptr;
  }
  std::optional<std::string> next_outgoing() {
    std::lock_guard lock(out_mu_);
    if (outbox_.empty()) return std::nullopt;
    std::string s = std::move(outbox_.front());
    outbox_.pop_front();
    return s;
  }

  void on_message(const json& msg) {
    const std::string type = msg.value("type", "");
    if (type == "pointer") {
      const auto phase = parse_pointer_phase(msg.value("phase", ""));
      if (!phase) return;
      inbox_.push(PointerEvent{*phase, msg.value("x", 0.0), msg.value("y", 0.0),
                               msg.value("t_ms", std::int64_t{0})});
    } else if (type == "control") {
      control(msg);
    }
  }

  void shutdown() {
    stop_ = true;
    inbox_.close();
    std::lock_guard lock(worker_mu_);
    if (!worker_.joinable()) return;
    if (worker_.get_id() == std::this_thread::get_id()) {
      worker_.detach();
    } else {
      worker_.join();
    }
  }

  // Called by the demo source and the observer, on the worker thread.
  void send_frame(const Frame& frame, std::int64_t t) {
    const auto interval = std::chrono::duration_cast<Clock::duration>(
        std::chrono::duration<double>(options_.frame_interval_s));
    const auto now = Clock::now();
    if (now < last_frame_ + interval) std::this_thread::sleep_until(last_frame_ + interval);
    last_frame_ = Clock::now();
    send({{"type", "frame"},
          {"t", t},
          {"w", frame.width()},
          {"h", frame.height()},
          {"data", base64(frame.pixels())}});
  }
  void send_prompt(std::int64_t t, std::chrono::milliseconds timeout) {
    send({{"type", "prompt"}, {"t", t}, {"text", kPromptText}, {"timeout_ms", timeout.count()}});
  }
  void send_status(const std::string& state, json extra = json::object()) {
    json m{{"type", "status"}, {"session", id_},       {"state", state},
           {"score", score_.load()}, {"level", level_.load()}, {"actions", actions_.load()}};
    for (auto& [k, v] : extra.items()) m[k] = v;
    send(m);
  }

  Channel<PointerEvent>& inbox() { return inbox_; }
  bool stopping() const { return stop_; }

 private:
  void send(const json& msg) {
    std::function<void()> notify;
    {
      std::lock_guard lock(out_mu_);
      outbox_.push_back(msg.dump());
      // A detached session keeps only a bounded backlog for resumption.
      while (outbox_.size() > 256) outbox_.pop_front();
      notify = notify_;
    }
    if (notify) notify();
  }

  void control(const json& msg) {
    const std::string cmd = msg.value("cmd", "");
    if (cmd == "stop") {
      shutdown();
      return;
    }
    if (cmd != "start_demo" && cmd != "start_play") {
      send_status("error", {{"message", "unknown command " + cmd}});
      return;
    }
    GameId game{};
    try {
      game = parse_game_id(msg.value("game", ""));
    } catch (const Error& e) {
      send_status("error", {{"message", e.what()}});
      return;
    }
    const std::uint64_t seed = msg.value("seed", std::uint64_t{1});
    std::lock_guard lock(worker_mu_);
    if (running_) {
      send_status("error", {{"message", "busy"}});
      return;
    }
    if (worker_.joinable()) worker_.join();
    stop_ = false;
    running_ = true;
    inbox_.reset();
    score_ = level_ = actions_ = 0;
    if (cmd == "start_demo") {
      const int actions = msg.value("actions", 40);
      const double period = msg.value("period", 9.0);
      worker_ = std::thread([self = shared_from_this(), game, seed, actions, period] {
        self->run_demo(game, seed, actions, period);
        self->running_ = false;
      });
    } else {
      const int budget = msg.value("budget", 500);
      worker_ = std::thread([self = shared_from_this(), game, seed, budget] {
        self->run_play(game, seed, budget);
        self->running_ = false;
      });
    }
  }

  void run_demo(GameId id, std::uint64_t seed, int actions, double period);
  void run_play(GameId id, std::uint64_t seed, int budget);

  std::string id_;
  const ServeOptions& options_;

  std::mutex out_mu_;
  std::deque<std::string> outbox_;
  std::function<void()> notify_;

  Channel<PointerEvent> inbox_;
  std::mutex worker_mu_;
  std::thread worker_;
  std::atomic<bool> running_{false};
  std::atomic<bool> stop_{false};
  Clock::time_point last_frame_{};

  std::atomic<std::int64_t> score_{0};
  std::atomic<int> level_{0};
  std::atomic<int> actions_{0};
  std::optional<std::pair<GameId, TacticSet>> learned_;
};

// Demo source fed by the browser's pointer stream. An action closes at the
// next snapshot tick once a gesture has completed, or after 3 periods.
class UiSource final : public ActionSource {
 public:
  UiSource(Session& session, double period_s) : session_(session), period_s_(period_s) {}
  std::string name() const override { return "ui"; }

  std::optional<std::string> next(const Frame& frame, std::int64_t t_ms,
                                  std::chrono::milliseconds timeout) override {
    session_.send_frame(frame, t_ms);
    session_.send_prompt(t_ms, timeout);
    const auto start = Clock::now();
    const auto tick = start + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(period_s_));
    const auto deadline = start + timeout;
    PointerRecorder rec(t_ms * 1000, tracking_id_);
    while (!session_.stopping()) {
      const auto now = Clock::now();
      const bool complete = rec.gestures() > 0 && !rec.pressed();
      if (complete && now >= tick) break;
      if (now >= deadline) {
        if (rec.gestures() == 0 && !rec.pressed()) return std::nullopt;
        break;
      }
      const auto wake = complete ? std::min(tick, deadline) : deadline;
      if (auto e = session_.inbox().pop_until(wake)) rec.add(*e);
    }
    if (session_.stopping()) return std::nullopt;
    std::string text = rec.finish();
    tracking_id_ = rec.next_tracking_id();
    return text;
  }

 private:
  Session& session_;
  double period_s_;
  std::uint32_t tracking_id_ = 1;
};

void Session::run_demo(GameId id, std::uint64_t seed, int actions, double period) {
  auto game = make_game(id, seed);
  UiSource source(*this, period);
  RecordOptions opts;
  opts.actions = actions;
  opts.period_s = period;
  opts.realtime = true;
  const fs::path dir =
      options_.sessions_dir / (id_ + "-" + to_string(id) + "-" + std::to_string(seed));

  // Keep the status line current by watching the game through its public face.
  class Tracking final : public ActionSource {
   public:
    Tracking(Session& s, ActionSource& inner, const Game& game)
        : s_(s), inner_(inner), game_(game) {}
    std::string name() const override { return inner_.name(); }
    std::optional<std::string> next(const Frame& f, std::int64_t t,
                                    std::chrono::milliseconds timeout) override {
      const GameStatus st = game_.status();
      s_.score_ = st.score;
      s_.level_ = st.level;
      s_.send_status("running");
      auto r = inner_.next(f, t, timeout);
      if (r) ++s_.actions_;
      return r;
    }

   private:
    Session& s_;
    ActionSource& inner_;
    const Game& game_;
  } tracking(*this, source, *game);

  try {
    record_demo(*game, tracking, dir, opts);
    const InferResult result = infer_from_demo(dir, game_icon_specs(id), seed);
    save_tactics_file(dir / "tactics.json", result.tactics);
    learned_ = std::make_pair(id, result.tactics);
    const GameStatus st = game->status();
    score_ = st.score;
    level_ = st.level;
    send_status("done", {{"demo", dir.string()},
                         {"tactics", static_cast<int>(result.tactics.tactics.size())}});
  } catch (const SourceTimeout& e) {
    send_status(stop_ ? "stopped" : "timeout", {{"message", e.what()}, {"demo", dir.string()}});
  } catch (const std::exception& e) {
    send_status("error", {{"message", e.what()}});
  }
}

void Session::run_play(GameId id, std::uint64_t seed, int budget) {
  try {
    TacticSet tactics;
    if (learned_ && learned_->first == id) {
      tactics = learned_->second;
    } else if (!options_.tactics_dir.empty()) {
      const fs::path p = options_.tactics_dir / (std::string(to_string(id)) + ".json");
      if (fs::exists(p)) tactics = load_tactics_file(p);
    }
    auto game = make_game(id, seed);
    PlayOptions opts;
    opts.budget = budget;
    opts.seed = seed;
    opts.on_step = [&](const StepInfo& s) {
      score_ = s.status.score;
      level_ = s.status.level;
      actions_ = s.step + 1;
      send_frame(*s.frame, s.step);
      json gestures = json::array();
      for (const Gesture& g : s.planned->gestures) gestures.push_back(gesture_json(g));
      send_status("running", {{"planned",
                               {{"tactic", s.planned->tactic_id},
                                {"rule", s.planned->tactic_id >= 0 ? to_string(s.planned->rule) : ""},
                                {"gestures", gestures}}}});
      return !stop_.load();
    };
    const TestReport report = run_test(*game, tactics, game_icon_specs(id), opts);
    score_ = report.score;
    level_ = report.level;
    actions_ = report.actions_issued;
    send_status(stop_ ? "stopped" : "done", {{"report", json::parse(report_to_json(report))}});
  } catch (const std::exception& e) {
    send_status("error", {{"message", e.what()}});
  }
}

// ---- connections ----------------------------------------------------------

class SessionRegistry {
 public:
  explicit SessionRegistry(const ServeOptions& options) : options_(options) {}

  std::shared_ptr<Session> create() {
    auto s = std::make_shared<Session>(new_session_id(), options_);
    std::lock_guard lock(mu_);
    sessions_[s->id()] = s;
    return s;
  }
  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(mu_);
    const auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }
  void shutdown_all() {
    std::map<std::string, std::shared_ptr<Session>> all;
    {
      std::lock_guard lock(mu_);
      all.swap(sessions_);
    }
    for (auto& [id, s] : all) s->shutdown();
  }

 private:
  const ServeOptions& options_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket&& socket, std::shared_ptr<Session> session)
      : ws_(std::move(socket)), session_(std::move(session)) {}

  void run(http::request<http::string_body> req, std::string error) {
    error_ = std::move(error);
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      self->on_accept();
    });
  }

 private:
  void on_accept() {
    if (!error_.empty()) {
      // Stale resume token: report and close.
      auto msg = std::make_shared<std::string>(
          json{{"type", "status"}, {"state", "error"}, {"message", error_}}.dump());
      ws_.async_write(net::buffer(*msg),
                      [self = shared_from_this(), msg](beast::error_code, std::size_t) {
                        self->ws_.async_close(websocket::close_code::policy_error,
                                              [self](beast::error_code) {});
                      });
      return;
    }
    std::weak_ptr<WsConnection> weak = shared_from_this();
    auto executor = ws_.get_executor();
    session_->attach([weak, executor] {
      net::post(executor, [weak] {
        if (auto self = weak.lock()) self->pump();
      });
    });
    read();
  }

  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->closed_ = true;
        self->session_->detach();
        return;
      }
      const std::string text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      const json msg = json::parse(text, nullptr, false);
      if (msg.is_object()) self->session_->on_message(msg);
      self->read();
    });
  }

  void pump() {
    if (writing_ || closed_) return;
    auto next = session_->next_outgoing();
    if (!next) return;
    writing_ = true;
    current_ = std::move(*next);
    ws_.text(true);
    ws_.async_write(net::buffer(current_),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      self->writing_ = false;
                      if (ec) {
                        self->closed_ = true;
                        return;
                      }
                      self->pump();
                    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Session> session_;
  beast::flat_buffer buffer_;
  std::string current_;
  std::string error_;
  bool writing_ = false;
  bool closed_ = false;
};

std::string mime_type(const fs::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".png") return "image/png";
  if (ext == ".svg") return "image/svg+xml";
  return "application/octet-stream";
}

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket&& socket, const ServeOptions& options, SessionRegistry& registry)
      : stream_(std::move(socket)), options_(options), registry_(registry) {}

  void run() {
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) {
                       if (!ec) self->on_request();
                     });
  }

 private:
  void on_request() {
    const std::string target(req_.target());
    const std::string path = target.substr(0, target.find('?'));
    if (websocket::is_upgrade(req_) && path == "/session") {
      upgrade(target);
      return;
    }
    auto res = std::make_shared<http::response<http::string_body>>();
    res->version(req_.version());
    res->keep_alive(false);
    if (req_.method() != http::verb::get && req_.method() != http::verb::head) {
      res->result(http::status::method_not_allowed);
    } else if (auto body = load(path)) {
      res->result(http::status::ok);
      res->set(http::field::content_type, body->second);
      res->body() = std::move(body->first);
    } else {
      res->result(http::status::not_found);
      res->set(http::field::content_type, "text/plain");
      res->body() = "not found\n";
    }
    res->prepare_payload();
    http::async_write(stream_, *res,
                      [self = shared_from_this(), res](beast::error_code, std::size_t) {
                        beast::error_code ignored;
                        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                      });
  }

  std::optional<std::pair<std::string, std::string>> load(const std::string& path) const {
    if (options_.static_dir.empty()) {
      if (path == "/" || path == "/index.html") {
        return std::make_pair(std::string(detail::kIndexPage), mime_type("index.html"));
      }
      return std::nullopt;
    }
    if (path.find("..") != std::string::npos) return std::nullopt;
    fs::path p = options_.static_dir / fs::path(path).relative_path();
    if (path.empty() || path.back() == '/') p /= "index.html";
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream s;
    s << in.rdbuf();
    return std::make_pair(s.str(), mime_type(p));
  }

  void upgrade(const std::string& target) {
    std::shared_ptr<Session> session;
    std::string error;
    const std::string key = "resume=";
    if (const auto pos = target.find(key); pos != std::string::npos) {
      std::string id = target.substr(pos + key.size());
      id = id.substr(0, id.find('&'));
      session = registry_.find(id);
      if (!session) error = "unknown session " + id;
    } else {
      session = registry_.create();
    }
    stream_.expires_never();
    std::make_shared<WsConnection>(stream_.release_socket(), std::move(session))
        ->run(std::move(req_), std::move(error));
  }

  beast::tcp_stream stream_;
  const ServeOptions& options_;
  SessionRegistry& registry_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

}  // namespace

// ---- pointer recording ----------------------------------------------------

std::optional<PointerEvent::Phase> parse_pointer_phase(std::string_view s) {
  if (s == "down") return PointerEvent::Phase::Down;
  if (s == "move") return PointerEvent::Phase::Move;
  if (s == "up") return PointerEvent::Phase::Up;
  return std::nullopt;
}

PointerRecorder::PointerRecorder(std::int64_t base_us, std::uint32_t first_tracking_id,
                                 ScreenBounds screen)
    : base_us_(base_us), tracking_id_(first_tracking_id), screen_(screen), last_us_(base_us) {}

std::int64_t PointerRecorder::stamp(std::int64_t t_ms) {
  if (!first_ms_) first_ms_ = t_ms;
  // Clock hiccups on the client must not make the trace run backwards.
  last_us_ = std::max(last_us_, base_us_ + (t_ms - *first_ms_) * 1000);
  return last_us_;
}

void PointerRecorder::position(std::int64_t ts, double x, double y) {
  const auto cx = static_cast<std::int64_t>(
      std::clamp(std::llround(x), 0LL, static_cast<long long>(screen_.width - 1)));
  const auto cy = static_cast<std::int64_t>(
      std::clamp(std::llround(y), 0LL, static_cast<long long>(screen_.height - 1)));
  if (cx != last_x_) {
    text_ += format_event(ts, "EV_ABS", "ABS_MT_POSITION_X", static_cast<std::uint32_t>(cx)) + "\n";
  }
  if (cy != last_y_) {
    text_ += format_event(ts, "EV_ABS", "ABS_MT_POSITION_Y", static_cast<std::uint32_t>(cy)) + "\n";
  }
  if (cx != last_x_ || cy != last_y_) {
    text_ += format_event(ts, "EV_SYN", "SYN_REPORT", 0) + "\n";
  }
  last_x_ = cx;
  last_y_ = cy;
}

void PointerRecorder::add(const PointerEvent& e) {
  switch (e.phase) {
    case PointerEvent::Phase::Down: {
      const std::int64_t ts = stamp(e.t_ms);
      if (pressed_) {
        text_ += format_event(ts, "EV_ABS", "ABS_MT_TRACKING_ID", kTrackingIdRelease) + "\n";
        ++gestures_;
      }
      text_ += format_event(ts, "EV_ABS", "ABS_MT_TRACKING_ID", tracking_id_++) + "\n";
      pressed_ = true;
      // A fresh contact always reports both coordinates.
      last_x_ = last_y_ = -1;
      position(ts, e.x, e.y);
      break;
    }
    case PointerEvent::Phase::Move:
      if (pressed_) position(stamp(e.t_ms), e.x, e.y);
      break;
    case PointerEvent::Phase::Up:
      if (!pressed_) break;
      {
        const std::int64_t ts = stamp(e.t_ms);
        position(ts, e.x, e.y);
        text_ += format_event(ts, "EV_ABS", "ABS_MT_TRACKING_ID", kTrackingIdRelease) + "\n";
        text_ += format_event(ts, "EV_SYN", "SYN_REPORT", 0) + "\n";
        pressed_ = false;
        ++gestures_;
      }
      break;
  }
}

std::string PointerRecorder::finish() {
  if (pressed_) {
    text_ += format_event(last_us_, "EV_ABS", "ABS_MT_TRACKING_ID", kTrackingIdRelease) + "\n";
    text_ += format_event(last_us_, "EV_SYN", "SYN_REPORT", 0) + "\n";
    pressed_ = false;
    ++gestures_;
  }
  return std::move(text_);
}

// ---- server ---------------------------------------------------------------

struct Server::Impl {
  explicit Impl(ServeOptions o) : options(std::move(o)), registry(options), acceptor(ioc) {}

  void accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket s) {
      if (ec) return;  // acceptor closed
      std::make_shared<HttpConnection>(std::move(s), options, registry)->run();
      accept();
    });
  }

  ServeOptions options;
  SessionRegistry registry;
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::thread thread;
  std::mutex mu;
  std::condition_variable cv;
  bool stopped = false;
};

Server::Server(ServeOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Server::~Server() { stop(); }

void Server::start() {
  Impl& d = *impl_;
  const tcp::endpoint endpoint(net::ip::make_address(d.options.address), d.options.port);
  d.acceptor.open(endpoint.protocol());
  d.acceptor.set_option(net::socket_base::reuse_address(true));
  d.acceptor.bind(endpoint);
  d.acceptor.listen(net::socket_base::max_listen_connections);
  d.accept();
  d.thread = std::thread([&d] { d.ioc.run(); });
}

std::uint16_t Server::port() const {
  beast::error_code ec;
  const auto ep = impl_->acceptor.local_endpoint(ec);
  return ec ? 0 : ep.port();
}

void Server::wait() {
  std::unique_lock lock(impl_->mu);
  impl_->cv.wait(lock, [&] { return impl_->stopped; });
}

void Server::stop() {
  Impl& d = *impl_;
  {
    std::lock_guard lock(d.mu);
    if (d.stopped) return;
    d.stopped = true;
  }
  d.cv.notify_all();
  d.registry.shutdown_all();
  d.ioc.stop();
  if (d.thread.joinable()) d.thread.join();
}

}  // namespace playtest
