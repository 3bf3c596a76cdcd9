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

// Host for the browser client. Serves static files at "/" and a WebSocket
// at "/session" carrying JSON messages:
//
//   out  frame   {t, w, h, data: base64 packed RGB}
//   out  prompt  {t, text, timeout_ms}
//   out  status  {session, state, score, level, actions, ...}
//   in   pointer {phase: down|move|up, x, y, t_ms}   (game-screen pixels)
//   in   control {cmd: start_demo|stop|start_play, game, seed, ...}
//
// Each connection owns one session; a session outlives its connection and
// can be re-attached with "/session?resume=<id>".

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "playtest/geometry.hpp"

namespace playtest {

inline constexpr std::string_view kPromptText = "Please take an action to play the game";

struct PointerEvent {
  enum class Phase { Down, Move, Up };
  Phase phase = Phase::Down;
  double x = 0.0;
  double y = 0.0;
  std::int64_t t_ms = 0;  // client clock; monotone within a gesture
};

std::optional<PointerEvent::Phase> parse_pointer_phase(std::string_view s);

// Turns one action's pointer stream into trace text. Event times are
// `base_us` plus the client-time offset from the first pointer event.
class PointerRecorder {
 public:
  PointerRecorder(std::int64_t base_us, std::uint32_t first_tracking_id,
                  ScreenBounds screen = {});

  void add(const PointerEvent& e);
  bool pressed() const { return pressed_; }
  int gestures() const { return gestures_; }
  std::uint32_t next_tracking_id() const { return tracking_id_; }
  // Releases a contact still down, then returns the text.
  std::string finish();

 private:
  std::int64_t stamp(std::int64_t t_ms);
  void position(std::int64_t ts, double x, double y);

  std::int64_t base_us_;
  std::uint32_t tracking_id_;
  ScreenBounds screen_;
  std::optional<std::int64_t> first_ms_;
  std::int64_t last_us_ = 0;
  std::int64_t last_x_ = -1;
  std::int64_t last_y_ = -1;
  bool pressed_ = false;
  int gestures_ = 0;
  std::string text_;
};

struct ServeOptions {
  std::string address = "127.0.0.1";
  std::uint16_t port = 8080;  // 0 binds an ephemeral port
  std::filesystem::path static_dir;  // empty: built-in page
  std::filesystem::path sessions_dir = "sessions";
  // start_play uses tactics inferred in the same session, else
  // <tactics_dir>/<game>.json, else an empty set.
  std::filesystem::path tactics_dir;
  double frame_interval_s = 0.1;  // at most 10 frames/s
};

class Server {
 public:
  explicit Server(ServeOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and serves on background threads.
  void start();
  std::uint16_t port() const;
  // Blocks until stop() is called from another thread or a signal handler.
  void wait();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace playtest
