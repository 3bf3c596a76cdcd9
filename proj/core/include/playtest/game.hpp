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

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "playtest/geometry.hpp"
#include "playtest/image.hpp"
#include "playtest/rng.hpp"
#include "playtest/scene.hpp"
#include "playtest/tactic.hpp"
#include "playtest/trace.hpp"

namespace playtest {

enum class GameId { Slingshot, Linkpair, Slider, Buttonrow };

const char* to_string(GameId id);
// Throws UnknownGame.
GameId parse_game_id(std::string_view name);

inline constexpr ScreenBounds kGameScreen{480, 800};

struct GameStatus {
  std::int64_t score = 0;
  int level = 0;  // levels passed since reset
  bool over = false;

  friend bool operator==(const GameStatus&, const GameStatus&) = default;
};

struct InjectResult {
  bool state_changed = false;
};

// The black-box surface a tester sees: frames out, input events in.
class Game {
 public:
  virtual ~Game() = default;

  virtual GameId id() const = 0;
  virtual std::uint64_t seed() const = 0;
  virtual void reset(std::uint64_t seed) = 0;
  // `events` is trace-grammar text. Malformed or meaningless input is a
  // no-op that reports state_changed = false.
  virtual InjectResult inject(std::string_view events) = 0;
  virtual Frame render() const = 0;
  virtual GameStatus status() const = 0;
};

std::unique_ptr<Game> make_game(GameId id, std::uint64_t seed);

struct GameCatalogEntry {
  GameId id;
  std::string icon_dir;  // relative to the assets root
  std::vector<Rule> exercises;
};

const std::vector<GameCatalogEntry>& game_catalog();

// The game's icon templates, ordered as load_icon_specs would order the
// shipped asset directory.
const std::vector<IconSpec>& game_icon_specs(GameId id);

// Ground-truth demonstrator. It reads the internal state of games created by
// make_game, so it belongs to demo recording only, never to autoplay.
class Oracle {
 public:
  Oracle(std::uint64_t seed, double noise = 0.1);

  // The next action for `game`'s current state; a `noise` fraction of
  // gameplay moves are deliberately randomized.
  Action next_action(const Game& game);

 private:
  Rng rng_;
  double noise_;
};

}  // namespace playtest
