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

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

#include "canvas.hpp"
#include "playtest/game.hpp"
#include "playtest/rng.hpp"

namespace playtest::games {

enum class Scene { Menu, Playing, LevelComplete, Failed };

// Function buttons share one slot in the middle of the screen.
inline constexpr Rect kButtonBox{140, 360, 200, 80};
inline constexpr int kFunctionWidth = 200;
inline constexpr int kFunctionHeight = 80;

// Scene flow common to every game: Menu -(Play)-> Playing, and from Playing
// either LevelComplete -(Next)-> Playing or Failed -(Retry)-> Playing.
class SceneGame : public Game {
 public:
  std::uint64_t seed() const final { return seed_; }
  void reset(std::uint64_t seed) final;
  InjectResult inject(std::string_view events) final;
  Frame render() const final;
  GameStatus status() const final {
    return {score_, level_, scene_ == Scene::Failed};
  }

  Scene scene() const { return scene_; }
  Action oracle_action(Rng& rng, double noise) const;

 protected:
  SceneGame() = default;

  // Sets up the playfield when Playing is (re-)entered.
  virtual void start_round() = 0;
  // Interprets one action while Playing; returns whether state changed.
  virtual bool play(const std::vector<Gesture>& gestures) = 0;
  virtual void draw(gfx::Canvas& canvas, double gain) const = 0;
  virtual std::vector<Gesture> oracle_move(Rng& rng, bool noisy) const = 0;
  virtual Rgb background() const = 0;
  virtual void clear_state() {}

  void complete_level() {
    ++level_;
    scene_ = Scene::LevelComplete;
  }
  void fail() { scene_ = Scene::Failed; }
  void add_score(std::int64_t points) { score_ += points; }
  // For games whose displayed score is a best-of-runs record.
  void raise_score(std::int64_t to) { score_ = std::max(score_, to); }
  Rng& rng() { return rng_; }
  int level() const { return level_; }
  void bump_level(int to) { level_ = std::max(level_, to); }
  const Frame& icon(std::string_view name) const;

 private:
  Frame background_frame() const;

  std::uint64_t seed_ = 0;
  Rng rng_;
  Scene scene_ = Scene::Menu;
  std::int64_t score_ = 0;
  int level_ = 0;
  std::uint64_t step_ = 0;
};

// Helpers shared by the game implementations.
Gesture tap_at(Rng& rng, Point center, double jitter_x, double jitter_y);
Point clamp_to_screen(Point p);
Frame make_function_icon(std::string_view label, Rgb fill);

std::unique_ptr<SceneGame> make_slingshot();
std::unique_ptr<SceneGame> make_linkpair();
std::unique_ptr<SceneGame> make_slider();
std::unique_ptr<SceneGame> make_buttonrow();

// Icon artwork, defined next to each game.
std::vector<IconSpec> slingshot_icons();
std::vector<IconSpec> linkpair_icons();
std::vector<IconSpec> slider_icons();
std::vector<IconSpec> buttonrow_icons();
std::vector<IconSpec> function_icons(bool with_next);

}  // namespace playtest::games
