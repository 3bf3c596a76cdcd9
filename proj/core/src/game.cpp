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

#include <algorithm>
#include <cmath>

#include "game_impl.hpp"
#include "playtest/errors.hpp"

namespace playtest::games {
namespace {

const char* button_for(Scene s) {
  switch (s) {
    case Scene::Menu:
      return "play";
    case Scene::LevelComplete:
      return "next";
    case Scene::Failed:
      return "retry";
    case Scene::Playing:
      break;
  }
  return nullptr;
}

bool pressed(const std::vector<Gesture>& gestures, Rect box) {
  return std::any_of(gestures.begin(), gestures.end(), [&](const Gesture& g) {
    return g.kind == GestureKind::Tap && box.contains(g.start);
  });
}

}  // namespace

void SceneGame::reset(std::uint64_t seed) {
  seed_ = seed;
  rng_ = Rng(mix_seed(seed, static_cast<std::uint64_t>(id())));
  scene_ = Scene::Menu;
  score_ = 0;
  level_ = 0;
  step_ = 0;
  clear_state();
}

InjectResult SceneGame::inject(std::string_view events) {
  std::vector<Gesture> gestures;
  try {
    gestures = gestures_from_trace(events);
  } catch (const Error&) {
    return {};
  }
  if (gestures.empty()) return {};
  bool changed = false;
  if (scene_ == Scene::Playing) {
    changed = play(gestures);
  } else if (pressed(gestures, kButtonBox)) {
    scene_ = Scene::Playing;
    start_round();
    changed = true;
  }
  // The brightness jitter only moves with the state, so a no-op leaves the
  // frame bit-identical.
  if (changed) ++step_;
  return {changed};
}

Frame SceneGame::background_frame() const {
  return gfx::textured_background(kGameScreen.width, kGameScreen.height,
                                  background(), 6,
                                  mix_seed(static_cast<std::uint64_t>(id()), 77));
}

Frame SceneGame::render() const {
  Frame f = background_frame();
  gfx::Canvas canvas(f);
  // One uniform gain per frame, a pure function of (seed, step).
  const std::uint64_t h = mix_seed(seed_ ^ 0x5eedULL, step_);
  const double gain = 0.9 + 0.2 * static_cast<double>(h >> 11) * 0x1.0p-53;
  if (const char* name = button_for(scene_)) {
    canvas.blit(icon(name), kButtonBox.x, kButtonBox.y, gain);
  } else {
    draw(canvas, gain);
  }
  return f;
}

const Frame& SceneGame::icon(std::string_view name) const {
  for (const IconSpec& s : game_icon_specs(id())) {
    if (s.name == name) return s.image;
  }
  throw MissingInstance(std::string(name));
}

Action SceneGame::oracle_action(Rng& rng, double noise) const {
  Action a;
  if (scene_ == Scene::Playing) {
    a.gestures = oracle_move(rng, rng.chance(noise));
  } else {
    a.gestures.push_back(tap_at(rng, kButtonBox.center(), 40, 15));
  }
  return a;
}

Gesture tap_at(Rng& rng, Point center, double jx, double jy) {
  const Point p = clamp_to_screen(
      {std::round(center.x + rng.uniform(-jx, jx)), std::round(center.y + rng.uniform(-jy, jy))});
  return make_gesture(p, p, std::round(rng.uniform(0.05, 0.15) * 1000.0) / 1000.0);
}

Point clamp_to_screen(Point p) {
  return {std::clamp(p.x, 0.0, kGameScreen.width - 1.0),
          std::clamp(p.y, 0.0, kGameScreen.height - 1.0)};
}

Frame make_function_icon(std::string_view label, Rgb fill) {
  Frame f(kFunctionWidth, kFunctionHeight, fill);
  gfx::Canvas c(f);
  c.frame_rect({0, 0, kFunctionWidth, kFunctionHeight}, 5, {35, 35, 40});
  const int scale = 5;
  const int w = gfx::text_width(label, scale);
  c.text((kFunctionWidth - w) / 2, (kFunctionHeight - 7 * scale) / 2, label, scale,
         {230, 230, 225});
  return f;
}

std::vector<IconSpec> function_icons(bool with_next) {
  std::vector<IconSpec> out;
  out.push_back({"play", Category::Function, make_function_icon("PLAY", {60, 150, 70})});
  if (with_next) {
    out.push_back({"next", Category::Function, make_function_icon("NEXT", {60, 90, 170})});
  }
  out.push_back({"retry", Category::Function, make_function_icon("RETRY", {170, 70, 60})});
  return out;
}

}  // namespace playtest::games

namespace playtest {

const char* to_string(GameId id) {
  switch (id) {
    case GameId::Slingshot:
      return "slingshot";
    case GameId::Linkpair:
      return "linkpair";
    case GameId::Slider:
      return "slider";
    case GameId::Buttonrow:
      return "buttonrow";
  }
  return "?";
}

GameId parse_game_id(std::string_view name) {
  for (GameId id : {GameId::Slingshot, GameId::Linkpair, GameId::Slider, GameId::Buttonrow}) {
    if (name == to_string(id)) return id;
  }
  throw UnknownGame(std::string(name));
}

std::unique_ptr<Game> make_game(GameId id, std::uint64_t seed) {
  std::unique_ptr<games::SceneGame> g;
  switch (id) {
    case GameId::Slingshot:
      g = games::make_slingshot();
      break;
    case GameId::Linkpair:
      g = games::make_linkpair();
      break;
    case GameId::Slider:
      g = games::make_slider();
      break;
    case GameId::Buttonrow:
      g = games::make_buttonrow();
      break;
  }
  g->reset(seed);
  return g;
}

const std::vector<GameCatalogEntry>& game_catalog() {
  static const std::vector<GameCatalogEntry> catalog{
      {GameId::Slingshot, "slingshot", {Rule::R3, Rule::R2}},
      {GameId::Linkpair, "linkpair", {Rule::R4, Rule::R2}},
      {GameId::Slider, "slider", {Rule::R1, Rule::R2}},
      {GameId::Buttonrow, "buttonrow", {Rule::R5, Rule::R2}},
  };
  return catalog;
}

const std::vector<IconSpec>& game_icon_specs(GameId id) {
  auto build = [](std::vector<IconSpec> specs) {
    std::sort(specs.begin(), specs.end(), [](const IconSpec& a, const IconSpec& b) {
      return a.name + "." + to_string(a.category) < b.name + "." + to_string(b.category);
    });
    return specs;
  };
  // Function-local statics initialize once and thread-safely.
  static const std::vector<IconSpec> slingshot = build(games::slingshot_icons());
  static const std::vector<IconSpec> linkpair = build(games::linkpair_icons());
  static const std::vector<IconSpec> slider = build(games::slider_icons());
  static const std::vector<IconSpec> buttonrow = build(games::buttonrow_icons());
  switch (id) {
    case GameId::Slingshot:
      return slingshot;
    case GameId::Linkpair:
      return linkpair;
    case GameId::Slider:
      return slider;
    case GameId::Buttonrow:
      return buttonrow;
  }
  throw UnknownGame("?");
}

Oracle::Oracle(std::uint64_t seed, double noise) : rng_(mix_seed(seed, 0x0ac1e)), noise_(noise) {}

Action Oracle::next_action(const Game& game) {
  const auto* g = dynamic_cast<const games::SceneGame*>(&game);
  if (g == nullptr) throw UnknownGame("oracle requires a built-in game");
  return g->oracle_action(rng_, noise_);
}

}  // namespace playtest
