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
#include <numbers>

#include "game_impl.hpp"

namespace playtest::games {
namespace {

constexpr Point kLaunch{240, 560};
constexpr int kStoneSize = 40;
constexpr int kBoardSize = 64;
constexpr int kShotsPerLevel = 10;
constexpr int kHitsToPass = 3;
// Launch range per (px of pull * s of pull).
constexpr double kRange = 5.0;

constexpr Rect stone_box() {
  return {static_cast<int>(kLaunch.x) - kStoneSize / 2, static_cast<int>(kLaunch.y) - kStoneSize / 2,
          kStoneSize, kStoneSize};
}

// Liang-Barsky clip of segment a->b against r.
bool segment_hits(Point a, Point b, Rect r) {
  double t0 = 0.0;
  double t1 = 1.0;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - r.x, r.right() - a.x, a.y - r.y, r.bottom() - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return false;
  }
  return true;
}

class Slingshot final : public SceneGame {
 public:
  GameId id() const override { return GameId::Slingshot; }

 protected:
  void clear_state() override {
    shots_left_ = kShotsPerLevel;
    hits_ = 0;
    target_ = {240, 200};
  }

  void start_round() override {
    shots_left_ = kShotsPerLevel;
    hits_ = 0;
    place_target();
  }

  bool play(const std::vector<Gesture>& gestures) override {
    const auto it = std::find_if(gestures.begin(), gestures.end(), [](const Gesture& g) {
      return g.kind == GestureKind::Swipe && stone_box().contains(g.start);
    });
    if (it == gestures.end()) return false;
    const Point pull = it->end - it->start;
    const double len = norm(pull);
    if (len <= 0.0) return false;
    const Point dir = (-1.0 / len) * pull;
    const Point tip = kLaunch + (kRange * it->dist * it->dur) * dir;
    --shots_left_;
    if (segment_hits(kLaunch, tip, target_box())) {
      ++hits_;
      add_score(100 * (level() + 1));
    }
    // Every level spends all its projectiles; the tally decides the outcome.
    if (shots_left_ == 0) {
      if (hits_ >= kHitsToPass) {
        complete_level();
      } else {
        fail();
      }
    } else {
      place_target();
    }
    return true;
  }

  void draw(gfx::Canvas& c, double gain) const override {
    // Fork behind the stone; plain strokes, not an icon.
    c.thick_line({240, 590}, {240, 700}, 6, gfx::scale({110, 80, 50}, gain));
    c.thick_line({240, 600}, {205, 575}, 5, gfx::scale({110, 80, 50}, gain));
    c.thick_line({240, 600}, {275, 575}, 5, gfx::scale({110, 80, 50}, gain));
    const Rect t = target_box();
    c.blit(icon("board"), t.x, t.y, gain);
    const Rect s = stone_box();
    c.blit(icon("stone"), s.x, s.y, gain);
    for (int i = 0; i < kShotsPerLevel; ++i) {
      const Rgb col = i < shots_left_ ? Rgb{90, 70, 60} : Rgb{170, 185, 200};
      c.fill_circle({105.0 + 30.0 * i, 760}, 7, gfx::scale(col, gain));
    }
    for (int i = 0; i < hits_; ++i) {
      c.fill_rect({380 + 24 * i, 30, 16, 16}, gfx::scale({200, 60, 50}, gain));
    }
  }

  std::vector<Gesture> oracle_move(Rng& rng, bool noisy) const override {
    if (noisy) {
      const double ang = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double d = rng.uniform(40.0, 200.0);
      const Point end = clamp_to_screen(
          {std::round(kLaunch.x + d * std::cos(ang)), std::round(kLaunch.y + d * std::sin(ang))});
      return {make_gesture(kLaunch, end, std::round(rng.uniform(0.2, 1.0) * 1000) / 1000)};
    }
    // Pull straight away from the board with enough power to reach it.
    const Point to_target = target_ - kLaunch;
    const double span = norm(to_target);
    const Point u = (1.0 / span) * to_target;
    const double power = (span + 40.0) / kRange * rng.uniform(1.1, 1.5);
    double dist = std::clamp(power / rng.uniform(0.3, 0.8), 60.0, 200.0);
    // Pick the lattice point closest to the aim line near the wanted length.
    Point best = kLaunch - dist * u;
    double best_off = 1e9;
    for (double s = dist - 20.0; s <= dist + 20.0; s += 0.25) {
      const Point ideal = kLaunch - s * u;
      const Point p{std::round(ideal.x), std::round(ideal.y)};
      if (!kGameScreen.contains(p)) continue;
      const Point d = p - kLaunch;
      const double off = std::abs(d.x * u.y - d.y * u.x);
      if (off < best_off) {
        best_off = off;
        best = p;
      }
    }
    dist = distance(best, kLaunch);
    const double dur = std::round(std::clamp(power / dist, 0.2, 1.5) * 1000.0) / 1000.0;
    return {make_gesture(kLaunch, best, dur)};
  }

  Rgb background() const override { return {150, 185, 215}; }

 private:
  Rect target_box() const {
    return {static_cast<int>(target_.x) - kBoardSize / 2, static_cast<int>(target_.y) - kBoardSize / 2,
            kBoardSize, kBoardSize};
  }

  void place_target() { target_ = {static_cast<double>(rng().range(60, 420)),
                                   static_cast<double>(rng().range(90, 330))}; }

  int shots_left_ = kShotsPerLevel;
  int hits_ = 0;
  Point target_{240, 200};
};

}  // namespace

std::unique_ptr<SceneGame> make_slingshot() { return std::make_unique<Slingshot>(); }

std::vector<IconSpec> slingshot_icons() {
  std::vector<IconSpec> out = function_icons(true);
  Frame stone(kStoneSize, kStoneSize, {205, 185, 145});
  {
    gfx::Canvas c(stone);
    c.fill_circle({20, 20}, 16, {70, 60, 50});
    c.fill_circle({14, 14}, 5, {205, 205, 200});
  }
  out.push_back({"stone", Category::Actionable, std::move(stone)});
  Frame board(kBoardSize, kBoardSize, {225, 225, 220});
  {
    gfx::Canvas c(board);
    c.fill_ring({32, 32}, 30, 22, {200, 50, 45});
    c.fill_ring({32, 32}, 14, 8, {200, 50, 45});
    c.fill_circle({32, 32}, 4, {30, 30, 30});
  }
  out.push_back({"board", Category::Target, std::move(board)});
  return out;
}

}  // namespace playtest::games
