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
#include <array>
#include <cmath>
#include <vector>

#include "buttonrow.hpp"
#include "game_impl.hpp"

namespace playtest::games {
namespace {

constexpr int kN = 10;
constexpr int kColors = 5;
constexpr int kCell = 36;
constexpr int kFieldX = 60;
constexpr int kFieldY = 130;
constexpr int kButton = 64;
constexpr int kButtonY = 640;
constexpr int kMoveLimit = 30;

constexpr Rgb kPalette[kColors] = {
    {210, 60, 60}, {60, 170, 70}, {60, 100, 210}, {225, 200, 50}, {170, 80, 190}};
constexpr const char* kNames[kColors] = {"red", "green", "blue", "yellow", "purple"};

constexpr Rect button_box(int i) { return {32 + 88 * i, kButtonY, kButton, kButton}; }

class Buttonrow final : public SceneGame, public ButtonrowView {
 public:
  GameId id() const override { return GameId::Buttonrow; }
  int captured() const override { return region_size(field_); }

 protected:
  void clear_state() override {
    field_.fill(0);
    moves_ = 0;
  }

  void start_round() override {
    for (int& c : field_) c = static_cast<int>(rng().index(kColors));
    moves_ = 0;
  }

  bool play(const std::vector<Gesture>& gestures) override {
    int color = -1;
    for (const Gesture& g : gestures) {
      if (g.kind != GestureKind::Tap) continue;
      for (int i = 0; i < kColors && color < 0; ++i) {
        if (button_box(i).contains(g.start)) color = i;
      }
      if (color >= 0) break;
    }
    if (color < 0 || color == field_[0]) return false;
    const int before = region_size(field_);
    field_ = flooded(field_, color);
    const int after = region_size(field_);
    add_score(after - before);
    ++moves_;
    if (after == kN * kN) {
      complete_level();
    } else if (moves_ >= kMoveLimit) {
      fail();
    }
    return true;
  }

  void draw(gfx::Canvas& c, double gain) const override {
    for (int r = 0; r < kN; ++r) {
      for (int col = 0; col < kN; ++col) {
        c.fill_rect({kFieldX + col * kCell, kFieldY + r * kCell, kCell, kCell},
                    gfx::scale(kPalette[field_[static_cast<std::size_t>(r * kN + col)]], gain));
      }
    }
    for (int i = 0; i < kColors; ++i) {
      const Rect b = button_box(i);
      c.blit(icon(kNames[i]), b.x, b.y, gain);
    }
    // Remaining moves as a bar.
    const int left = kMoveLimit - moves_;
    c.fill_rect({kFieldX, 540, left * 12, 10}, gfx::scale({60, 60, 70}, gain));
  }

  std::vector<Gesture> oracle_move(Rng& rng, bool noisy) const override {
    int pick = 0;
    if (noisy) {
      pick = static_cast<int>(rng.index(kColors));
    } else {
      std::vector<int> best;
      int best_gain = -1;
      for (int i = 0; i < kColors; ++i) {
        if (i == field_[0]) continue;
        const int gain = region_size(flooded(field_, i));
        if (gain > best_gain) {
          best_gain = gain;
          best.clear();
        }
        if (gain == best_gain) best.push_back(i);
      }
      pick = best[rng.index(best.size())];
    }
    return {tap_at(rng, button_box(pick).center(), 10, 10)};
  }

  Rgb background() const override { return {70, 75, 90}; }

 private:
  using Field = std::array<int, kN * kN>;

  static std::vector<int> region(const Field& f) {
    std::vector<int> out{0};
    std::array<bool, kN * kN> seen{};
    seen[0] = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const int r = out[i] / kN;
      const int c = out[i] % kN;
      const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& n : nb) {
        if (n[0] < 0 || n[1] < 0 || n[0] >= kN || n[1] >= kN) continue;
        const auto j = static_cast<std::size_t>(n[0] * kN + n[1]);
        if (!seen[j] && f[j] == f[0]) {
          seen[j] = true;
          out.push_back(static_cast<int>(j));
        }
      }
    }
    return out;
  }

  static int region_size(const Field& f) { return static_cast<int>(region(f).size()); }

  static Field flooded(Field f, int color) {
    for (int i : region(f)) f[static_cast<std::size_t>(i)] = color;
    return f;
  }

  Field field_{};
  int moves_ = 0;
};

Frame button_icon(int i) {
  Frame f(kButton, kButton, kPalette[i]);
  gfx::Canvas c(f);
  c.frame_rect({0, 0, kButton, kButton}, 3, {35, 35, 40});
  const Rgb ink{40, 40, 45};
  switch (i) {
    case 0:
      c.fill_circle({32, 32}, 16, ink);
      break;
    case 1:
      c.fill_rect({12, 16, 40, 9}, ink);
      c.fill_rect({12, 39, 40, 9}, ink);
      break;
    case 2: {
      const Point tri[3] = {{32, 13}, {51, 49}, {13, 49}};
      c.fill_polygon(tri, ink);
      break;
    }
    case 3:
      c.thick_line({17, 17}, {47, 47}, 4, ink);
      c.thick_line({47, 17}, {17, 47}, 4, ink);
      break;
    default:
      c.fill_ring({32, 32}, 18, 10, ink);
      break;
  }
  return f;
}

}  // namespace

std::unique_ptr<SceneGame> make_buttonrow() { return std::make_unique<Buttonrow>(); }

std::vector<IconSpec> buttonrow_icons() {
  std::vector<IconSpec> out = function_icons(true);
  for (int i = 0; i < kColors; ++i) out.push_back({kNames[i], Category::Actionable, button_icon(i)});
  return out;
}

}  // namespace playtest::games
