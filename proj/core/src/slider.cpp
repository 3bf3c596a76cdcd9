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

#include "slider.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "game_impl.hpp"

namespace playtest::games {

int SlideBoard::slide(SlideDir dir) {
  const SlideBoard before = *this;
  int gained = 0;
  for (int line = 0; line < 4; ++line) {
    // Index i walks from the wall the tiles move toward.
    auto cell = [&](int i) -> int& {
      switch (dir) {
        case SlideDir::Left:
          return tiles[static_cast<std::size_t>(line)][static_cast<std::size_t>(i)];
        case SlideDir::Right:
          return tiles[static_cast<std::size_t>(line)][static_cast<std::size_t>(3 - i)];
        case SlideDir::Up:
          return tiles[static_cast<std::size_t>(i)][static_cast<std::size_t>(line)];
        case SlideDir::Down:
          break;
      }
      return tiles[static_cast<std::size_t>(3 - i)][static_cast<std::size_t>(line)];
    };
    int packed[4] = {0, 0, 0, 0};
    int n = 0;
    for (int i = 0; i < 4; ++i) {
      if (cell(i) != 0) packed[n++] = cell(i);
    }
    int out[4] = {0, 0, 0, 0};
    int m = 0;
    for (int i = 0; i < n; ++i) {
      if (i + 1 < n && packed[i] == packed[i + 1]) {
        out[m++] = 2 * packed[i];
        gained += 2 * packed[i];
        ++i;
      } else {
        out[m++] = packed[i];
      }
    }
    for (int i = 0; i < 4; ++i) cell(i) = out[i];
  }
  return *this == before ? -1 : gained;
}

bool SlideBoard::can_move() const {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const int v = tiles[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (v == 0) return true;
      if (c < 3 && v == tiles[static_cast<std::size_t>(r)][static_cast<std::size_t>(c + 1)]) return true;
      if (r < 3 && v == tiles[static_cast<std::size_t>(r + 1)][static_cast<std::size_t>(c)]) return true;
    }
  }
  return false;
}

int SlideBoard::empty_count() const {
  int n = 0;
  for (const auto& row : tiles) n += static_cast<int>(std::count(row.begin(), row.end(), 0));
  return n;
}

int SlideBoard::max_tile() const {
  int m = 0;
  for (const auto& row : tiles) m = std::max(m, *std::max_element(row.begin(), row.end()));
  return m;
}

std::int64_t SlideBoard::total() const {
  std::int64_t t = 0;
  for (const auto& row : tiles) {
    for (int v : row) t += v;
  }
  return t;
}

namespace {

constexpr Rect kBoard{40, 200, 400, 400};
constexpr int kTile = 90;

Rect tile_box(int r, int c) { return {kBoard.x + 5 + 100 * c, kBoard.y + 5 + 100 * r, kTile, kTile}; }

Rgb tile_color(int v) {
  if (v == 0) return {195, 185, 170};
  const int k = std::countr_zero(static_cast<unsigned>(v));  // 1 for 2, 11 for 2048
  static const Rgb kPalette[] = {{230, 220, 200}, {225, 205, 165}, {220, 170, 110},
                                 {215, 145, 90},  {210, 120, 85},  {205, 95, 60},
                                 {220, 200, 110}, {215, 195, 90},  {210, 185, 70},
                                 {205, 175, 55},  {200, 165, 40}};
  return kPalette[std::min(k - 1, 10)];
}

class Slider final : public SceneGame, public SliderView {
 public:
  GameId id() const override { return GameId::Slider; }
  const SlideBoard& board() const override { return board_; }

 protected:
  void clear_state() override {
    board_ = {};
    run_score_ = 0;
  }

  // Each Retry starts a fresh run; the reported score is the best run, as
  // on the original game's "best" counter.
  void start_round() override {
    board_ = {};
    run_score_ = 0;
    spawn();
    spawn();
  }

  bool play(const std::vector<Gesture>& gestures) override {
    const auto it = std::find_if(gestures.begin(), gestures.end(),
                                 [](const Gesture& g) { return g.kind == GestureKind::Swipe; });
    if (it == gestures.end()) return false;
    const Point d = it->end - it->start;
    const SlideDir dir = std::abs(d.x) >= std::abs(d.y)
                             ? (d.x < 0 ? SlideDir::Left : SlideDir::Right)
                             : (d.y < 0 ? SlideDir::Up : SlideDir::Down);
    const int gained = board_.slide(dir);
    if (gained < 0) return false;
    run_score_ += gained;
    raise_score(run_score_);
    spawn();
    const int m = board_.max_tile();
    if (m >= 128) bump_level(std::countr_zero(static_cast<unsigned>(m)) - 6);
    if (!board_.can_move()) fail();
    return true;
  }

  void draw(gfx::Canvas& c, double gain) const override {
    c.fill_rect(kBoard, gfx::scale({150, 140, 130}, gain));
    for (int r = 0; r < 4; ++r) {
      for (int col = 0; col < 4; ++col) {
        const int v = board_.tiles[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
        const Rect box = tile_box(r, col);
        c.fill_rect(box, gfx::scale(tile_color(v), gain));
        if (v == 0) continue;
        const std::string label = std::to_string(v);
        const int scale = label.size() <= 2 ? 4 : 3;
        c.text(box.x + (kTile - gfx::text_width(label, scale)) / 2, box.y + (kTile - 7 * scale) / 2,
               label, scale, gfx::scale({80, 70, 60}, gain));
      }
    }
  }

  std::vector<Gesture> oracle_move(Rng& rng, bool noisy) const override {
    std::vector<SlideDir> options;
    for (SlideDir d : {SlideDir::Up, SlideDir::Down, SlideDir::Left, SlideDir::Right}) {
      SlideBoard copy = board_;
      if (noisy || copy.slide(d) >= 0) options.push_back(d);
    }
    if (options.empty()) options.push_back(SlideDir::Up);
    const SlideDir dir = options[rng.index(options.size())];
    const Point unit = dir == SlideDir::Up     ? Point{0, -1}
                       : dir == SlideDir::Down ? Point{0, 1}
                       : dir == SlideDir::Left ? Point{-1, 0}
                                               : Point{1, 0};
    const Point perp{unit.y, unit.x};
    const Point start{std::round(240 + rng.uniform(-60, 60)), std::round(400 + rng.uniform(-60, 60))};
    const Point end = clamp_to_screen(start + rng.uniform(90, 170) * unit + rng.uniform(-10, 10) * perp);
    return {make_gesture(start, {std::round(end.x), std::round(end.y)},
                         std::round(rng.uniform(0.1, 0.3) * 1000.0) / 1000.0)};
  }

  Rgb background() const override { return {200, 190, 175}; }

 private:
  void spawn() {
    std::vector<std::pair<int, int>> empty;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (board_.tiles[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == 0) empty.emplace_back(r, c);
      }
    }
    if (empty.empty()) return;
    const auto [r, c] = empty[rng().index(empty.size())];
    board_.tiles[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = rng().chance(0.9) ? 2 : 4;
  }

  SlideBoard board_;
  std::int64_t run_score_ = 0;
};

}  // namespace

std::unique_ptr<SceneGame> make_slider() { return std::make_unique<Slider>(); }

std::vector<IconSpec> slider_icons() { return function_icons(false); }

}  // namespace playtest::games
