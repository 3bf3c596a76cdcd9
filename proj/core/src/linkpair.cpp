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
#include <deque>
#include <optional>
#include <span>
#include <tuple>
#include <utility>

#include "game_impl.hpp"
#include "linkpair.hpp"

namespace playtest::games {

std::vector<std::pair<LinkCell, LinkCell>> LinkBoard::moves() const {
  std::vector<std::pair<LinkCell, LinkCell>> out;
  for (int a = 0; a < kLinkRows * kLinkCols; ++a) {
    for (int b = a + 1; b < kLinkRows * kLinkCols; ++b) {
      const LinkCell ca{a / kLinkCols, a % kLinkCols};
      const LinkCell cb{b / kLinkCols, b % kLinkCols};
      if (at(ca) != kEmptyCell && at(ca) == at(cb) && connectable(ca, cb)) out.emplace_back(ca, cb);
    }
  }
  return out;
}

bool LinkBoard::connectable(LinkCell a, LinkCell b) const {
  if (a == b || at(a) == kEmptyCell || at(a) != at(b)) return false;
  // Search over the board plus a one-cell empty ring; BFS layers count
  // straight segments.
  constexpr int R = kLinkRows + 2;
  constexpr int C = kLinkCols + 2;
  auto empty = [&](int r, int c) {
    if (r == 0 || c == 0 || r == R - 1 || c == C - 1) return true;
    return cells[static_cast<std::size_t>((r - 1) * kLinkCols + (c - 1))] == kEmptyCell;
  };
  std::array<int, R * C> segs;
  segs.fill(99);
  std::deque<std::pair<int, int>> queue;
  segs[static_cast<std::size_t>((a.row + 1) * C + a.col + 1)] = 0;
  queue.emplace_back(a.row + 1, a.col + 1);
  constexpr int kDr[4] = {-1, 1, 0, 0};
  constexpr int kDc[4] = {0, 0, -1, 1};
  while (!queue.empty()) {
    const auto [r, c] = queue.front();
    queue.pop_front();
    const int k = segs[static_cast<std::size_t>(r * C + c)];
    if (k >= 3) continue;
    for (int d = 0; d < 4; ++d) {
      for (int rr = r + kDr[d], cc = c + kDc[d]; rr >= 0 && cc >= 0 && rr < R && cc < C;
           rr += kDr[d], cc += kDc[d]) {
        if (rr == b.row + 1 && cc == b.col + 1) return true;
        if (!empty(rr, cc)) break;
        int& s = segs[static_cast<std::size_t>(rr * C + cc)];
        if (s > k + 1) {
          s = k + 1;
          queue.emplace_back(rr, cc);
        }
      }
    }
  }
  return false;
}

Rect link_cell_box(LinkCell c) {
  return {kLinkOriginX + c.col * kLinkPitch, kLinkOriginY + c.row * kLinkPitch, kLinkPitch,
          kLinkPitch};
}

namespace {

constexpr int kFruitSize = 40;
constexpr const char* kFruitNames[kLinkKinds] = {"apple", "berry", "grape", "lemon", "pear"};

class Linkpair final : public SceneGame, public LinkpairView {
 public:
  GameId id() const override { return GameId::Linkpair; }
  const LinkBoard& board() const override { return board_; }

 protected:
  void clear_state() override { board_ = {}; }

  void start_round() override {
    if (board_.remaining() == 0) refill();
  }

  bool play(const std::vector<Gesture>& gestures) override {
    if (gestures.size() != 2) return false;
    LinkCell cells[2];
    for (int i = 0; i < 2; ++i) {
      if (gestures[static_cast<std::size_t>(i)].kind != GestureKind::Tap) return false;
      const auto c = cell_at(gestures[static_cast<std::size_t>(i)].start);
      if (!c) return false;
      cells[i] = *c;
    }
    if (!board_.connectable(cells[0], cells[1])) return false;
    board_.set(cells[0], kEmptyCell);
    board_.set(cells[1], kEmptyCell);
    add_score(10);
    if (board_.remaining() == 0) {
      bump_level(level() + 1);
      refill();
    } else {
      ensure_move();
    }
    return true;
  }

  void draw(gfx::Canvas& c, double gain) const override {
    for (int r = 0; r < kLinkRows; ++r) {
      for (int col = 0; col < kLinkCols; ++col) {
        const int v = board_.at({r, col});
        if (v == kEmptyCell) continue;
        const Rect box = link_cell_box({r, col});
        c.blit(icon(kFruitNames[v]), box.x + (kLinkPitch - kFruitSize) / 2,
               box.y + (kLinkPitch - kFruitSize) / 2, gain);
      }
    }
  }

  std::vector<Gesture> oracle_move(Rng& rng, bool noisy) const override {
    LinkCell a{};
    LinkCell b{};
    const auto moves = board_.moves();
    if (noisy || moves.empty()) {
      std::vector<LinkCell> occupied;
      for (int i = 0; i < kLinkRows * kLinkCols; ++i) {
        const LinkCell c{i / kLinkCols, i % kLinkCols};
        if (board_.at(c) != kEmptyCell) occupied.push_back(c);
      }
      rng.shuffle(std::span<LinkCell>(occupied));
      a = occupied[0];
      b = occupied.size() > 1 ? occupied[1] : occupied[0];
    } else {
      std::tie(a, b) = moves[rng.index(moves.size())];
    }
    return {tap_at(rng, link_cell_box(a).center(), 6, 6), tap_at(rng, link_cell_box(b).center(), 6, 6)};
  }

  Rgb background() const override { return {120, 160, 120}; }

 private:
  static std::optional<LinkCell> cell_at(Point p) {
    const int col = static_cast<int>(std::floor((p.x - kLinkOriginX) / kLinkPitch));
    const int row = static_cast<int>(std::floor((p.y - kLinkOriginY) / kLinkPitch));
    if (row < 0 || col < 0 || row >= kLinkRows || col >= kLinkCols) return std::nullopt;
    return LinkCell{row, col};
  }

  void refill() {
    std::vector<int> kinds;
    for (int i = 0; i < kLinkRows * kLinkCols / 2; ++i) {
      const int k = static_cast<int>(rng().index(kLinkKinds));
      kinds.push_back(k);
      kinds.push_back(k);
    }
    rng().shuffle(std::span<int>(kinds));
    std::copy(kinds.begin(), kinds.end(), board_.cells.begin());
    ensure_move();
  }

  // Reshuffles the remaining fruits in place until a move exists.
  void ensure_move() {
    for (int attempt = 0; attempt < 100 && board_.moves().empty(); ++attempt) {
      std::vector<int> kinds;
      std::vector<std::size_t> slots;
      for (std::size_t i = 0; i < board_.cells.size(); ++i) {
        if (board_.cells[i] != kEmptyCell) {
          kinds.push_back(board_.cells[i]);
          slots.push_back(i);
        }
      }
      rng().shuffle(std::span<int>(kinds));
      for (std::size_t i = 0; i < slots.size(); ++i) board_.cells[slots[i]] = kinds[i];
    }
  }

  LinkBoard board_;
};

Frame fruit(int kind) {
  Frame f(kFruitSize, kFruitSize, {225, 215, 185});
  gfx::Canvas c(f);
  switch (kind) {
    case 0:  // apple: disc with a stem
      c.fill_circle({20, 23}, 14, {195, 40, 40});
      c.thick_line({20, 10}, {25, 3}, 2, {60, 120, 40});
      break;
    case 1:  // berry: open ring
      c.fill_ring({20, 20}, 16, 8, {50, 70, 190});
      break;
    case 2:  // grape: four small discs
      for (Point p : {Point{13, 13}, Point{27, 13}, Point{13, 27}, Point{27, 27}}) {
        c.fill_circle(p, 6.5, {120, 50, 140});
      }
      break;
    case 3: {  // lemon: horizontal band
      c.fill_rect({4, 14, 32, 12}, {220, 190, 30});
      c.fill_rect({4, 14, 32, 3}, {150, 120, 20});
      break;
    }
    default: {  // pear: triangle
      const Point tri[3] = {{20, 4}, {36, 36}, {4, 36}};
      c.fill_polygon(tri, {110, 170, 50});
      break;
    }
  }
  return f;
}

}  // namespace

std::unique_ptr<SceneGame> make_linkpair() { return std::make_unique<Linkpair>(); }

std::vector<IconSpec> linkpair_icons() {
  std::vector<IconSpec> out = function_icons(false);
  for (int k = 0; k < kLinkKinds; ++k) out.push_back({kFruitNames[k], Category::Actionable, fruit(k)});
  return out;
}

const char* link_fruit_name(int kind) { return kFruitNames[kind]; }

}  // namespace playtest::games
