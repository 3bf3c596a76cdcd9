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

#include <array>
#include <utility>
#include <vector>

#include "playtest/geometry.hpp"
#include "playtest/scene.hpp"

namespace playtest::games {

inline constexpr int kLinkRows = 6;
inline constexpr int kLinkCols = 8;
inline constexpr int kLinkKinds = 5;
inline constexpr int kLinkPitch = 56;
inline constexpr int kLinkOriginX = 16;
inline constexpr int kLinkOriginY = 220;

struct LinkCell {
  int row = 0;
  int col = 0;
  friend bool operator==(const LinkCell&, const LinkCell&) = default;
};

struct LinkBoard {
  std::array<int, kLinkRows * kLinkCols> cells{};

  LinkBoard() { cells.fill(kEmptyCell); }

  int at(LinkCell c) const { return cells[static_cast<std::size_t>(c.row * kLinkCols + c.col)]; }
  void set(LinkCell c, int v) { cells[static_cast<std::size_t>(c.row * kLinkCols + c.col)] = v; }
  int remaining() const {
    int n = 0;
    for (int v : cells) n += v != kEmptyCell;
    return n;
  }
  // Equal fruits joined by at most three axis-aligned segments through
  // empty cells; the path may leave the board by one cell.
  bool connectable(LinkCell a, LinkCell b) const;
  std::vector<std::pair<LinkCell, LinkCell>> moves() const;
};

Rect link_cell_box(LinkCell c);
const char* link_fruit_name(int kind);

// Read access to the logical board, for cross-checks in tests.
class LinkpairView {
 public:
  virtual ~LinkpairView() = default;
  virtual const LinkBoard& board() const = 0;
};

}  // namespace playtest::games
