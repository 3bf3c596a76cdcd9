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
#include <cstdint>

namespace playtest::games {

enum class SlideDir { Up, Down, Left, Right };

// 4x4 doubling board; 0 marks an empty tile.
struct SlideBoard {
  std::array<std::array<int, 4>, 4> tiles{};

  // Slides and merges toward `dir`; returns merged value gained, or -1 if
  // nothing moved.
  int slide(SlideDir dir);
  bool can_move() const;
  int empty_count() const;
  int max_tile() const;
  std::int64_t total() const;
  friend bool operator==(const SlideBoard&, const SlideBoard&) = default;
};

// Read access to the logical board, for invariant tests.
class SliderView {
 public:
  virtual ~SliderView() = default;
  virtual const SlideBoard& board() const = 0;
};

}  // namespace playtest::games
