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
#include <span>
#include <string_view>

#include "playtest/geometry.hpp"
#include "playtest/image.hpp"

namespace playtest::gfx {

// Immediate-mode rasterizer over a Frame; shapes are sampled at pixel
// centers and clipped to the frame.
class Canvas {
 public:
  explicit Canvas(Frame& frame) : f_(frame) {}

  void fill_rect(Rect r, Rgb c);
  void frame_rect(Rect r, int thickness, Rgb c);
  void fill_circle(Point center, double radius, Rgb c);
  void fill_ring(Point center, double outer, double inner, Rgb c);
  void fill_polygon(std::span<const Point> pts, Rgb c);
  void thick_line(Point a, Point b, double half_width, Rgb c);
  // 5x7 bitmap glyphs; unsupported characters render as blanks.
  void text(int x, int y, std::string_view s, int scale, Rgb c);
  // Copies `src` with every channel scaled by `gain` (clamped to 255).
  void blit(const Frame& src, int x, int y, double gain = 1.0);

 private:
  template <typename Inside>
  void fill_where(Rect bounds, Inside inside, Rgb c);

  Frame& f_;
};

int text_width(std::string_view s, int scale);

// Deterministic low-contrast noise texture.
Frame textured_background(int width, int height, Rgb base, int amplitude,
                          std::uint64_t seed);

Rgb scale(Rgb c, double gain);

}  // namespace playtest::gfx
