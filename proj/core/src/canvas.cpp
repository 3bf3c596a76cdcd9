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

#include "canvas.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "playtest/rng.hpp"

namespace playtest::gfx {
namespace {

struct Glyph {
  char ch;
  std::array<std::uint8_t, 7> rows;  // 5 bits per row, MSB on the left
};

constexpr Glyph kGlyphs[] = {
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
    {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
    {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
    {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
    {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
    {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
    {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'N', {0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11}},
    {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
    {'Y', {0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04}},
};

const Glyph* find_glyph(char c) {
  for (const Glyph& g : kGlyphs) {
    if (g.ch == c) return &g;
  }
  return nullptr;
}

double segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return distance(p, a + t * ab);
}

}  // namespace

Rgb scale(Rgb c, double gain) {
  auto ch = [gain](std::uint8_t v) {
    return static_cast<std::uint8_t>(
        std::clamp(std::lround(v * gain), 0L, 255L));
  };
  return {ch(c.r), ch(c.g), ch(c.b)};
}

template <typename Inside>
void Canvas::fill_where(Rect bounds, Inside inside, Rgb c) {
  const int x0 = std::max(0, bounds.x);
  const int y0 = std::max(0, bounds.y);
  const int x1 = std::min(f_.width(), bounds.right());
  const int y1 = std::min(f_.height(), bounds.bottom());
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (inside(Point{x + 0.5, y + 0.5})) f_.set(x, y, c);
    }
  }
}

void Canvas::fill_rect(Rect r, Rgb c) {
  fill_where(r, [](Point) { return true; }, c);
}

void Canvas::frame_rect(Rect r, int t, Rgb c) {
  fill_rect({r.x, r.y, r.width, t}, c);
  fill_rect({r.x, r.bottom() - t, r.width, t}, c);
  fill_rect({r.x, r.y, t, r.height}, c);
  fill_rect({r.right() - t, r.y, t, r.height}, c);
}

void Canvas::fill_circle(Point center, double radius, Rgb c) {
  const Rect box{static_cast<int>(std::floor(center.x - radius)),
                 static_cast<int>(std::floor(center.y - radius)),
                 static_cast<int>(std::ceil(2 * radius)) + 2,
                 static_cast<int>(std::ceil(2 * radius)) + 2};
  fill_where(box, [&](Point p) { return distance(p, center) <= radius; }, c);
}

void Canvas::fill_ring(Point center, double outer, double inner, Rgb c) {
  const Rect box{static_cast<int>(std::floor(center.x - outer)),
                 static_cast<int>(std::floor(center.y - outer)),
                 static_cast<int>(std::ceil(2 * outer)) + 2,
                 static_cast<int>(std::ceil(2 * outer)) + 2};
  fill_where(box,
             [&](Point p) {
               const double d = distance(p, center);
               return d <= outer && d >= inner;
             },
             c);
}

void Canvas::fill_polygon(std::span<const Point> pts, Rgb c) {
  if (pts.size() < 3) return;
  double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
  for (const Point& p : pts) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const Rect box{static_cast<int>(std::floor(minx)), static_cast<int>(std::floor(miny)),
                 static_cast<int>(std::ceil(maxx - minx)) + 2,
                 static_cast<int>(std::ceil(maxy - miny)) + 2};
  fill_where(box,
             [&](Point p) {
               bool in = false;
               for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
                 const Point a = pts[i];
                 const Point b = pts[j];
                 if ((a.y > p.y) != (b.y > p.y) &&
                     p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
                   in = !in;
                 }
               }
               return in;
             },
             c);
}

void Canvas::thick_line(Point a, Point b, double hw, Rgb c) {
  const Rect box{static_cast<int>(std::floor(std::min(a.x, b.x) - hw)),
                 static_cast<int>(std::floor(std::min(a.y, b.y) - hw)),
                 static_cast<int>(std::ceil(std::abs(a.x - b.x) + 2 * hw)) + 2,
                 static_cast<int>(std::ceil(std::abs(a.y - b.y) + 2 * hw)) + 2};
  fill_where(box, [&](Point p) { return segment_distance(p, a, b) <= hw; }, c);
}

void Canvas::text(int x, int y, std::string_view s, int scale_px, Rgb c) {
  for (char ch : s) {
    if (const Glyph* g = find_glyph(ch)) {
      for (int row = 0; row < 7; ++row) {
        for (int col = 0; col < 5; ++col) {
          if ((g->rows[static_cast<std::size_t>(row)] >> (4 - col)) & 1) {
            fill_rect({x + col * scale_px, y + row * scale_px, scale_px, scale_px}, c);
          }
        }
      }
    }
    x += 6 * scale_px;
  }
}

int text_width(std::string_view s, int scale_px) {
  return s.empty() ? 0 : static_cast<int>(s.size()) * 6 * scale_px - scale_px;
}

void Canvas::blit(const Frame& src, int x, int y, double gain) {
  for (int j = 0; j < src.height(); ++j) {
    const int fy = y + j;
    if (fy < 0 || fy >= f_.height()) continue;
    for (int i = 0; i < src.width(); ++i) {
      const int fx = x + i;
      if (fx < 0 || fx >= f_.width()) continue;
      f_.set(fx, fy, scale(src.at(i, j), gain));
    }
  }
}

Frame textured_background(int width, int height, Rgb base, int amplitude,
                          std::uint64_t seed) {
  Frame f(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::uint64_t h =
          mix_seed(seed, static_cast<std::uint64_t>(y) * 4096u + static_cast<std::uint64_t>(x));
      const int n = static_cast<int>(h % static_cast<std::uint64_t>(2 * amplitude + 1)) -
                    amplitude;
      auto ch = [n](std::uint8_t v) {
        return static_cast<std::uint8_t>(std::clamp(v + n, 0, 255));
      };
      f.set(x, y, {ch(base.r), ch(base.g), ch(base.b)});
    }
  }
  return f;
}

}  // namespace playtest::gfx
