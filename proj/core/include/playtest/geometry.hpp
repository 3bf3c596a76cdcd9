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
#include <cmath>

namespace playtest {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

// Axis-aligned rectangle, half-open on the right/bottom edges.
struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const Rect&, const Rect&) = default;

  int right() const { return x + width; }
  int bottom() const { return y + height; }
  int area() const { return width * height; }
  Point center() const { return {x + width / 2.0, y + height / 2.0}; }

  bool contains(Point p) const {
    return p.x >= x && p.x < right() && p.y >= y && p.y < bottom();
  }
};

inline int intersection_area(const Rect& a, const Rect& b) {
  const int w = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const int h = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  return (w > 0 && h > 0) ? w * h : 0;
}

inline double iou(const Rect& a, const Rect& b) {
  const int inter = intersection_area(a, b);
  const int uni = a.area() + b.area() - inter;
  return uni > 0 ? static_cast<double>(inter) / uni : 0.0;
}

// Device screen in pixels; valid coordinates are [0, width) x [0, height).
struct ScreenBounds {
  int width = 480;
  int height = 800;

  bool contains(Point p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x < width && p.y < height;
  }
};

}  // namespace playtest
