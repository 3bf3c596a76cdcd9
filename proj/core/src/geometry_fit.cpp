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

#include <cmath>

#include "playtest/errors.hpp"
#include "playtest/infer.hpp"

namespace playtest {
namespace {

constexpr double kCollinearArea = 1e-6;
constexpr double kSameX = 1e-9;

CurveFit line_through(Point p0, Point p1) {
  const double dx = p1.x - p0.x;
  if (std::abs(dx) < kSameX) throw VerticalDegenerate();
  CurveFit fit;
  fit.b = (p1.y - p0.y) / dx;
  fit.c = p0.y - fit.b * p0.x;
  fit.param = {DirectionParam::Kind::Linear, fit.b};
  return fit;
}

}  // namespace

CurveFit fit_curve(Point p0, Point p1, Point p2) {
  const double area =
      0.5 * std::abs((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
  const bool distinct_x = std::abs(p1.x - p0.x) >= kSameX &&
                          std::abs(p2.x - p1.x) >= kSameX &&
                          std::abs(p2.x - p0.x) >= kSameX;
  if (area < kCollinearArea || !distinct_x) return line_through(p0, p1);

  // Vandermonde system solved in Newton divided-difference form.
  const double d01 = (p1.y - p0.y) / (p1.x - p0.x);
  const double d12 = (p2.y - p1.y) / (p2.x - p1.x);
  CurveFit fit;
  fit.a = (d12 - d01) / (p2.x - p0.x);
  fit.b = d01 - fit.a * (p0.x + p1.x);
  fit.c = p0.y - (fit.a * p0.x + fit.b) * p0.x;
  fit.param = {DirectionParam::Kind::Quadratic, fit.a};
  return fit;
}

}  // namespace playtest
