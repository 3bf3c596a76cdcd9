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

#include "criteria.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "playtest/errors.hpp"
#include "playtest/game.hpp"
#include "playtest/scene.hpp"

using namespace playtest;

namespace {

Frame noise(int w, int h, Rng& rng, int lo = 0, int hi = 255) {
  Frame f(w, h);
  for (auto& b : f.pixels()) b = static_cast<std::uint8_t>(rng.range(lo, hi));
  return f;
}

void paste(Frame& dst, const Frame& src, int x, int y) {
  for (int j = 0; j < src.height(); ++j) {
    for (int i = 0; i < src.width(); ++i) dst.set(x + i, y + j, src.at(i, j));
  }
}

IconInstance box_instance(double cx, double cy, int side, int spec = 0) {
  IconInstance in;
  in.spec = spec;
  in.category = Category::Actionable;
  in.bbox = {static_cast<int>(std::lround(cx - side / 2.0)),
             static_cast<int>(std::lround(cy - side / 2.0)), side, side};
  in.centroid = {cx, cy};
  in.score = 1.0;
  return in;
}

std::vector<IconInstance> lattice(int rows, int cols, double pitch, int side, double x0 = 100,
                                  double y0 = 100) {
  std::vector<IconInstance> out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      out.push_back(box_instance(x0 + c * pitch, y0 + r * pitch, side, (r * cols + c) % 3));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("ncc_at agrees with a direct two-pass computation") {
  Rng rng(1);
  const Frame f = noise(60, 50, rng);
  const Frame t = noise(12, 9, rng);
  for (int k = 0; k < 200; ++k) {
    const int x = rng.range(0, 60 - 12), y = rng.range(0, 50 - 9);
    CHECK(ncc_at(f, t, x, y) == doctest::Approx(oracle::ncc(f, t, x, y)).epsilon(1e-9));
  }
  // Zero-variance window or template scores 0.
  CHECK(ncc_at(Frame(30, 30, {9, 9, 9}), t, 3, 3) == 0.0);
  CHECK(ncc_at(f, Frame(5, 5, {7, 7, 7}), 3, 3) == 0.0);
}

TEST_CASE("exact copy is found with score 1 at its centre") {
  Rng rng(2);
  Frame frame = noise(200, 150, rng, 0, 60);
  const IconSpec spec{"thing", Category::Target, noise(24, 20, rng)};
  paste(frame, spec.image, 10, 20);
  const auto found = match_icons(frame, {spec});
  REQUIRE(found.size() == 1);
  CHECK(found[0].bbox == Rect{10, 20, 24, 20});
  CHECK(found[0].centroid == Point{22, 30});
  CHECK(found[0].score == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(found[0].category == Category::Target);
}

TEST_CASE("gain 1.1 still matches with score at least 0.99") {
  Rng rng(3);
  Frame frame = noise(160, 120, rng, 0, 40);
  const IconSpec spec{"thing", Category::Actionable, noise(20, 20, rng, 20, 230)};
  Frame bright = spec.image;
  for (auto& b : bright.pixels()) b = static_cast<std::uint8_t>(std::min(255.0, std::round(b * 1.1)));
  paste(frame, bright, 50, 40);
  const auto found = match_icons(frame, {spec});
  REQUIRE(found.size() == 1);
  CHECK(found[0].bbox == Rect{50, 40, 20, 20});
  CHECK(found[0].score >= 0.99);
}

TEST_CASE("uniform frame yields nothing; oversized template throws") {
  Rng rng(4);
  const IconSpec spec{"thing", Category::Actionable, noise(20, 20, rng)};
  CHECK(match_icons(Frame(100, 100, {80, 80, 80}), {spec}).empty());
  CHECK_THROWS_AS(match_icons(Frame(20, 100), {spec}), TemplateTooLarge);
  CHECK_THROWS_AS(match_icons(Frame(100, 20), {spec}), TemplateTooLarge);
}

TEST_CASE("instances are invariant under affine intensity changes") {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const criteria::Composite c = criteria::composite_frame(rng, 0.1);
    const auto& specs = game_icon_specs(c.game);
    // Compress into [0,100] so that 2F + 17 cannot clamp.
    Frame base = c.frame;
    for (auto& b : base.pixels()) b = static_cast<std::uint8_t>(b * 100 / 255);
    Frame scaled = base;
    for (auto& b : scaled.pixels()) b = static_cast<std::uint8_t>(2 * b + 17);
    const auto a = match_icons(base, specs);
    const auto b = match_icons(scaled, specs);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].spec == b[i].spec);
      CHECK(a[i].bbox == b[i].bbox);
      CHECK(std::abs(a[i].score - b[i].score) <= 1e-9);
    }
  }
}

TEST_CASE("pyramid search finds the same instances as exhaustive search") {
  Rng rng(6);
  MatchOptions ex;
  ex.mode = SearchMode::Exhaustive;
  for (int trial = 0; trial < 4; ++trial) {
    const criteria::Composite c = criteria::composite_frame(rng, 0.1);
    const auto& specs = game_icon_specs(c.game);
    const auto a = match_icons(c.frame, specs);
    const auto b = match_icons(c.frame, specs, ex);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].bbox == b[i].bbox);
      CHECK(a[i].spec == b[i].spec);
    }
  }
}

TEST_CASE("non-max suppression leaves same-spec overlap at most 0.3") {
  Rng rng(7);
  // A smooth ramp template correlates highly with itself shifted by a few
  // pixels, so raw maxima crowd together.
  Frame ramp(16, 16);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      const auto v = static_cast<std::uint8_t>(x * 12 + y * 3);
      ramp.set(x, y, {v, v, v});
    }
  }
  Frame frame = noise(120, 80, rng, 0, 30);
  for (int k = 0; k < 4; ++k) paste(frame, ramp, 10 + k * 9, 20);
  MatchOptions opts;
  opts.threshold = 0.5;
  const auto found = match_icons(frame, {{"ramp", Category::Actionable, ramp}}, opts);
  REQUIRE(found.size() >= 1);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = i + 1; j < found.size(); ++j) {
      CHECK(iou(found[i].bbox, found[j].bbox) <= 0.3);
    }
  }
}

TEST_CASE("matcher accuracy at reduced size") {
  const auto r = criteria::matcher_accuracy(30, 8);
  CHECK(r.precision() >= 0.95);
  CHECK(r.recall() >= 0.95);
}

TEST_CASE("detect_grid examples") {
  const auto g = detect_grid(lattice(3, 3, 56, 40));
  REQUIRE(g.has_value());
  CHECK(g->rows == 3);
  CHECK(g->cols == 3);
  CHECK(g->occupancy() == doctest::Approx(1.0));
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) CHECK(g->at(r, c) == (r * 3 + c) % 3);
  }

  CHECK_FALSE(detect_grid(lattice(1, 6, 70, 50)).has_value());

  auto sparse = lattice(4, 4, 56, 40);
  std::vector<IconInstance> seven;
  for (int i : {0, 1, 2, 3, 4, 8, 12}) seven.push_back(sparse[static_cast<std::size_t>(i)]);
  CHECK_FALSE(detect_grid(seven).has_value());
  CHECK_FALSE(detect_grid({}).has_value());
}

TEST_CASE("detect_grid is scale covariant") {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = rng.range(2, 6), cols = rng.range(2, 8);
    auto inst = lattice(rows, cols, 56, 40);
    // Drop a few cells, staying above half occupancy.
    const int drop = rng.range(0, rows * cols / 3);
    for (int k = 0; k < drop; ++k) inst.erase(inst.begin() + static_cast<long>(rng.index(inst.size())));
    const auto base = detect_grid(inst);
    const double s = rng.uniform(0.5, 3.0);
    std::vector<IconInstance> scaled;
    for (const auto& in : inst) {
      scaled.push_back(box_instance(in.centroid.x * s, in.centroid.y * s,
                                    static_cast<int>(std::lround(40 * s)), in.spec));
    }
    const auto other = detect_grid(scaled);
    REQUIRE(base.has_value() == other.has_value());
    if (!base) continue;
    CHECK(base->rows == other->rows);
    CHECK(base->cols == other->cols);
    CHECK(base->matrix == other->matrix);
    CHECK(base->cell_of == other->cell_of);
  }
}

TEST_CASE("context signature examples and permutation invariance") {
  IconInstance arrow = box_instance(100, 600, 40);
  IconInstance board = box_instance(300, 200, 60);
  board.category = Category::Target;
  IconInstance next = box_instance(240, 400, 80);
  next.category = Category::Function;

  Context c;
  c.instances = {arrow, board};
  AbstractContext want;
  want.add(Category::Actionable);
  want.add(Category::Target);
  CHECK(context_signature(c) == want);
  CHECK_FALSE(context_signature(c).grid_present);

  CHECK(context_signature(Context{}).empty());

  Context f;
  f.instances = {next};
  CHECK(to_string(context_signature(f)) == to_string([] {
          AbstractContext a;
          a.add(Category::Function);
          return a;
        }()));

  Rng rng(10);
  Context big;
  big.instances = {arrow, board, next, arrow, board};
  const auto sig = context_signature(big);
  for (int k = 0; k < 20; ++k) {
    rng.shuffle(std::span(big.instances));
    CHECK(context_signature(big) == sig);
  }
}

TEST_CASE("build_context on game frames") {
  // Slingshot in play: one projectile and one board, no grid.
  auto g = make_game(GameId::Slingshot, 1);
  const auto& specs = game_icon_specs(GameId::Slingshot);
  const Context menu = build_context(g->render(), specs);
  CHECK(menu.signature.has(Category::Function));
  CHECK_FALSE(menu.signature.has(Category::Actionable));

  auto lp = make_game(GameId::Linkpair, 1);
  Oracle oracle(1, 0.0);
  lp->inject(emit_trace(oracle.next_action(*lp), 0.0));  // press Play
  const Context grid = build_context(lp->render(), game_icon_specs(GameId::Linkpair));
  CHECK(grid.signature.has(Category::Actionable));
  CHECK(grid.signature.grid_present);
  REQUIRE(grid.grid.has_value());
  CHECK(grid.grid->rows == 6);
  CHECK(grid.grid->cols == 8);

  const Context blank = build_context(Frame(480, 800, {30, 30, 30}), specs);
  CHECK(blank.instances.empty());
  CHECK(blank.signature.empty());
}
