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

// Game contract tests. These reach behind the black-box interface through
// the read-only views, which autoplay never does.

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "buttonrow.hpp"
#include "doctest.h"
#include "game_impl.hpp"
#include "linkpair.hpp"
#include "playtest/errors.hpp"
#include "playtest/game.hpp"
#include "playtest/scene.hpp"
#include "slider.hpp"

using namespace playtest;

namespace {

constexpr GameId kAll[] = {GameId::Slingshot, GameId::Linkpair, GameId::Slider,
                           GameId::Buttonrow};

void step(Game& g, const Action& a, double& t) {
  g.inject(emit_trace(a, t));
  t += 1.0;
}

std::string tap(double x, double y, double t) {
  Action a;
  a.gestures.push_back(make_gesture({x, y}, {x, y}, 0.08));
  return emit_trace(a, t);
}

int count_named(const Context& c, const std::vector<IconSpec>& specs, const std::string& name) {
  int n = 0;
  for (const auto& in : c.instances) n += specs[static_cast<std::size_t>(in.spec)].name == name;
  return n;
}

}  // namespace

TEST_CASE("game ids") {
  for (GameId id : kAll) CHECK(parse_game_id(to_string(id)) == id);
  CHECK_THROWS_AS(parse_game_id("tetris"), UnknownGame);
  std::set<Rule> exercised;
  for (const auto& e : game_catalog()) {
    exercised.insert(e.exercises.begin(), e.exercises.end());
  }
  CHECK(exercised == std::set<Rule>{Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5});
}

TEST_CASE("reset is deterministic per seed") {
  for (GameId id : kAll) {
    auto a = make_game(id, 7);
    auto b = make_game(id, 7);
    CHECK(a->render() == b->render());
    Oracle oa(3), ob(3);
    double t = 0;
    for (int i = 0; i < 30; ++i) {
      const Action x = oa.next_action(*a);
      const Action y = ob.next_action(*b);
      CHECK(x.gestures == y.gestures);
      a->inject(emit_trace(x, t));
      b->inject(emit_trace(y, t));
      t += 1;
      CHECK(a->render() == b->render());
      CHECK(a->status() == b->status());
    }
    a->reset(7);
    CHECK(a->render() == make_game(id, 7)->render());
    CHECK(a->status() == GameStatus{});
  }
}

TEST_CASE("golden initial and in-play frames") {
  // Frozen hashes of (menu frame, frame after the Play tap) for seed 1.
  const std::map<GameId, std::pair<std::uint64_t, std::uint64_t>> golden{
      {GameId::Slingshot, {11417145498491857536ULL, 2823739039909636418ULL}},
      {GameId::Linkpair, {11484446394022021048ULL, 724608935818924778ULL}},
      {GameId::Slider, {17162184163234928182ULL, 13450426702125522496ULL}},
      {GameId::Buttonrow, {15314100794739604893ULL, 14048112349101572643ULL}},
  };
  for (GameId id : kAll) {
    auto g = make_game(id, 1);
    const std::uint64_t menu = frame_hash(g->render());
    g->inject(tap(240, 400, 0.0));
    const std::uint64_t play = frame_hash(g->render());
    MESSAGE(std::string(to_string(id)) << " " << menu << " " << play);
    CHECK(menu == golden.at(id).first);
    CHECK(play == golden.at(id).second);
  }
}

TEST_CASE("menu shows exactly one Function icon, Play") {
  for (GameId id : kAll) {
    for (std::uint64_t seed : {1, 2, 3}) {
      auto g = make_game(id, seed);
      const auto& specs = game_icon_specs(id);
      const Context c = build_context(g->render(), specs);
      int functions = 0;
      for (const auto& in : c.instances) functions += in.category == Category::Function;
      CHECK(functions == 1);
      CHECK(count_named(c, specs, "play") == 1);
    }
  }
}

TEST_CASE("tap on empty background changes nothing") {
  for (GameId id : kAll) {
    auto g = make_game(id, 1);
    const Frame before = g->render();
    CHECK_FALSE(g->inject(tap(5, 5, 0.0)).state_changed);
    CHECK(g->render() == before);
    CHECK_FALSE(g->inject("garbage\n").state_changed);
  }
}

TEST_CASE("icons of one game are mutually distinct under NCC") {
  for (GameId id : kAll) {
    const auto& specs = game_icon_specs(id);
    for (std::size_t i = 0; i < specs.size(); ++i) {
      for (std::size_t j = 0; j < specs.size(); ++j) {
        if (i == j) continue;
        const Frame& a = specs[i].image;
        const Frame& b = specs[j].image;
        if (a.width() != b.width() || a.height() != b.height()) continue;
        CHECK_MESSAGE(ncc_at(a, b, 0, 0) < 0.85, specs[i].name << " vs " << specs[j].name);
      }
    }
  }
}

TEST_CASE("slingshot: ten misses lead to the Retry scene") {
  auto g = make_game(GameId::Slingshot, 1);
  double t = 0;
  g->inject(tap(240, 400, t));
  auto* sg = dynamic_cast<games::SceneGame*>(g.get());
  REQUIRE(sg != nullptr);
  REQUIRE(sg->scene() == games::Scene::Playing);
  for (int i = 0; i < 10; ++i) {
    t += 1;
    Action pull_up;  // launches downward, away from every target position
    pull_up.gestures.push_back(make_gesture({240, 560}, {240, 480}, 0.5));
    CHECK(g->inject(emit_trace(pull_up, t)).state_changed);
  }
  CHECK(sg->scene() == games::Scene::Failed);
  CHECK(g->status().over);
  CHECK(g->status().score == 0);
  const auto& specs = game_icon_specs(GameId::Slingshot);
  const Context c = build_context(g->render(), specs);
  CHECK(count_named(c, specs, "retry") == 1);
  g->inject(tap(240, 400, t + 1));
  CHECK(sg->scene() == games::Scene::Playing);
}

TEST_CASE("slingshot: an aimed pull scores") {
  auto g = make_game(GameId::Slingshot, 5);
  Oracle oracle(5, 0.0);
  double t = 0;
  step(*g, oracle.next_action(*g), t);  // Play
  const auto before = g->status().score;
  step(*g, oracle.next_action(*g), t);
  CHECK(g->status().score > before);
}

TEST_CASE("slingshot oracle demo has at least 30 scoring swipes in 40 actions") {
  auto g = make_game(GameId::Slingshot, 1);
  Oracle oracle(1);
  double t = 0;
  int scoring = 0;
  for (int i = 0; i < 40; ++i) {
    const auto before = g->status().score;
    const Action a = oracle.next_action(*g);
    step(*g, a, t);
    scoring += g->status().score > before && a.gestures.at(0).kind == GestureKind::Swipe;
  }
  MESSAGE("scoring swipes: " << scoring);
  CHECK(scoring >= 30);
}

TEST_CASE("linkpair: logical board equals the detected grid on every frame") {
  for (std::uint64_t seed : {1, 2}) {
    auto g = make_game(GameId::Linkpair, seed);
    const auto* view = dynamic_cast<const games::LinkpairView*>(g.get());
    const auto* sg = dynamic_cast<const games::SceneGame*>(g.get());
    REQUIRE(view != nullptr);
    Oracle oracle(seed);
    double t = 0;
    const auto& specs = game_icon_specs(GameId::Linkpair);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
      step(*g, oracle.next_action(*g), t);
      if (sg->scene() != games::Scene::Playing) continue;
      const Context c = build_context(g->render(), specs);
      const games::LinkBoard& b = view->board();
      if (b.remaining() == 0) continue;
      if (!c.grid) {
        // Late boards thin out; below half occupancy of the occupied span
        // there is no grid by rule.
        int r0 = games::kLinkRows, r1 = -1, c0 = games::kLinkCols, c1 = -1;
        for (int r = 0; r < games::kLinkRows; ++r) {
          for (int col = 0; col < games::kLinkCols; ++col) {
            if (b.at({r, col}) == kEmptyCell) continue;
            r0 = std::min(r0, r), r1 = std::max(r1, r);
            c0 = std::min(c0, col), c1 = std::max(c1, col);
          }
        }
        const int span = (r1 - r0 + 1) * (c1 - c0 + 1);
        CHECK_MESSAGE((r1 == r0 || c1 == c0 || 2 * b.remaining() < span),
                      "seed " << seed << " step " << i << " remaining " << b.remaining());
        continue;
      }
      // The detected grid spans only occupied rows/columns, so map each
      // occupant back to its logical cell by position.
      const auto& grid = *c.grid;
      for (int r = 0; r < grid.rows; ++r) {
        for (int col = 0; col < grid.cols; ++col) {
          const int occ = grid.occupant_at(r, col);
          if (occ < 0) continue;
          const Point p = c.instances[static_cast<std::size_t>(occ)].centroid;
          const games::LinkCell cell{static_cast<int>((p.y - games::kLinkOriginY) / games::kLinkPitch),
                                     static_cast<int>((p.x - games::kLinkOriginX) / games::kLinkPitch)};
          CHECK(b.at(cell) == grid.at(r, col));
        }
      }
      int filled = 0;
      for (int v : grid.matrix) filled += v != kEmptyCell;
      CHECK(filled == b.remaining());
      ++checked;
    }
    CHECK(checked > 20);
  }
}

TEST_CASE("linkpair: a pair of equal connectable fruits clears for 10 points") {
  auto g = make_game(GameId::Linkpair, 3);
  const auto* view = dynamic_cast<const games::LinkpairView*>(g.get());
  double t = 0;
  g->inject(tap(240, 400, t));
  const auto moves = view->board().moves();
  REQUIRE_FALSE(moves.empty());
  const auto [a, b] = moves.front();
  const int before = view->board().remaining();
  Action act;
  for (auto c : {a, b}) {
    const Point p = games::link_cell_box(c).center();
    act.gestures.push_back(make_gesture(p, p, 0.08));
  }
  CHECK(g->inject(emit_trace(act, 1.0)).state_changed);
  CHECK(view->board().remaining() == before - 2);
  CHECK(g->status().score == 10);
}

TEST_CASE("slider: slides conserve value and spawn 2 or 4") {
  auto g = make_game(GameId::Slider, 1);
  const auto* view = dynamic_cast<const games::SliderView*>(g.get());
  const auto* sg = dynamic_cast<const games::SceneGame*>(g.get());
  REQUIRE(view != nullptr);
  g->inject(tap(240, 400, 0.0));
  Rng rng(1);
  int moved = 0;
  for (int i = 0; i < 200 && sg->scene() == games::Scene::Playing; ++i) {
    const std::int64_t before = view->board().total();
    const games::SlideBoard snapshot = view->board();
    const double ang = rng.index(4) * 1.5707963267948966;
    Action a;
    a.gestures.push_back(make_gesture({240, 400}, {240 + 100 * std::cos(ang), 400 + 100 * std::sin(ang)}, 0.3));
    const bool changed = g->inject(emit_trace(a, 1.0 + i)).state_changed;
    const std::int64_t delta = view->board().total() - before;
    if (changed) {
      ++moved;
      CHECK((delta == 2 || delta == 4));
    } else {
      CHECK(view->board() == snapshot);
    }
  }
  CHECK(moved > 20);
}

TEST_CASE("buttonrow: captured region never shrinks") {
  for (std::uint64_t seed : {1, 2, 3}) {
    auto g = make_game(GameId::Buttonrow, seed);
    const auto* view = dynamic_cast<const games::ButtonrowView*>(g.get());
    REQUIRE(view != nullptr);
    Oracle oracle(seed, 0.3);
    double t = 0;
    int last = view->captured();
    const auto* sg = dynamic_cast<const games::SceneGame*>(g.get());
    int last_level = 0;
    bool was_playing = false;
    for (int i = 0; i < 120; ++i) {
      step(*g, oracle.next_action(*g), t);
      const bool playing = sg->scene() == games::Scene::Playing;
      if (g->status().level != last_level || !was_playing) {  // a new field starts over
        last_level = g->status().level;
        was_playing = playing;
        last = view->captured();
        continue;
      }
      CHECK(view->captured() >= last);
      last = view->captured();
      was_playing = playing;
    }
  }
}

TEST_CASE("score and level are monotone within a run") {
  for (GameId id : kAll) {
    for (std::uint64_t seed : {1, 2}) {
      auto g = make_game(id, seed);
      Oracle oracle(seed, 0.3);
      Rng rng(seed);
      double t = 0;
      GameStatus last = g->status();
      for (int i = 0; i < 150; ++i) {
        if (rng.chance(0.3)) {
          t += 1;
          g->inject(tap(rng.range(0, 479), rng.range(0, 799), t));
        } else {
          step(*g, oracle.next_action(*g), t);
        }
        const GameStatus s = g->status();
        CHECK(s.score >= last.score);
        CHECK(s.level >= last.level);
        last = s;
      }
    }
  }
}
