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

#include <benchmark/benchmark.h>

#include "playtest/game.hpp"
#include "playtest/scene.hpp"

namespace {

using namespace playtest;

// Full context extraction on a live frame of each game.
void BM_BuildContext(benchmark::State& state) {
  const auto id = static_cast<GameId>(state.range(0));
  auto game = make_game(id, 7);
  const Frame frame = game->render();
  const auto& specs = game_icon_specs(id);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_context(frame, specs));
  }
  state.SetLabel(to_string(id));
}
BENCHMARK(BM_BuildContext)
    ->DenseRange(0, 3)
    ->Unit(benchmark::kMillisecond);

void BM_NccAt(benchmark::State& state) {
  const auto& specs = game_icon_specs(GameId::Buttonrow);
  auto game = make_game(GameId::Buttonrow, 7);
  const Frame frame = game->render();
  const Frame& tmpl = specs.front().image;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ncc_at(frame, tmpl, 140, 360));
  }
}
BENCHMARK(BM_NccAt);

}  // namespace
