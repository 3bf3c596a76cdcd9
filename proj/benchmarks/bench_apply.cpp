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

#include "playtest/apply.hpp"
#include "playtest/infer.hpp"

namespace {

using namespace playtest;

void BM_SolveLinear(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_endpoint({240, 560}, std::nullopt, 150.0, DirectionParam{DirectionParam::Kind::Linear, -1.5}, {-1, 1}));
  }
}
BENCHMARK(BM_SolveLinear);

void BM_SolveQuadratic(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_endpoint({240, 560}, Point{120, 200}, 150.0,
                                            DirectionParam{DirectionParam::Kind::Quadratic, 0.002}, {1, 1}));
  }
}
BENCHMARK(BM_SolveQuadratic);

void BM_FitCurve(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_curve({0, 0}, {1, 1}, {2, 4}));
  }
}
BENCHMARK(BM_FitCurve);

void BM_MatchingPlacements(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CellGrid grid{n, n, {}};
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) grid.cells.push_back((r * 7 + c * 3) % 5);
  }
  SubmatrixPattern pattern{2, 3, {1, 0, -1, -1, 0, 1}, {{0, 0}, {1, 2}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(matching_placements(grid, pattern));
  }
}
BENCHMARK(BM_MatchingPlacements)->Arg(8)->Arg(32);

}  // namespace
