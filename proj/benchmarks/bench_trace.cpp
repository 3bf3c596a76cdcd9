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

#include <string>

#include "playtest/trace.hpp"

namespace {

using namespace playtest;

std::string sample_trace(int actions) {
  std::string text;
  for (int i = 0; i < actions; ++i) {
    Action a;
    a.gestures.push_back(make_gesture({100.0 + i % 50, 200.0}, {300.0, 420.0 + i % 80}, 0.3));
    a.gestures.push_back(make_gesture({50.0, 60.0}, {50.0, 60.0}, 0.08));
    text += emit_trace(a, 1.0 + i);
  }
  return text;
}

void BM_ParseSegmentClassify(benchmark::State& state) {
  const std::string text = sample_trace(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gestures_from_trace(text));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseSegmentClassify)->Arg(1)->Arg(100);

void BM_Emit(benchmark::State& state) {
  Action a;
  a.gestures.push_back(make_gesture({100, 200}, {300, 420}, 0.3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(emit_trace(a, 12.5));
  }
}
BENCHMARK(BM_Emit);

}  // namespace
