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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "playtest/apply.hpp"
#include "playtest/game.hpp"
#include "playtest/infer.hpp"
#include "playtest/scene.hpp"
#include "playtest/tactic.hpp"

namespace playtest {

// ---- demo recording -------------------------------------------------------

// Supplies the events of one action each time the player is prompted.
class ActionSource {
 public:
  virtual ~ActionSource() = default;
  virtual std::string name() const = 0;
  // Trace text for one action performed on `frame`, or nullopt if nothing
  // arrived within `timeout`. `t_ms` is the snapshot's session time.
  virtual std::optional<std::string> next(const Frame& frame, std::int64_t t_ms,
                                          std::chrono::milliseconds timeout) = 0;
};

// Ground-truth source; only valid for games created by make_game.
class OracleSource final : public ActionSource {
 public:
  OracleSource(const Game& game, std::uint64_t seed, double noise = 0.1)
      : game_(game), oracle_(seed, noise) {}
  std::string name() const override { return "oracle"; }
  std::optional<std::string> next(const Frame& frame, std::int64_t t_ms,
                                  std::chrono::milliseconds timeout) override;

 private:
  const Game& game_;
  Oracle oracle_;
  std::uint32_t tracking_id_ = 1;
};

struct RecordOptions {
  int actions = 40;
  // Snapshot period. Sources that answer instantly (the oracle) do not wait
  // for it; timestamps still advance by one period per snapshot.
  double period_s = 9.0;
  // Real-time waiting for slow sources, up to 3 periods per prompt.
  bool realtime = false;
};

struct DemoManifest {
  std::string game;
  std::uint64_t seed = 0;
  double period_s = 9.0;
  std::string source;
  std::string session_id;
  std::vector<std::int64_t> pairs;  // snapshot timestamps, ms

  friend bool operator==(const DemoManifest&, const DemoManifest&) = default;
};

// Snapshot -> prompt -> record -> inject, `options.actions` times. Writes
// `<t>.ppm`, `<t>.txt` and manifest.json into `out`. On a prompt with no
// answer the pair is still written (empty trace), the manifest is saved, and
// SourceTimeout is thrown.
DemoManifest record_demo(Game& game, ActionSource& source, const std::filesystem::path& out,
                         const RecordOptions& options = {});

DemoManifest oracle_play(GameId game, std::uint64_t seed, int actions,
                         const std::filesystem::path& out);

DemoManifest read_manifest(const std::filesystem::path& dir);

// pair_demo + infer_tactics, with provenance filled in.
InferResult infer_from_demo(const std::filesystem::path& dir, const std::vector<IconSpec>& specs,
                            std::uint64_t seed, const MatchOptions& match = {});

// ---- autoplay -------------------------------------------------------------

struct TestReport {
  std::string game;
  std::uint64_t seed = 0;
  std::string mode;  // "tactics" or "baseline"
  std::int64_t score = 0;
  int level = 0;
  int actions_issued = 0;
  int valid = 0;     // planned actions that changed state
  int invalid = 0;   // planned actions that did not
  int fallback = 0;  // exploration taps on unmatched scenes
  int state_changing = 0;
  double valid_action_rate = 0.0;  // state_changing / actions_issued
  int distinct_signatures = 0;
  double fallback_rate = 0.0;
  int step_errors = 0;
  double wall_seconds = 0.0;

  // Field equality ignoring wall time.
  bool same_outcome(const TestReport& other) const;
};

// What the tester did on one step, for live observers.
struct StepInfo {
  int step = 0;
  const Frame* frame = nullptr;             // the frame the action was planned on
  const PlannedAction* planned = nullptr;   // tactic_id -1 for exploration
  bool changed = false;
  GameStatus status;
};

struct PlayOptions {
  int budget = 500;  // actions
  std::uint64_t seed = 0;
  MatchOptions match;
  // Called after every injected action; returning false ends the run early.
  std::function<bool(const StepInfo&)> on_step;
};

// The tester sees only rendered frames and injects only trace text.
TestReport run_test(Game& game, const TacticSet& tactics, const std::vector<IconSpec>& specs,
                    const PlayOptions& options);

// Uniform random taps and swipes (50/50) anywhere on screen.
TestReport run_random_baseline(Game& game, const PlayOptions& options);

std::string report_to_json(const TestReport& report);
TestReport report_from_json(std::string_view text);
void save_report(const std::filesystem::path& path, const TestReport& report);
TestReport load_report(const std::filesystem::path& path);
// Side-by-side table of score, level and rates.
std::string compare_reports(const TestReport& a, const TestReport& b);

}  // namespace playtest
