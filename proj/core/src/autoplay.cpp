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

// Testing mode. Only Game's black-box surface is used here: render() for
// frames, inject() for trace text, status() for the final score.

#include <chrono>
#include <cmath>
#include <set>

#include "playtest/apply.hpp"
#include "playtest/errors.hpp"
#include "playtest/harness.hpp"

namespace playtest {
namespace {

constexpr double kStepSeconds = 9.0;

class Session {
 public:
  Session(Game& game, const PlayOptions& options, const char* mode)
      : game_(game), options_(options), started_(std::chrono::steady_clock::now()) {
    report_.game = to_string(game.id());
    report_.seed = options.seed;
    report_.mode = mode;
  }

  // Injects one action; returns whether the game state changed.
  bool issue(const PlannedAction& p, const Frame& frame) {
    const double base_ts = 1000.0 + kStepSeconds * report_.actions_issued;
    const std::string events = action_to_events(p, kGameScreen, base_ts, tracking_id_);
    tracking_id_ += static_cast<std::uint32_t>(p.gestures.size());
    const int step = report_.actions_issued++;
    const bool changed = game_.inject(events).state_changed;
    report_.state_changing += changed;
    if (options_.on_step) {
      StepInfo info;
      info.step = step;
      info.frame = &frame;
      info.planned = &p;
      info.changed = changed;
      info.status = game_.status();
      stopped_ = !options_.on_step(info);
    }
    return changed;
  }

  bool stopped() const { return stopped_; }

  TestReport finish() {
    const GameStatus s = game_.status();
    report_.score = s.score;
    report_.level = s.level;
    if (report_.actions_issued > 0) {
      report_.valid_action_rate =
          static_cast<double>(report_.state_changing) / report_.actions_issued;
      report_.fallback_rate = static_cast<double>(report_.fallback) / report_.actions_issued;
    }
    report_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    return report_;
  }

  TestReport& report() { return report_; }

 private:
  Game& game_;
  PlayOptions options_;
  std::chrono::steady_clock::time_point started_;
  TestReport report_;
  std::uint32_t tracking_id_ = 1;
  bool stopped_ = false;
};

PlannedAction exploration(const Gesture& g) {
  PlannedAction p;
  p.gestures = {g};
  return p;
}

Gesture random_tap(Rng& rng) {
  const Point p{static_cast<double>(rng.range(0, kGameScreen.width - 1)),
                static_cast<double>(rng.range(0, kGameScreen.height - 1))};
  return make_gesture(p, p, std::round(rng.uniform(0.05, 0.2) * 1000.0) / 1000.0);
}

Gesture random_swipe(Rng& rng) {
  const Point a{static_cast<double>(rng.range(0, kGameScreen.width - 1)),
                static_cast<double>(rng.range(0, kGameScreen.height - 1))};
  const Point b{static_cast<double>(rng.range(0, kGameScreen.width - 1)),
                static_cast<double>(rng.range(0, kGameScreen.height - 1))};
  return make_gesture(a, b, std::round(rng.uniform(0.1, 1.0) * 1000.0) / 1000.0);
}

}  // namespace

bool TestReport::same_outcome(const TestReport& o) const {
  return game == o.game && seed == o.seed && mode == o.mode && score == o.score &&
         level == o.level && actions_issued == o.actions_issued && valid == o.valid &&
         invalid == o.invalid && fallback == o.fallback && state_changing == o.state_changing &&
         valid_action_rate == o.valid_action_rate &&
         distinct_signatures == o.distinct_signatures && fallback_rate == o.fallback_rate &&
         step_errors == o.step_errors;
}

TestReport run_test(Game& game, const TacticSet& tactics, const std::vector<IconSpec>& specs,
                    const PlayOptions& options) {
  Session session(game, options, "tactics");
  TestReport& r = session.report();
  Rng rng(mix_seed(options.seed, 0x117));
  std::set<AbstractContext> seen;
  for (int step = 0; step < options.budget && !session.stopped(); ++step) {
    const Frame frame = game.render();
    const Context ctx = build_context(frame, specs, options.match);
    seen.insert(ctx.signature);
    std::optional<PlannedAction> planned;
    if (const auto idx = match_context(ctx, tactics, rng)) {
      try {
        planned = synthesize_action(tactics.tactics[*idx], *idx, ctx, rng, kGameScreen);
      } catch (const Error&) {
        ++r.step_errors;
      }
    }
    if (planned) {
      const bool changed = session.issue(*planned, frame);
      ++(changed ? r.valid : r.invalid);
    } else {
      // Unseen scene or a tactic that could not be concretized: explore.
      ++r.fallback;
      session.issue(exploration(random_tap(rng)), frame);
    }
  }
  r.distinct_signatures = static_cast<int>(seen.size());
  return session.finish();
}

TestReport run_random_baseline(Game& game, const PlayOptions& options) {
  Session session(game, options, "baseline");
  TestReport& r = session.report();
  Rng rng(mix_seed(options.seed, 0xba5e));
  for (int step = 0; step < options.budget && !session.stopped(); ++step) {
    const Gesture g = rng.chance(0.5) ? random_tap(rng) : random_swipe(rng);
    // Rendering is only needed when someone is watching.
    const Frame frame = options.on_step ? game.render() : Frame{};
    ++(session.issue(exploration(g), frame) ? r.valid : r.invalid);
  }
  return session.finish();
}

}  // namespace playtest
