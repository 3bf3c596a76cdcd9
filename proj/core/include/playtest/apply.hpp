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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "playtest/geometry.hpp"
#include "playtest/rng.hpp"
#include "playtest/scene.hpp"
#include "playtest/tactic.hpp"
#include "playtest/trace.hpp"

namespace playtest {

struct PlannedAction {
  std::vector<Gesture> gestures;
  int tactic_id = -1;  // index into the tactic set; -1 for exploration
  Rule rule = Rule::R1;
};

// Index of a tactic whose signature equals the context's, chosen uniformly
// among equal matches.
std::optional<std::size_t> match_context(const Context& context,
                                         const TacticSet& set, Rng& rng);

struct SinxDirection {
  double sinx = 0.0;
};

using SwipeDirection = std::variant<DirectionParam, SinxDirection>;

// Swipe endpoint at chord distance `dist` from `origin`.
//  - Linear(k): line of slope k through origin; root picked by disp_hint.
//  - Quadratic(a): y - y1 = a(x^2 - x1^2) + b(x - x1), with b fixed by the
//    target; the branch picked by disp_hint. Throws DegenerateTarget when
//    the target shares the origin's x, NoConvergence on search failure, and
//    HintConflict when neither branch agrees with disp_hint.
//  - Sinx: dy = dist * sinx, dx = +-dist * sqrt(1 - sinx^2) by disp_hint.
Point solve_endpoint(Point origin, std::optional<Point> target, double dist,
                     const SwipeDirection& direction, Point disp_hint);

struct Placement {
  int row = 0;  // top-left of the pattern in the grid
  int col = 0;
  int icon = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
  friend auto operator<=>(const Placement&, const Placement&) = default;
};

// All placements where 1-cells share one icon index i, 0-cells hold any
// value other than i, and -1 cells match anything.
std::vector<Placement> matching_placements(const CellGrid& grid,
                                           const SubmatrixPattern& pattern);

// Grid cells under the touched offsets of one uniformly chosen placement.
std::optional<std::vector<GridCell>> match_pattern(const CellGrid& grid,
                                                   const SubmatrixPattern& pattern,
                                                   Rng& rng);

// Concretizes a tactic for a live context. Throws NoApplicablePattern (R4)
// and MissingInstance when a required icon is absent.
PlannedAction synthesize_action(const Tactic& tactic, std::size_t tactic_id,
                                const Context& context, Rng& rng,
                                const ScreenBounds& screen = {});

inline constexpr double kInterGestureGap = 0.05;

std::string action_to_events(const PlannedAction& planned,
                             const ScreenBounds& screen, double base_ts,
                             std::uint32_t first_tracking_id = 1);

}  // namespace playtest
