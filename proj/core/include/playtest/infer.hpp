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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "playtest/rng.hpp"
#include "playtest/scene.hpp"
#include "playtest/tactic.hpp"
#include "playtest/trace.hpp"

namespace playtest {

struct ContextActionPair {
  Context context;
  Action action;
  std::int64_t t = 0;  // shared session timestamp, ms
};

struct DemoPairs {
  std::vector<ContextActionPair> pairs;
  int dropped_empty = 0;  // snapshots whose trace held no gesture
  std::string session_id;
};

// Reads `<t>.ppm` / `<t>.txt` pairs in timestamp order. Throws OrphanFile
// for a file without its counterpart.
DemoPairs pair_demo(const std::filesystem::path& dir,
                    const std::vector<IconSpec>& specs,
                    const MatchOptions& match = {});

struct ContextCluster {
  AbstractContext signature;
  std::vector<std::size_t> members;  // indexes into the pair list
};

// Exact grouping by signature, ordered by signature.
std::vector<ContextCluster> cluster_contexts(
    const std::vector<ContextActionPair>& pairs);

std::vector<GestureKind> gesture_sequence(const Action& action);

// Modal gesture sequence (strict majority) plus the anchor category every
// modal action starts on, if any. Throws NoMajority.
ActionType identify_action_type(const std::vector<ContextActionPair>& pairs,
                                const ContextCluster& cluster);

Rule select_rule(const AbstractContext& signature, const ActionType& type);

// Full fitted curve; for Linear a == 0 and y = b x + c.
struct CurveFit {
  DirectionParam param;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x) const { return (a * x + b) * x + c; }
};

// Quadratic through all three points when possible, otherwise the line
// through p0 and p1. Throws VerticalDegenerate when that line is vertical.
CurveFit fit_curve(Point p0, Point p1, Point p2);
inline DirectionParam fit_direction(Point p0, Point p1, Point p2) {
  return fit_curve(p0, p1, p2).param;
}

// Action-oriented submatrix extraction over an 8-neighbourhood. Throws
// HeterogeneousTouch when the touched cells hold different icons.
SubmatrixPattern extract_submatrix(const CellGrid& matrix,
                                   const std::vector<GridCell>& touched);

struct InferStats {
  int clusters = 0;
  int no_majority = 0;
  int discarded_pairs = 0;
};

struct InferResult {
  TacticSet tactics;
  InferStats stats;
};

// Throws EmptyDemo when no cluster yields a tactic.
InferResult infer_tactics(const std::vector<ContextActionPair>& pairs, Rng& rng);

}  // namespace playtest
