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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "playtest/geometry.hpp"
#include "playtest/scene.hpp"
#include "playtest/trace.hpp"

namespace playtest {

enum class Rule { R1 = 1, R2, R3, R4, R5 };

const char* to_string(Rule r);
std::optional<Rule> parse_rule(std::string_view s);

// Leading coefficient of a fitted swipe curve: the slope k of y = kx + b,
// or a of y = ax^2 + bx + c.
struct DirectionParam {
  enum class Kind { Linear, Quadratic };
  Kind kind = Kind::Linear;
  double value = 0.0;

  friend bool operator==(const DirectionParam&, const DirectionParam&) = default;
};

// Normalized neighbourhood around a demonstrated grid move: 1 = same icon as
// the touched cells, 0 = another icon, -1 = empty cell.
struct SubmatrixPattern {
  int rows = 0;
  int cols = 0;
  std::vector<int> cells;
  std::vector<GridCell> touched;  // offsets within the pattern

  int at(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) +
                 static_cast<std::size_t>(col)];
  }
  friend bool operator==(const SubmatrixPattern&,
                         const SubmatrixPattern&) = default;
};

struct ActionType {
  std::vector<GestureKind> gestures;
  std::optional<Category> anchor;

  friend bool operator==(const ActionType&, const ActionType&) = default;
};

std::string to_string(const ActionType& at);

struct TapSample {
  double x = 0.0;
  double y = 0.0;
  double dur = 0.0;

  friend bool operator==(const TapSample&, const TapSample&) = default;
};

struct TacticPools {
  std::vector<double> dist;
  std::vector<double> dur;
  std::vector<double> sinx;
  std::vector<DirectionParam> direction;
  // Start points with durations: taps, plus swipe starts for R1.
  std::vector<TapSample> taps;
  // Mean unit displacement of the demonstrated swipes.
  Point mean_disp;

  friend bool operator==(const TacticPools&, const TacticPools&) = default;
};

struct Tactic {
  AbstractContext signature;
  ActionType action_type;
  Rule rule = Rule::R1;
  TacticPools pools;
  std::vector<SubmatrixPattern> patterns;

  friend bool operator==(const Tactic&, const Tactic&) = default;
};

struct Provenance {
  std::string demo_session;
  std::string icon_set;  // hex icon_set_hash

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TacticSet {
  static constexpr int kVersion = 1;

  int version = kVersion;
  Provenance provenance;
  std::vector<Tactic> tactics;

  friend bool operator==(const TacticSet&, const TacticSet&) = default;
};

// Versioned JSON document. Throws FormatError on schema violations.
std::string save_tactics(const TacticSet& set);
TacticSet load_tactics(std::string_view json);
void save_tactics_file(const std::filesystem::path& path, const TacticSet& set);
TacticSet load_tactics_file(const std::filesystem::path& path);

}  // namespace playtest
