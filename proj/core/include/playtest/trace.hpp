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
#include <string>
#include <string_view>
#include <vector>

#include "playtest/geometry.hpp"

namespace playtest {

enum class EventCode { TrackingId, PositionX, PositionY, SynReport, Other };

inline constexpr std::uint32_t kTrackingIdRelease = 0xFFFFFFFFu;

// One `getevent -lt` line. Timestamps are kept as integral microseconds so
// that emit/parse round-trips are exact.
struct TraceEvent {
  std::int64_t ts_us = 0;
  EventCode code = EventCode::Other;
  std::uint32_t value = 0;
  // "<EV_TYPE> <CODE>" as written in the file; filled for every event.
  std::string raw;

  double seconds() const { return static_cast<double>(ts_us) * 1e-6; }

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

// Parses trace-file text into events in file order. Header lines
// ("add device ...", "name: ...") and blank lines are skipped; any other
// line that does not follow the grammar throws MalformedLine (1-based).
std::vector<TraceEvent> parse_trace(std::string_view text);

struct RawSegment {
  std::vector<TraceEvent> events;
  Point first;
  Point last;
  std::int64_t ts_first_us = 0;
  // Lift time: the later of the last coordinate report and the release.
  std::int64_t ts_last_us = 0;
  // Input ended before the segment's release marker.
  bool dangling = false;
};

struct Segmentation {
  std::vector<RawSegment> segments;
  int dropped_without_coordinates = 0;
  int dangling = 0;
  int releases_consumed = 0;
};

Segmentation segment_gestures(const std::vector<TraceEvent>& events);

enum class GestureKind { Tap, Swipe };

const char* to_string(GestureKind kind);

struct Gesture {
  GestureKind kind = GestureKind::Tap;
  Point start;
  Point end;
  double dist = 0.0;  // px
  double dur = 0.0;   // s
  double sinx = 0.0;  // (end.y - start.y) / dist, swipes only

  friend bool operator==(const Gesture&, const Gesture&) = default;
};

inline constexpr double kSwipeMinDistance = 20.0;
inline constexpr double kSwipeMinDuration = 0.2;

// Tap/swipe decision. Distance alone decides; duration never flips the kind.
GestureKind classify_kind(double dist, double dur);

Gesture classify_segment(const RawSegment& seg);

// Builds a gesture from its endpoints with derived dist/sinx and the kind
// that classify_kind assigns.
Gesture make_gesture(Point start, Point end, double dur);

struct Action {
  std::vector<Gesture> gestures;
  std::int64_t demo_ts = 0;  // ms since session start
};

// parse -> segment -> classify.
std::vector<Gesture> gestures_from_trace(std::string_view text);

struct EmitOptions {
  ScreenBounds screen;
  std::uint32_t first_tracking_id = 1;
  double gesture_gap = 0.05;  // s between consecutive gestures
  int swipe_reports = 10;     // coordinate reports per swipe, endpoints included
};

// Serializes an action in the getevent grammar. Throws EmptyAction for an
// empty gesture list and OutOfBounds for off-screen coordinates.
std::string emit_trace(const Action& action, double base_ts,
                       const EmitOptions& options = {});

// Formats a single event line (no trailing newline).
std::string format_event(std::int64_t ts_us, std::string_view type,
                         std::string_view code, std::uint32_t value);

}  // namespace playtest
