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

#include "playtest/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "playtest/errors.hpp"

namespace playtest {
namespace {

constexpr std::string_view kDevice = "/dev/input/event2";

bool is_space(char c) { return c == ' ' || c == '\t'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (is_space(s.front()) || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (is_space(s.back()) || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Minimal cursor over one line.
class LineReader {
 public:
  explicit LineReader(std::string_view s) : s_(s) {}

  bool done() const { return pos_ >= s_.size(); }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::size_t skip_spaces() {
    std::size_t n = 0;
    while (pos_ < s_.size() && is_space(s_[pos_])) {
      ++pos_;
      ++n;
    }
    return n;
  }
  std::string_view digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  std::string_view token() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !is_space(s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::optional<TraceEvent> parse_event_line(std::string_view line) {
  LineReader r(line);
  if (!r.eat('[')) return std::nullopt;
  r.skip_spaces();
  const std::string_view secs = r.digits();
  if (secs.empty() || secs.size() > 12) return std::nullopt;
  if (!r.eat('.')) return std::nullopt;
  const std::string_view micros = r.digits();
  if (micros.size() != 6) return std::nullopt;
  if (!r.eat(']')) return std::nullopt;
  if (r.skip_spaces() == 0) return std::nullopt;

  const std::string_view device = r.token();
  if (device.size() < 2 || device.back() != ':') return std::nullopt;
  if (r.skip_spaces() == 0) return std::nullopt;
  const std::string_view type = r.token();
  if (type.size() < 4 || type.substr(0, 3) != "EV_") return std::nullopt;
  if (r.skip_spaces() == 0) return std::nullopt;
  const std::string_view code = r.token();
  if (code.empty()) return std::nullopt;
  if (r.skip_spaces() == 0) return std::nullopt;
  const std::string_view hex = r.token();
  r.skip_spaces();
  if (!r.done() || hex.empty() || hex.size() > 8) return std::nullopt;

  std::uint32_t value = 0;
  for (char c : hex) {
    const int d = hex_digit(c);
    if (d < 0) return std::nullopt;
    value = (value << 4) | static_cast<std::uint32_t>(d);
  }

  std::int64_t ts = 0;
  for (char c : secs) ts = ts * 10 + (c - '0');
  std::int64_t us = 0;
  for (char c : micros) us = us * 10 + (c - '0');

  TraceEvent ev;
  ev.ts_us = ts * 1'000'000 + us;
  ev.value = value;
  ev.raw = std::string(type) + " " + std::string(code);
  if (type == "EV_ABS" && code == "ABS_MT_TRACKING_ID") {
    ev.code = EventCode::TrackingId;
  } else if (type == "EV_ABS" && code == "ABS_MT_POSITION_X") {
    ev.code = EventCode::PositionX;
  } else if (type == "EV_ABS" && code == "ABS_MT_POSITION_Y") {
    ev.code = EventCode::PositionY;
  } else if (type == "EV_SYN" && code == "SYN_REPORT") {
    ev.code = EventCode::SynReport;
  } else {
    ev.code = EventCode::Other;
  }
  return ev;
}

bool is_header(std::string_view line) {
  return line.starts_with("add device") || line.starts_with("name:");
}

bool is_open(const TraceEvent& ev) {
  return ev.code == EventCode::TrackingId && ev.value != kTrackingIdRelease;
}

// A zero tracking id counts as a release when the next tracking-id event is
// an open, or when no further tracking-id event follows.
bool zero_acts_as_release(const std::vector<TraceEvent>& events,
                          std::size_t index) {
  for (std::size_t j = index + 1; j < events.size(); ++j) {
    if (events[j].code == EventCode::TrackingId) {
      return is_open(events[j]) && events[j].value != 0;
    }
  }
  return true;
}

class SegmentBuilder {
 public:
  void open(const TraceEvent& ev) {
    active_ = true;
    seg_ = RawSegment{};
    x_.reset();
    y_.reset();
    pending_ = false;
    samples_ = 0;
    seg_.events.push_back(ev);
  }

  bool active() const { return active_; }

  void add(const TraceEvent& ev) {
    seg_.events.push_back(ev);
    switch (ev.code) {
      case EventCode::PositionX:
        x_ = static_cast<double>(ev.value);
        pending_ = true;
        break;
      case EventCode::PositionY:
        y_ = static_cast<double>(ev.value);
        pending_ = true;
        break;
      case EventCode::SynReport:
        flush(ev.ts_us);
        break;
      default:
        break;
    }
  }

  // Returns the finished segment, or nullopt when it carried no coordinates.
  std::optional<RawSegment> close(std::int64_t ts_us, bool dangling) {
    active_ = false;
    flush(ts_us);
    if (samples_ == 0) return std::nullopt;
    seg_.ts_last_us = std::max(seg_.ts_last_us, ts_us);
    seg_.dangling = dangling;
    return std::move(seg_);
  }

 private:
  void flush(std::int64_t ts_us) {
    if (!pending_ || !x_ || !y_) return;
    pending_ = false;
    const Point p{*x_, *y_};
    if (samples_ == 0) {
      seg_.first = p;
      seg_.ts_first_us = ts_us;
    }
    seg_.last = p;
    seg_.ts_last_us = ts_us;
    ++samples_;
  }

  bool active_ = false;
  RawSegment seg_;
  std::optional<double> x_;
  std::optional<double> y_;
  bool pending_ = false;
  int samples_ = 0;
};

}  // namespace

std::vector<TraceEvent> parse_trace(std::string_view text) {
  std::vector<TraceEvent> events;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view raw_line =
        nl == std::string_view::npos ? text : text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw_line);
    if (line.empty() || is_header(line)) continue;
    auto ev = parse_event_line(line);
    if (!ev) throw MalformedLine(line_no);
    events.push_back(std::move(*ev));
  }
  return events;
}

Segmentation segment_gestures(const std::vector<TraceEvent>& events) {
  Segmentation out;
  SegmentBuilder builder;

  auto finish = [&](std::int64_t ts_us, bool dangling) {
    auto seg = builder.close(ts_us, dangling);
    if (!seg) {
      ++out.dropped_without_coordinates;
      return;
    }
    if (dangling) ++out.dangling;
    out.segments.push_back(std::move(*seg));
  };

  for (std::size_t i = 0; i < events.size(); ++i) {
    const TraceEvent& ev = events[i];
    if (ev.code == EventCode::TrackingId) {
      const bool release =
          ev.value == kTrackingIdRelease ||
          (ev.value == 0 && builder.active() && zero_acts_as_release(events, i));
      if (release) {
        if (builder.active()) {
          ++out.releases_consumed;
          finish(ev.ts_us, false);
        }
        continue;
      }
      // A new contact id while one is active replaces the old contact.
      if (builder.active()) finish(ev.ts_us, false);
      builder.open(ev);
      continue;
    }
    if (builder.active()) builder.add(ev);
  }
  if (builder.active()) {
    finish(events.back().ts_us, true);
  }
  return out;
}

const char* to_string(GestureKind kind) {
  return kind == GestureKind::Swipe ? "swipe" : "tap";
}

GestureKind classify_kind(double dist, double /*dur*/) {
  return dist >= kSwipeMinDistance ? GestureKind::Swipe : GestureKind::Tap;
}

Gesture make_gesture(Point start, Point end, double dur) {
  Gesture g;
  g.start = start;
  g.end = end;
  g.dist = distance(start, end);
  g.dur = dur;
  g.kind = classify_kind(g.dist, g.dur);
  if (g.kind == GestureKind::Swipe) {
    g.sinx = std::clamp((end.y - start.y) / g.dist, -1.0, 1.0);
  }
  return g;
}

Gesture classify_segment(const RawSegment& seg) {
  const double dur =
      static_cast<double>(seg.ts_last_us - seg.ts_first_us) / 1e6;
  return make_gesture(seg.first, seg.last, std::max(0.0, dur));
}

std::vector<Gesture> gestures_from_trace(std::string_view text) {
  const Segmentation seg = segment_gestures(parse_trace(text));
  std::vector<Gesture> out;
  out.reserve(seg.segments.size());
  for (const RawSegment& s : seg.segments) out.push_back(classify_segment(s));
  return out;
}

std::string format_event(std::int64_t ts_us, std::string_view type,
                         std::string_view code, std::uint32_t value) {
  char buf[160];
  const int n = std::snprintf(
      buf, sizeof(buf), "[ %lld.%06lld] %.*s: %.*s %.*s %08x",
      static_cast<long long>(ts_us / 1'000'000),
      static_cast<long long>(ts_us % 1'000'000),
      static_cast<int>(kDevice.size()), kDevice.data(),
      static_cast<int>(type.size()), type.data(),
      static_cast<int>(code.size()), code.data(), value);
  return std::string(buf, static_cast<std::size_t>(std::max(n, 0)));
}

std::string emit_trace(const Action& action, double base_ts,
                       const EmitOptions& options) {
  if (action.gestures.empty()) throw EmptyAction();

  auto to_pixel = [&](Point p) {
    const double x = std::round(p.x);
    const double y = std::round(p.y);
    if (!options.screen.contains({x, y})) throw OutOfBounds(p.x, p.y);
    return std::pair<std::uint32_t, std::uint32_t>(static_cast<std::uint32_t>(x),
                                                   static_cast<std::uint32_t>(y));
  };
  // Validate everything before producing output.
  for (const Gesture& g : action.gestures) {
    to_pixel(g.start);
    to_pixel(g.end);
  }

  std::string out;
  auto line = [&](std::int64_t ts, std::string_view type, std::string_view code,
                  std::uint32_t value) {
    out += format_event(ts, type, code, value);
    out += '\n';
  };
  auto report = [&](std::int64_t ts, Point p) {
    const auto [x, y] = to_pixel(p);
    line(ts, "EV_ABS", "ABS_MT_POSITION_X", x);
    line(ts, "EV_ABS", "ABS_MT_POSITION_Y", y);
    line(ts, "EV_SYN", "SYN_REPORT", 0);
  };

  std::int64_t t0 = std::llround(base_ts * 1e6);
  std::uint32_t tracking_id = options.first_tracking_id;
  for (const Gesture& g : action.gestures) {
    const std::int64_t dur_us = std::llround(std::max(0.0, g.dur) * 1e6);
    line(t0, "EV_ABS", "ABS_MT_TRACKING_ID", tracking_id++);
    if (g.kind == GestureKind::Tap) {
      report(t0, g.start);
      if (to_pixel(g.start) != to_pixel(g.end)) report(t0 + dur_us, g.end);
    } else {
      const int n = std::max(options.swipe_reports, 2);
      for (int k = 0; k < n; ++k) {
        const double f = static_cast<double>(k) / (n - 1);
        const Point p = g.start + f * (g.end - g.start);
        report(t0 + std::llround(f * static_cast<double>(dur_us)), p);
      }
    }
    line(t0 + dur_us, "EV_ABS", "ABS_MT_TRACKING_ID", kTrackingIdRelease);
    line(t0 + dur_us, "EV_SYN", "SYN_REPORT", 0);
    t0 += dur_us + std::llround(options.gesture_gap * 1e6);
  }
  return out;
}

}  // namespace playtest
