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

#include "playtest/apply.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "playtest/errors.hpp"

namespace playtest {

std::optional<std::size_t> match_context(const Context& context,
                                         const TacticSet& set, Rng& rng) {
  std::vector<std::size_t> matches;
  for (std::size_t i = 0; i < set.tactics.size(); ++i) {
    if (set.tactics[i].signature == context.signature) matches.push_back(i);
  }
  if (matches.empty()) return std::nullopt;
  if (matches.size() == 1) return matches.front();
  return matches[rng.index(matches.size())];
}

namespace {

constexpr double kSameX = 1e-9;
constexpr int kMaxBisections = 200;
constexpr int kMaxMarchSteps = 100000;

Point solve_linear(double k, double dist, Point hint) {
  const double s = dist / std::sqrt(1.0 + k * k);
  const Point d{s, s * k};
  return dot(d, hint) >= 0.0 ? d : Point{-d.x, -d.y};
}

Point solve_sinx(double sinx, double dist, Point hint) {
  sinx = std::clamp(sinx, -1.0, 1.0);
  const double h = dist * std::sqrt(1.0 - sinx * sinx);
  // The vertical component is fixed by sinx; the hint only picks the side.
  return {hint.x < 0.0 ? -h : h, dist * sinx};
}

// Displacement from the origin to the point at signed offset s*u along the
// curve, where slope0 is the curve's slope at the origin.
Point curve_offset(double a, double slope0, int s, double u) {
  return {s * u, s * u * slope0 + a * u * u};
}

Point solve_branch(double a, double slope0, double x1, int s, double dist) {
  auto chord = [&](double u) { return norm(curve_offset(a, slope0, s, u)); };
  const double step = dist / 64.0;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
  for (;;) {
    const double slope = 2.0 * a * (x1 + s * lo) + slope0 - 2.0 * a * x1;
    hi = lo + step / std::sqrt(1.0 + slope * slope);
    if (chord(hi) >= dist) break;
    lo = hi;
    if (++steps > kMaxMarchSteps) throw NoConvergence();
  }
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chord(mid) < dist) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
  }
  const double u = std::abs(chord(lo) - dist) < std::abs(chord(hi) - dist) ? lo : hi;
  if (std::abs(chord(u) - dist) > 1e-3) throw NoConvergence();
  return curve_offset(a, slope0, s, u);
}

Point solve_quadratic(Point origin, Point target, double a, double dist,
                      Point hint) {
  const double dx = target.x - origin.x;
  if (std::abs(dx) < kSameX) throw DegenerateTarget();
  const double b =
      ((target.y - origin.y) - a * (target.x * target.x - origin.x * origin.x)) / dx;
  const double slope0 = 2.0 * a * origin.x + b;
  const Point right = solve_branch(a, slope0, origin.x, +1, dist);
  const Point left = solve_branch(a, slope0, origin.x, -1, dist);
  const Point best = dot(left, hint) > dot(right, hint) ? left : right;
  if (dot(best, hint) < 0.0) throw HintConflict();
  return best;
}

}  // namespace

Point solve_endpoint(Point origin, std::optional<Point> target, double dist,
                     const SwipeDirection& direction, Point disp_hint) {
  Point d;
  if (const auto* sx = std::get_if<SinxDirection>(&direction)) {
    d = solve_sinx(sx->sinx, dist, disp_hint);
  } else {
    const auto& param = std::get<DirectionParam>(direction);
    if (param.kind == DirectionParam::Kind::Linear) {
      d = solve_linear(param.value, dist, disp_hint);
    } else {
      if (!target) throw MissingInstance("target");
      d = solve_quadratic(origin, *target, param.value, dist, disp_hint);
    }
  }
  return origin + d;
}

std::vector<Placement> matching_placements(const CellGrid& grid,
                                           const SubmatrixPattern& pattern) {
  std::vector<Placement> out;
  if (pattern.rows > grid.rows || pattern.cols > grid.cols) return out;
  for (int r0 = 0; r0 + pattern.rows <= grid.rows; ++r0) {
    for (int c0 = 0; c0 + pattern.cols <= grid.cols; ++c0) {
      std::optional<int> icon;
      bool ok = true;
      for (int r = 0; r < pattern.rows && ok; ++r) {
        for (int c = 0; c < pattern.cols; ++c) {
          if (pattern.at(r, c) != 1) continue;
          const int v = grid.at(r0 + r, c0 + c);
          if (v == kEmptyCell || (icon && *icon != v)) {
            ok = false;
            break;
          }
          icon = v;
        }
      }
      if (!ok || !icon) continue;
      for (int r = 0; r < pattern.rows && ok; ++r) {
        for (int c = 0; c < pattern.cols; ++c) {
          if (pattern.at(r, c) == 0 && grid.at(r0 + r, c0 + c) == *icon) {
            ok = false;
            break;
          }
        }
      }
      if (ok) out.push_back({r0, c0, *icon});
    }
  }
  return out;
}

std::optional<std::vector<GridCell>> match_pattern(const CellGrid& grid,
                                                   const SubmatrixPattern& pattern,
                                                   Rng& rng) {
  const std::vector<Placement> places = matching_placements(grid, pattern);
  if (places.empty()) return std::nullopt;
  const Placement& p = places[rng.index(places.size())];
  std::vector<GridCell> cells;
  for (const GridCell& t : pattern.touched) {
    cells.push_back({p.row + t.row, p.col + t.col});
  }
  return cells;
}

namespace {

class Synthesizer {
 public:
  Synthesizer(const Tactic& tactic, const Context& ctx, Rng& rng,
              const ScreenBounds& screen)
      : t_(tactic), p_(tactic.pools), ctx_(ctx), rng_(rng), screen_(screen) {}

  std::vector<Gesture> run() {
    switch (t_.rule) {
      case Rule::R1:
        return absolute();
      case Rule::R2:
      case Rule::R5:
        return icon_relative();
      case Rule::R3:
        return aimed();
      case Rule::R4:
        return grid_move();
    }
    return {};
  }

 private:
  double sample(const std::vector<double>& v, const char* what) {
    if (v.empty()) throw Error(std::string("tactic has an empty ") + what + " pool");
    return v[rng_.index(v.size())];
  }
  double tap_dur() {
    if (!p_.dur.empty()) return sample(p_.dur, "dur");
    if (!p_.taps.empty()) return p_.taps[rng_.index(p_.taps.size())].dur;
    return 0.1;
  }
  Point clamp(Point q) const {
    return {std::clamp(q.x, 0.0, screen_.width - 1.0),
            std::clamp(q.y, 0.0, screen_.height - 1.0)};
  }
  Gesture tap(Point at, double dur) {
    return make_gesture(clamp(at), clamp(at), dur);
  }
  Gesture free_swipe(Point start) {
    const double dist = sample(p_.dist, "dist");
    const double dur = sample(p_.dur, "dur");
    const double sinx = sample(p_.sinx, "sinx");
    const Point hint{rng_.chance(0.5) ? 1.0 : -1.0, 0.0};
    const Point end = solve_endpoint(start, std::nullopt, dist, SinxDirection{sinx}, hint);
    return make_gesture(clamp(start), clamp(end), dur);
  }

  std::vector<std::size_t> instances_of(Category c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ctx_.instances.size(); ++i) {
      if (ctx_.instances[i].category == c) out.push_back(i);
    }
    return out;
  }
  const IconInstance& random_instance(Category c) {
    const auto all = instances_of(c);
    if (all.empty()) throw MissingInstance(to_string(c));
    return ctx_.instances[all[rng_.index(all.size())]];
  }

  std::vector<Gesture> absolute() {
    if (p_.taps.empty()) throw Error("tactic has an empty taps pool");
    std::vector<Gesture> out;
    for (GestureKind kind : t_.action_type.gestures) {
      const TapSample& s = p_.taps[rng_.index(p_.taps.size())];
      if (kind == GestureKind::Tap) {
        out.push_back(tap({s.x, s.y}, s.dur));
      } else {
        out.push_back(free_swipe({s.x, s.y}));
      }
    }
    return out;
  }

  std::vector<Gesture> icon_relative() {
    const Category anchor = t_.action_type.anchor.value_or(Category::Actionable);
    std::vector<Gesture> out;
    for (GestureKind kind : t_.action_type.gestures) {
      const IconInstance& inst = random_instance(anchor);
      if (kind == GestureKind::Tap) {
        out.push_back(tap(inst.centroid, tap_dur()));
      } else {
        out.push_back(free_swipe(inst.centroid));
      }
    }
    return out;
  }

  std::vector<Gesture> aimed() {
    const IconInstance& origin = random_instance(Category::Actionable);
    const IconInstance& target = random_instance(Category::Target);
    std::vector<Gesture> out;
    for (GestureKind kind : t_.action_type.gestures) {
      if (kind == GestureKind::Tap) {
        out.push_back(tap(origin.centroid, tap_dur()));
        continue;
      }
      const double dist = sample(p_.dist, "dist");
      const double dur = sample(p_.dur, "dur");
      SwipeDirection dir;
      if (!p_.direction.empty()) {
        dir = p_.direction[rng_.index(p_.direction.size())];
      } else {
        dir = SinxDirection{sample(p_.sinx, "sinx")};
      }
      Point end;
      try {
        end = solve_endpoint(origin.centroid, target.centroid, dist, dir, p_.mean_disp);
      } catch (const DegenerateTarget&) {
        end = sinx_fallback(origin.centroid, dist);
      } catch (const HintConflict&) {
        end = sinx_fallback(origin.centroid, dist);
      } catch (const NoConvergence&) {
        end = sinx_fallback(origin.centroid, dist);
      }
      out.push_back(make_gesture(origin.centroid, clamp(end), dur));
    }
    return out;
  }

  Point sinx_fallback(Point origin, double dist) {
    return solve_endpoint(origin, std::nullopt, dist,
                          SinxDirection{sample(p_.sinx, "sinx")}, p_.mean_disp);
  }

  std::vector<Gesture> grid_move() {
    if (!ctx_.grid) throw MissingInstance("grid");
    const CellGrid grid = ctx_.grid->cell_grid();
    std::vector<std::size_t> order(t_.patterns.size());
    std::iota(order.begin(), order.end(), 0);
    rng_.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      const auto cells = match_pattern(grid, t_.patterns[i], rng_);
      if (!cells) continue;
      std::vector<Gesture> out;
      for (const GridCell& c : *cells) {
        const int occ = ctx_.grid->occupant_at(c.row, c.col);
        if (occ < 0) throw MissingInstance("grid cell");
        out.push_back(tap(ctx_.instances[static_cast<std::size_t>(occ)].centroid,
                          tap_dur()));
      }
      return out;
    }
    throw NoApplicablePattern();
  }

  const Tactic& t_;
  const TacticPools& p_;
  const Context& ctx_;
  Rng& rng_;
  const ScreenBounds& screen_;
};

}  // namespace

PlannedAction synthesize_action(const Tactic& tactic, std::size_t tactic_id,
                                const Context& context, Rng& rng,
                                const ScreenBounds& screen) {
  PlannedAction out;
  out.tactic_id = static_cast<int>(tactic_id);
  out.rule = tactic.rule;
  out.gestures = Synthesizer(tactic, context, rng, screen).run();
  return out;
}

std::string action_to_events(const PlannedAction& planned,
                             const ScreenBounds& screen, double base_ts,
                             std::uint32_t first_tracking_id) {
  EmitOptions opts;
  opts.screen = screen;
  opts.first_tracking_id = first_tracking_id;
  opts.gesture_gap = kInterGestureGap;
  return emit_trace(Action{planned.gestures, 0}, base_ts, opts);
}

}  // namespace playtest
