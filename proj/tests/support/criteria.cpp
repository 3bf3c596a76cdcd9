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

#include "criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "playtest/apply.hpp"
#include "playtest/errors.hpp"
#include "playtest/infer.hpp"
#include "playtest/trace.hpp"

namespace criteria {

using namespace playtest;
namespace fs = std::filesystem;

namespace {

Point random_pixel(Rng& rng) {
  return {static_cast<double>(rng.range(0, 479)), static_cast<double>(rng.range(0, 799))};
}

Gesture random_gesture(Rng& rng) {
  const Point a = random_pixel(rng);
  Point b = a;
  if (rng.chance(0.5)) {
    // Tap, possibly with a little finger drift.
    if (rng.chance(0.5)) {
      b = {std::clamp(a.x + rng.range(-10, 10), 0.0, 479.0),
           std::clamp(a.y + rng.range(-10, 10), 0.0, 799.0)};
    }
    return make_gesture(a, b, rng.uniform(0.01, 0.5));
  }
  do {
    b = random_pixel(rng);
  } while (distance(a, b) < 20.0);
  return make_gesture(a, b, rng.uniform(0.05, 2.0));
}

// Point at chord length `dist` from the origin along y - y1 = a(x^2 - x1^2)
// + b(x - x1) through the target, walking in x direction `branch`. Plain
// bisection on x after doubling out a bracket.
Point point_on_parabola(Point o, Point t, double a, int branch, double dist) {
  const long double b = ((t.y - o.y) - a * ((long double)t.x * t.x - (long double)o.x * o.x)) /
                        (t.x - o.x);
  auto at = [&](long double u) {
    const long double x = o.x + branch * u;
    return Point{static_cast<double>(x),
                 static_cast<double>(o.y + a * (x * x - (long double)o.x * o.x) + b * (x - o.x))};
  };
  long double lo = 0, hi = 1;
  while (norm(at(hi) - o) < dist) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    (norm(at(mid) - o) < dist ? lo : hi) = mid;
  }
  return at(hi);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

RoundTrip trace_round_trip(int actions, std::uint64_t seed) {
  RoundTrip r;
  Rng rng(seed);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < actions; ++i) {
    Action a;
    const int n = rng.range(1, 3);
    for (int k = 0; k < n; ++k) a.gestures.push_back(random_gesture(rng));
    const std::string text = emit_trace(a, rng.uniform(0.0, 100000.0));
    const std::vector<Gesture> back = gestures_from_trace(text);
    ++r.actions;
    r.gestures += n;
    if (back.size() != a.gestures.size()) {
      ++r.count_mismatches;
      continue;
    }
    for (std::size_t k = 0; k < back.size(); ++k) {
      r.kind_mismatches += back[k].kind != a.gestures[k].kind;
      r.max_dist_error = std::max(r.max_dist_error, std::abs(back[k].dist - a.gestures[k].dist));
      r.max_dur_error = std::max(r.max_dur_error, std::abs(back[k].dur - a.gestures[k].dur));
    }
  }
  r.seconds = seconds_since(start);
  return r;
}

Classifier classifier_agreement(int segments, std::uint64_t seed) {
  Classifier c;
  Rng rng(seed);
  for (int i = 0; i < segments; ++i) {
    const oracle::SyntheticSegment s =
        oracle::random_segment(rng, static_cast<std::uint32_t>(i + 1));
    ++c.segments;
    try {
      const Segmentation seg = segment_gestures(parse_trace(s.text));
      if (seg.segments.size() != 1) {
        ++c.parse_failures;
        continue;
      }
      const Gesture g = classify_segment(seg.segments[0]);
      const bool expect_swipe = s.kind == oracle::Kind::Swipe;
      const bool got_swipe = g.kind == GestureKind::Swipe;
      c.disagreements += expect_swipe != got_swipe;
    } catch (const Error&) {
      ++c.parse_failures;
    }
  }
  return c;
}

CurveFit curve_fitting(int triples, std::uint64_t seed) {
  CurveFit r;
  Rng rng(seed);
  auto pt = [&] { return Point{rng.uniform(0.0, 480.0), rng.uniform(0.0, 800.0)}; };
  for (int i = 0; i < triples; ++i) {
    Point p0 = pt(), p1 = pt(), p2 = pt();
    // Non-degenerate: distinct abscissae and a real triangle.
    const double area = std::abs((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
    if (std::abs(p0.x - p1.x) < 1.0 || std::abs(p1.x - p2.x) < 1.0 ||
        std::abs(p0.x - p2.x) < 1.0 || area < 1.0) {
      --i;
      continue;
    }
    ++r.triples;
    const playtest::CurveFit f = fit_curve(p0, p1, p2);
    if (f.param.kind != DirectionParam::Kind::Quadratic) {
      ++r.quadratic_misrouted;
      continue;
    }
    for (Point p : {p0, p1, p2}) r.max_residual = std::max(r.max_residual, std::abs(f(p.x) - p.y));
    // Cross-check against the extended-precision solution.
    const oracle::Quad q = oracle::solve_quadratic(p0.x, p0.y, p1.x, p1.y, p2.x, p2.y);
    if (std::abs(static_cast<double>(q.a) - f.a) > 1e-9 * std::max(1.0, std::abs(f.a))) {
      ++r.quadratic_misrouted;
    }
  }
  // Collinear triples route to Linear with the slope through p0 and p1.
  for (int i = 0; i < triples; ++i) {
    const Point p0 = pt();
    const double k = std::tan(rng.uniform(-1.4, 1.4));
    const double d1 = rng.uniform(5.0, 200.0) * (rng.chance(0.5) ? 1 : -1);
    const double d2 = rng.uniform(5.0, 200.0) * (rng.chance(0.5) ? 1 : -1);
    const Point p1{p0.x + d1, p0.y + k * d1};
    const Point p2{p0.x + d2, p0.y + k * d2};
    ++r.collinear;
    const playtest::CurveFit f = fit_curve(p0, p1, p2);
    if (f.param.kind != DirectionParam::Kind::Linear ||
        std::abs(f.param.value - k) > 1e-6 * std::max(1.0, std::abs(k))) {
      ++r.collinear_misrouted;
    }
  }
  const playtest::CurveFit fx = fit_curve({0, 0}, {1, 1}, {2, 4});
  r.fixture_exact = fx.param.kind == DirectionParam::Kind::Quadratic && fx.param.value == 1.0;
  return r;
}

Solver endpoint_solver(int cases, std::uint64_t seed) {
  Solver r;
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const Point origin{rng.uniform(0.0, 480.0), rng.uniform(0.0, 800.0)};
    double dist = rng.uniform(10.0, 300.0);
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    Point hint{std::cos(angle), std::sin(angle)};
    const int mode = static_cast<int>(rng.index(3));
    std::optional<Point> target;
    SwipeDirection dir;
    if (mode == 0) {
      dir = DirectionParam{DirectionParam::Kind::Linear, std::tan(rng.uniform(-1.5, 1.5))};
    } else if (mode == 1) {
      Point t{rng.uniform(0.0, 480.0), rng.uniform(0.0, 800.0)};
      while (std::abs(t.x - origin.x) < 5.0) t.x = rng.uniform(0.0, 480.0);
      target = t;
      const double a = rng.uniform(0.0002, 0.01) * (rng.chance(0.5) ? 1 : -1);
      dir = DirectionParam{DirectionParam::Kind::Quadratic, a};
      // An arbitrary hint can oppose both roots; count those, then use the
      // hint a demo would give: the mean unit displacement of one to three
      // swipes along one branch, with dist drawn from the same pool.
      try {
        const Point end = solve_endpoint(origin, target, dist, dir, hint);
        r.hint_violations += dot(end - origin, hint) < 0.0;
      } catch (const HintConflict&) {
        ++r.random_hint_conflicts;
      } catch (const Error&) {
        ++r.errors;
      }
      const int branch = rng.chance(0.5) ? 1 : -1;
      const int swipes = rng.range(1, 3);
      std::vector<double> pool;
      Point mean{0, 0};
      for (int k = 0; k < swipes; ++k) {
        pool.push_back(rng.uniform(10.0, 300.0));
        const Point dd = point_on_parabola(origin, t, a, branch, pool.back()) - origin;
        mean = mean + (1.0 / norm(dd)) * dd;
      }
      hint = (1.0 / norm(mean)) * mean;
      dist = pool[rng.index(pool.size())];
    } else {
      const double s = rng.uniform(-1.0, 1.0);
      if (dot(solve_endpoint(origin, std::nullopt, dist, SinxDirection{s}, hint) - origin, hint) <
          0.0) {
        ++r.random_hint_fallback_opposed;
      }
      // Demo-like: one to three swipes within 30 degrees of a common heading;
      // the hint is their mean unit displacement and sinx comes from one of them.
      const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const int swipes = rng.range(1, 3);
      std::vector<double> pool;
      Point mean{0, 0};
      for (int k = 0; k < swipes; ++k) {
        const double a = heading + rng.uniform(-std::numbers::pi / 6, std::numbers::pi / 6);
        pool.push_back(std::sin(a));
        mean = mean + Point{std::cos(a), std::sin(a)};
      }
      hint = (1.0 / norm(mean)) * mean;
      dir = SinxDirection{pool[rng.index(pool.size())]};
    }
    ++r.cases;
    try {
      const Point end = solve_endpoint(origin, target, dist, dir, hint);
      const Point d = end - origin;
      const double err = std::abs(norm(d) - dist);
      if (mode == 1) {
        ++r.quadratic;
        r.max_quadratic_error = std::max(r.max_quadratic_error, err);
      } else {
        ++(mode == 0 ? r.linear : r.fallback);
        r.max_linear_error = std::max(r.max_linear_error, err);
        if (const auto* sx = std::get_if<SinxDirection>(&dir)) {
          r.fallback_off_curve += std::abs(d.y - dist * sx->sinx) > 1e-6;
        }
      }
      r.hint_violations += dot(d, hint) < 0.0;
    } catch (const Error&) {
      ++r.errors;
    }
  }
  const Point fx = solve_endpoint({0, 0}, Point{2, 0}, 1.34629,
                                  DirectionParam{DirectionParam::Kind::Quadratic, 1.0}, {-1, 0});
  r.fixture_error = std::max(std::abs(fx.x + 0.5), std::abs(fx.y - 1.25));
  return r;
}

Submatrix submatrix_oracles(int cases, std::uint64_t seed) {
  Submatrix r;
  Rng rng(seed);
  auto random_matrix = [&](int rows, int cols, int kinds, double empty) {
    std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
    for (auto& row : m) {
      for (int& v : row) v = rng.chance(empty) ? kEmptyCell : rng.range(0, kinds - 1);
    }
    return m;
  };
  auto to_grid = [](const std::vector<std::vector<int>>& m) {
    CellGrid g{static_cast<int>(m.size()), static_cast<int>(m[0].size()), {}};
    for (const auto& row : m) g.cells.insert(g.cells.end(), row.begin(), row.end());
    return g;
  };

  for (int i = 0; i < cases; ++i) {
    const int rows = rng.range(1, 8), cols = rng.range(1, 8);
    const auto m = random_matrix(rows, cols, rng.range(1, 5), 0.2);
    // Touched cells: one to three cells sharing an icon index.
    std::vector<std::pair<int, int>> filled;
    for (int y = 0; y < rows; ++y) {
      for (int x = 0; x < cols; ++x) {
        if (m[y][x] != kEmptyCell) filled.emplace_back(y, x);
      }
    }
    if (filled.empty()) {
      --i;
      continue;
    }
    const auto first = filled[rng.index(filled.size())];
    const int e = m[first.first][first.second];
    std::vector<std::pair<int, int>> same;
    for (auto c : filled) {
      if (m[c.first][c.second] == e && c != first) same.push_back(c);
    }
    std::vector<std::pair<int, int>> touched{first};
    const int extra = std::min<int>(static_cast<int>(same.size()), rng.range(0, 2));
    rng.shuffle(std::span(same));
    touched.insert(touched.end(), same.begin(), same.begin() + extra);

    std::vector<GridCell> cells;
    for (auto [y, x] : touched) cells.push_back({y, x});
    const SubmatrixPattern p = extract_submatrix(to_grid(m), cells);
    const oracle::Box want = oracle::flood_bbox(m, touched, e);
    // The pattern's origin in the matrix follows from any touched cell.
    const int r0 = cells[0].row - p.touched[0].row;
    const int c0 = cells[0].col - p.touched[0].col;
    const oracle::Box got{r0, c0, r0 + p.rows - 1, c0 + p.cols - 1};
    ++r.matrices;
    r.rect_mismatches += !(got == want);
  }

  for (int i = 0; i < cases; ++i) {
    const int rows = rng.range(1, 8), cols = rng.range(1, 8);
    const auto m = random_matrix(rows, cols, rng.range(1, 5), 0.2);
    const int pr = rng.range(1, std::min(4, rows)), pc = rng.range(1, std::min(4, cols));
    std::vector<std::vector<int>> pat(pr, std::vector<int>(pc));
    bool any_one = false;
    for (auto& row : pat) {
      for (int& v : row) {
        v = rng.range(-1, 1);
        any_one = any_one || v == 1;
      }
    }
    if (!any_one) pat[rng.index(static_cast<std::size_t>(pr))][rng.index(static_cast<std::size_t>(pc))] = 1;
    SubmatrixPattern sp{pr, pc, {}, {}};
    for (const auto& row : pat) sp.cells.insert(sp.cells.end(), row.begin(), row.end());
    for (int y = 0; y < pr; ++y) {
      for (int x = 0; x < pc; ++x) {
        if (pat[y][x] == 1) sp.touched.push_back({y, x});
      }
    }
    std::set<std::tuple<int, int, int>> got;
    for (const Placement& pl : matching_placements(to_grid(m), sp)) {
      got.insert({pl.row, pl.col, pl.icon});
    }
    ++r.placement_cases;
    r.placement_mismatches += got != oracle::placements(m, pat);
  }
  return r;
}

Composite composite_frame(Rng& rng, double jitter) {
  Composite c;
  c.game = static_cast<GameId>(rng.index(4));
  const std::vector<IconSpec>& specs = game_icon_specs(c.game);
  Frame f(kGameScreen.width, kGameScreen.height);
  const Rgb base{static_cast<std::uint8_t>(rng.range(30, 220)),
                 static_cast<std::uint8_t>(rng.range(30, 220)),
                 static_cast<std::uint8_t>(rng.range(30, 220))};
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      auto ch = [&](std::uint8_t v) {
        return static_cast<std::uint8_t>(std::clamp(v + rng.range(-8, 8), 0, 255));
      };
      f.set(x, y, {ch(base.r), ch(base.g), ch(base.b)});
    }
  }
  const int want = rng.range(1, 8);
  for (int attempt = 0; attempt < 200 && static_cast<int>(c.truth.size()) < want; ++attempt) {
    const int s = static_cast<int>(rng.index(specs.size()));
    const Frame& img = specs[static_cast<std::size_t>(s)].image;
    const Rect box{rng.range(0, f.width() - img.width()), rng.range(0, f.height() - img.height()),
                   img.width(), img.height()};
    const Rect padded{box.x - 4, box.y - 4, box.width + 8, box.height + 8};
    bool clear = true;
    for (const Placed& p : c.truth) clear = clear && intersection_area(p.box, padded) == 0;
    if (!clear) continue;
    const double gain = rng.uniform(1.0 - jitter, 1.0 + jitter);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        const Rgb v = img.at(x, y);
        auto g = [&](std::uint8_t ch) {
          return static_cast<std::uint8_t>(std::clamp(std::lround(ch * gain), 0L, 255L));
        };
        f.set(box.x + x, box.y + y, {g(v.r), g(v.g), g(v.b)});
      }
    }
    c.truth.push_back({s, box});
  }
  c.frame = std::move(f);
  return c;
}

Matcher matcher_accuracy(int frames, std::uint64_t seed, const MatchOptions& options) {
  Matcher m;
  Rng rng(seed);
  for (int i = 0; i < frames; ++i) {
    const Composite c = composite_frame(rng, 0.10);
    const auto found = match_icons(c.frame, game_icon_specs(c.game), options);
    ++m.frames;
    m.truth += static_cast<int>(c.truth.size());
    m.detections += static_cast<int>(found.size());
    std::vector<bool> used(c.truth.size(), false);
    for (const IconInstance& inst : found) {
      for (std::size_t k = 0; k < c.truth.size(); ++k) {
        if (!used[k] && c.truth[k].spec == inst.spec && iou(c.truth[k].box, inst.bbox) >= 0.5) {
          used[k] = true;
          ++m.true_positives;
          break;
        }
      }
    }
  }
  return m;
}

Run end_to_end(GameId game, std::uint64_t seed, int demo_actions, int budget,
               const fs::path& scratch) {
  Run r;
  r.game = game;
  r.seed = seed;
  const fs::path dir = scratch / (std::string(to_string(game)) + "-" + std::to_string(seed));
  fs::remove_all(dir);
  oracle_play(game, seed, demo_actions, dir);
  const InferResult inferred = infer_from_demo(dir, game_icon_specs(game), seed);
  r.tactics = static_cast<int>(inferred.tactics.tactics.size());

  PlayOptions opts;
  opts.budget = budget;
  opts.seed = seed;
  auto g = make_game(game, seed);
  r.played = run_test(*g, inferred.tactics, game_icon_specs(game), opts);
  auto b = make_game(game, seed);
  r.baseline = run_random_baseline(*b, opts);
  return r;
}

Determinism determinism(GameId game, std::uint64_t seed, int demo_actions, int budget,
                        const fs::path& scratch) {
  Determinism d;
  const std::string name = to_string(game);
  const fs::path a = scratch / (name + "-det-a"), b = scratch / (name + "-det-b");
  fs::remove_all(a);
  fs::remove_all(b);
  oracle_play(game, seed, demo_actions, a);
  oracle_play(game, seed, demo_actions, b);
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
      d.demo_identical = false;
      d.detail += " demo file " + entry.path().filename().string() + " differs;";
      break;
    }
  }
  const auto& specs = game_icon_specs(game);
  const std::string ta = save_tactics(infer_from_demo(a, specs, seed).tactics);
  const std::string tb = save_tactics(infer_from_demo(a, specs, seed).tactics);
  d.tactics_identical = ta == tb;
  if (!d.tactics_identical) d.detail += " tactics differ;";

  const TacticSet tactics = load_tactics(ta);
  PlayOptions opts;
  opts.budget = budget;
  opts.seed = seed;
  auto run = [&] {
    auto g = make_game(game, seed);
    return run_test(*g, tactics, specs, opts);
  };
  auto base = [&] {
    auto g = make_game(game, seed);
    return run_random_baseline(*g, opts);
  };
  const TestReport r1 = run(), r2 = run();
  const TestReport b1 = base(), b2 = base();
  d.reports_identical = r1.same_outcome(r2) && b1.same_outcome(b2);
  // Round-tripping through JSON must not change the outcome either.
  d.reports_identical = d.reports_identical && report_from_json(report_to_json(r1)).same_outcome(r1);
  if (!d.reports_identical) d.detail += " reports differ;";
  return d;
}

}  // namespace criteria
