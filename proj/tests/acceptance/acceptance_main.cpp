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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.
//
//   playtest_acceptance [--scratch DIR] [--only NAME]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"

namespace fs = std::filesystem;
using namespace playtest;

namespace {

struct Check {
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};
constexpr int kDemoActions = 40;
constexpr int kBudget = 500;

double mean_score(const std::vector<criteria::Run>& runs, bool tactics) {
  double s = 0;
  for (const auto& r : runs) s += static_cast<double>((tactics ? r.played : r.baseline).score);
  return runs.empty() ? 0.0 : s / static_cast<double>(runs.size());
}

double mean_rate(const std::vector<criteria::Run>& runs, bool tactics) {
  double s = 0;
  for (const auto& r : runs) s += (tactics ? r.played : r.baseline).valid_action_rate;
  return runs.empty() ? 0.0 : s / static_cast<double>(runs.size());
}

}  // namespace

int main(int argc, char** argv) {
  fs::path scratch = fs::temp_directory_path() / "playtest-acceptance";
  std::string only;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--scratch") scratch = argv[i + 1];
    if (flag == "--only") only = argv[i + 1];
  }
  fs::create_directories(scratch);
  const auto suite_start = std::chrono::steady_clock::now();

  // Shared by the end-to-end and stability checks.
  std::map<GameId, std::vector<criteria::Run>> runs;
  auto runs_for = [&](GameId g) -> const std::vector<criteria::Run>& {
    auto& v = runs[g];
    if (v.empty()) {
      for (std::uint64_t seed : kSeeds) {
        v.push_back(criteria::end_to_end(g, seed, kDemoActions, kBudget, scratch));
      }
    }
    return v;
  };

  std::vector<Check> checks;
  checks.push_back({"trace-round-trip", [] {
    const auto r = criteria::trace_round_trip(1000, 11);
    const bool ok = r.actions == 1000 && r.count_mismatches == 0 && r.kind_mismatches == 0 &&
                    r.max_dist_error <= 1.0 && r.max_dur_error <= 1e-3 && r.seconds < 5.0;
    return std::make_pair(ok, std::to_string(r.actions) + " actions/" + std::to_string(r.gestures) +
                                  " gestures, kind mismatches " + std::to_string(r.kind_mismatches) +
                                  ", count mismatches " + std::to_string(r.count_mismatches) +
                                  ", max |ddist| " + fmt("%.3g px", r.max_dist_error) +
                                  ", max |ddur| " + fmt("%.3g s", r.max_dur_error) + ", " +
                                  fmt("%.2f s", r.seconds));
  }});
  checks.push_back({"classifier-oracle", [] {
    const auto r = criteria::classifier_agreement(10000, 12);
    const bool ok = r.segments == 10000 && r.disagreements == 0 && r.parse_failures == 0;
    return std::make_pair(ok, std::to_string(r.segments) + " segments, disagreements " +
                                  std::to_string(r.disagreements) + ", parse failures " +
                                  std::to_string(r.parse_failures));
  }});
  checks.push_back({"curve-fitting", [] {
    const auto r = criteria::curve_fitting(1000, 13);
    const bool ok = r.triples == 1000 && r.quadratic_misrouted == 0 && r.max_residual <= 1e-6 &&
                    r.collinear_misrouted == 0 && r.fixture_exact;
    return std::make_pair(
        ok, std::to_string(r.triples) + " triples, max residual " + fmt("%.3g px", r.max_residual) +
                ", quadratic misrouted " + std::to_string(r.quadratic_misrouted) + ", collinear " +
                std::to_string(r.collinear) + " misrouted " + std::to_string(r.collinear_misrouted) +
                ", (0,0),(1,1),(2,4) a=1 exact: " + (r.fixture_exact ? "yes" : "no"));
  }});
  checks.push_back({"endpoint-solver", [] {
    const auto r = criteria::endpoint_solver(1000, 14);
    const bool ok = r.cases == 1000 && r.errors == 0 && r.max_linear_error <= 1e-6 &&
                    r.max_quadratic_error <= 1e-3 && r.hint_violations == 0 &&
                    r.fallback_off_curve == 0 && r.fixture_error <= 1e-3;
    return std::make_pair(
        ok, std::to_string(r.cases) + " cases (" + std::to_string(r.linear) + " linear, " +
                std::to_string(r.quadratic) + " quadratic, " + std::to_string(r.fallback) +
                " sinx), solver errors " + std::to_string(r.errors) + ", max chord error " +
                fmt("%.3g", r.max_linear_error) + " / " + fmt("%.3g px", r.max_quadratic_error) +
                ", hint violations " + std::to_string(r.hint_violations) + ", sinx off-curve " +
                std::to_string(r.fallback_off_curve) + ", fixture error " +
                fmt("%.3g", r.fixture_error) + "; with arbitrary hints " +
                std::to_string(r.random_hint_conflicts) + " quadratic cases have no agreeing root and " +
                std::to_string(r.random_hint_fallback_opposed) + " sinx cases oppose the hint");
  }});
  checks.push_back({"submatrix-oracles", [] {
    const auto r = criteria::submatrix_oracles(500, 15);
    const bool ok = r.matrices == 500 && r.rect_mismatches == 0 && r.placement_cases == 500 &&
                    r.placement_mismatches == 0;
    return std::make_pair(ok, std::to_string(r.matrices) + " matrices, rectangle mismatches " +
                                  std::to_string(r.rect_mismatches) + "; " +
                                  std::to_string(r.placement_cases) +
                                  " pattern cases, placement-set mismatches " +
                                  std::to_string(r.placement_mismatches));
  }});
  checks.push_back({"matcher", [] {
    const auto r = criteria::matcher_accuracy(200, 16);
    const bool ok = r.frames == 200 && r.precision() >= 0.95 && r.recall() >= 0.95;
    return std::make_pair(ok, std::to_string(r.frames) + " frames, " + std::to_string(r.truth) +
                                  " placements, " + std::to_string(r.detections) +
                                  " detections, precision " + fmt("%.4f", r.precision()) +
                                  ", recall " + fmt("%.4f", r.recall()) + " at 0.90");
  }});
  checks.push_back({"end-to-end", [&] {
    std::ostringstream d;
    bool ok = true;
    const auto& sl = runs_for(GameId::Slingshot);
    bool tactics_levels = true, base_levels = true;
    for (const auto& r : sl) {
      tactics_levels = tactics_levels && r.played.level >= 1;
      base_levels = base_levels && r.baseline.level == 0;
    }
    const double sl_lit = mean_score(sl, true), sl_base = mean_score(sl, false);
    const bool sl_ok = tactics_levels && base_levels && sl_lit > 0 && sl_lit >= 3.0 * sl_base;
    d << "slingshot tactics levels";
    for (const auto& r : sl) d << ' ' << r.played.level;
    d << " baseline levels";
    for (const auto& r : sl) d << ' ' << r.baseline.level;
    d << ", mean score " << sl_lit << " vs " << sl_base << (sl_ok ? " ok" : " FAIL");

    const auto& lp = runs_for(GameId::Linkpair);
    const double lp_lit = mean_rate(lp, true), lp_base = mean_rate(lp, false);
    const bool lp_ok = lp_lit >= 2.0 * lp_base && lp_lit > 0;
    d << "; linkpair valid rate " << fmt("%.4f", lp_lit) << " vs " << fmt("%.4f", lp_base)
      << (lp_ok ? " ok" : " FAIL");

    const auto& sd = runs_for(GameId::Slider);
    const double sd_lit = mean_score(sd, true), sd_base = mean_score(sd, false);
    const double hi = std::max(sd_lit, sd_base), lo = std::min(sd_lit, sd_base);
    const bool sd_ok = lo > 0 && hi <= 2.0 * lo;
    d << "; slider mean score " << sd_lit << " vs " << sd_base << " (ratio "
      << fmt("%.2f", lo > 0 ? hi / lo : 0.0) << ")" << (sd_ok ? " ok" : " FAIL");

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
    d << "; " << fmt("%.0f s", elapsed) << " so far";
    ok = sl_ok && lp_ok && sd_ok;
    return std::make_pair(ok, d.str());
  }});
  checks.push_back({"stability", [&] {
    const auto& sl = runs_for(GameId::Slingshot);
    std::int64_t tactics_min = INT64_MAX, base_max = INT64_MIN;
    for (const auto& r : sl) {
      tactics_min = std::min(tactics_min, r.played.score);
      base_max = std::max(base_max, r.baseline.score);
    }
    return std::make_pair(tactics_min > base_max, "slingshot tactics min score " + std::to_string(tactics_min) +
                                                  " vs baseline max " + std::to_string(base_max));
  }});
  checks.push_back({"determinism", [&] {
    bool ok = true;
    std::string detail;
    for (GameId g : {GameId::Slingshot, GameId::Linkpair, GameId::Slider, GameId::Buttonrow}) {
      const auto d = criteria::determinism(g, 3, kDemoActions, 100, scratch);
      const bool g_ok = d.demo_identical && d.tactics_identical && d.reports_identical;
      ok = ok && g_ok;
      detail += std::string(to_string(g)) + (g_ok ? " identical" : " DIFFERS:" + d.detail) + "; ";
    }
    return std::make_pair(ok, detail + "demo files byte-equal, tactics byte-equal, reports field-equal");
  }});

  int failures = 0;
  for (const Check& c : checks) {
    if (!only.empty() && c.name != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::pair<bool, std::string> result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !result.first;
    std::printf("%s %s: %s [%.1f s]\n", result.first ? "PASS" : "FAIL", c.name.c_str(),
                result.second.c_str(), secs);
    std::fflush(stdout);
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  std::printf("%s suite-time: %.0f s (limit 600 s)\n", total < 600.0 ? "PASS" : "FAIL", total);
  failures += total >= 600.0;
  return failures == 0 ? 0 : 1;
}
