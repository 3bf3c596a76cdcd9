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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <map>
#include <set>

#include "json.hpp"
#include "playtest/errors.hpp"
#include "playtest/infer.hpp"

namespace playtest {
namespace {

namespace fs = std::filesystem;

std::optional<std::int64_t> parse_timestamp(const std::string& stem) {
  std::int64_t t = 0;
  const char* end = stem.data() + stem.size();
  const auto [ptr, ec] = std::from_chars(stem.data(), end, t);
  if (ec != std::errc() || ptr != end || stem.empty()) return std::nullopt;
  return t;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

DemoPairs pair_demo(const fs::path& dir, const std::vector<IconSpec>& specs,
                    const MatchOptions& match) {
  if (!fs::is_directory(dir)) throw Error("demo directory not found: " + dir.string());

  std::map<std::int64_t, std::pair<bool, bool>> seen;  // t -> (ppm, txt)
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto t = parse_timestamp(entry.path().stem().string());
    if (!t) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".ppm") seen[*t].first = true;
    if (ext == ".txt") seen[*t].second = true;
  }

  DemoPairs out;
  out.session_id = dir.filename().string();
  const fs::path manifest = dir / "manifest.json";
  if (fs::exists(manifest)) {
    const auto doc = nlohmann::json::parse(read_text(manifest), nullptr, false);
    if (doc.is_object() && doc.contains("session_id")) {
      out.session_id = doc["session_id"].get<std::string>();
    }
  }

  for (const auto& [t, files] : seen) {
    if (!files.first || !files.second) throw OrphanFile(t);
  }
  for (const auto& [t, files] : seen) {
    const std::string stem = std::to_string(t);
    std::vector<Gesture> gestures = gestures_from_trace(read_text(dir / (stem + ".txt")));
    if (gestures.empty()) {
      ++out.dropped_empty;
      continue;
    }
    Frame frame = read_ppm(dir / (stem + ".ppm"));
    frame.set_t_ms(t);
    ContextActionPair pair;
    pair.context = build_context(frame, specs, match);
    pair.action = Action{std::move(gestures), t};
    pair.t = t;
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

std::vector<ContextCluster> cluster_contexts(
    const std::vector<ContextActionPair>& pairs) {
  std::map<AbstractContext, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    groups[pairs[i].context.signature].push_back(i);
  }
  std::vector<ContextCluster> out;
  for (auto& [sig, members] : groups) out.push_back({sig, std::move(members)});
  return out;
}

std::vector<GestureKind> gesture_sequence(const Action& action) {
  std::vector<GestureKind> seq;
  for (const Gesture& g : action.gestures) seq.push_back(g.kind);
  return seq;
}

ActionType identify_action_type(const std::vector<ContextActionPair>& pairs,
                                const ContextCluster& cluster) {
  std::map<std::vector<GestureKind>, std::size_t> counts;
  for (std::size_t i : cluster.members) ++counts[gesture_sequence(pairs[i].action)];
  const auto modal = std::max_element(
      counts.begin(), counts.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  if (modal == counts.end() || 2 * modal->second <= cluster.members.size()) {
    throw NoMajority();
  }

  ActionType type{modal->first, std::nullopt};
  for (Category c : {Category::Actionable, Category::Function, Category::Target}) {
    bool all = true;
    for (std::size_t i : cluster.members) {
      const ContextActionPair& p = pairs[i];
      if (gesture_sequence(p.action) != type.gestures) continue;
      if (!p.context.instance_at(p.action.gestures.front().start, c)) {
        all = false;
        break;
      }
    }
    if (all) {
      type.anchor = c;
      break;
    }
  }
  return type;
}

Rule select_rule(const AbstractContext& signature, const ActionType& type) {
  if (!type.anchor) return Rule::R1;
  if (*type.anchor == Category::Function) return Rule::R2;
  if (*type.anchor == Category::Actionable) {
    if (signature.has(Category::Target)) return Rule::R3;
    if (signature.grid_present) return Rule::R4;
  }
  return Rule::R5;
}

namespace {

class TacticBuilder {
 public:
  TacticBuilder(const ContextCluster& cluster, ActionType type, Rule rule)
      : tactic_{cluster.signature, std::move(type), rule, {}, {}} {}

  void add(const ContextActionPair& pair, Rng& rng, InferStats& stats) {
    switch (tactic_.rule) {
      case Rule::R1:
        add_absolute(pair.action);
        break;
      case Rule::R2:
      case Rule::R5:
        add_icon_relative(pair.action);
        break;
      case Rule::R3:
        add_aimed(pair, rng);
        break;
      case Rule::R4:
        if (!add_grid_move(pair)) ++stats.discarded_pairs;
        break;
    }
  }

  // Returns nullopt when the pools the rule needs stayed empty.
  std::optional<Tactic> finish() {
    if (disp_count_ > 0) {
      const double n = norm(disp_sum_);
      tactic_.pools.mean_disp =
          n > 0.0 ? Point{disp_sum_.x / n, disp_sum_.y / n} : Point{};
    }
    const TacticPools& p = tactic_.pools;
    const bool has_swipe =
        std::count(tactic_.action_type.gestures.begin(),
                   tactic_.action_type.gestures.end(), GestureKind::Swipe) > 0;
    bool ok = !p.dur.empty();
    switch (tactic_.rule) {
      case Rule::R1:
        ok = ok && !p.taps.empty() && (!has_swipe || !p.dist.empty());
        break;
      case Rule::R2:
      case Rule::R5:
        ok = ok && (!has_swipe || !p.dist.empty());
        break;
      case Rule::R3:
        ok = ok && !p.dist.empty() && (!p.direction.empty() || !p.sinx.empty());
        break;
      case Rule::R4:
        ok = ok && !tactic_.patterns.empty();
        break;
    }
    if (!ok) return std::nullopt;
    return std::move(tactic_);
  }

 private:
  void note_swipe(const Gesture& g) {
    TacticPools& p = tactic_.pools;
    p.dist.push_back(g.dist);
    p.sinx.push_back(g.sinx);
    disp_sum_ = disp_sum_ + (1.0 / g.dist) * (g.end - g.start);
    ++disp_count_;
  }

  void add_absolute(const Action& action) {
    for (const Gesture& g : action.gestures) {
      tactic_.pools.taps.push_back({g.start.x, g.start.y, g.dur});
      tactic_.pools.dur.push_back(g.dur);
      if (g.kind == GestureKind::Swipe) note_swipe(g);
    }
  }

  void add_icon_relative(const Action& action) {
    for (const Gesture& g : action.gestures) {
      tactic_.pools.dur.push_back(g.dur);
      if (g.kind == GestureKind::Swipe) note_swipe(g);
    }
  }

  void add_aimed(const ContextActionPair& pair, Rng& rng) {
    const Context& ctx = pair.context;
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < ctx.instances.size(); ++i) {
      if (ctx.instances[i].category == Category::Target) targets.push_back(i);
    }
    for (const Gesture& g : pair.action.gestures) {
      tactic_.pools.dur.push_back(g.dur);
      if (g.kind != GestureKind::Swipe) continue;
      note_swipe(g);
      const auto origin = ctx.instance_at(g.start, Category::Actionable);
      if (!origin || targets.empty()) continue;
      const std::size_t target = targets[rng.index(targets.size())];
      try {
        tactic_.pools.direction.push_back(
            fit_direction(ctx.instances[*origin].centroid, g.end,
                          ctx.instances[target].centroid));
      } catch (const VerticalDegenerate&) {
        // Application falls back to the sinx pool for this sample.
      }
    }
  }

  bool add_grid_move(const ContextActionPair& pair) {
    const Context& ctx = pair.context;
    if (!ctx.grid) return false;
    std::vector<GridCell> touched;
    for (const Gesture& g : pair.action.gestures) {
      const auto inst = ctx.instance_at(g.start, Category::Actionable);
      if (!inst) return false;
      const GridCell cell = ctx.grid->cell_of[*inst];
      if (cell.row < 0) return false;
      if (std::find(touched.begin(), touched.end(), cell) == touched.end()) {
        touched.push_back(cell);
      }
    }
    SubmatrixPattern pattern;
    try {
      pattern = extract_submatrix(ctx.grid->cell_grid(), touched);
    } catch (const HeterogeneousTouch&) {
      return false;
    }
    for (const Gesture& g : pair.action.gestures) tactic_.pools.dur.push_back(g.dur);
    if (std::find(tactic_.patterns.begin(), tactic_.patterns.end(), pattern) ==
        tactic_.patterns.end()) {
      tactic_.patterns.push_back(std::move(pattern));
    }
    return true;
  }

  Tactic tactic_;
  Point disp_sum_;
  int disp_count_ = 0;
};

}  // namespace

InferResult infer_tactics(const std::vector<ContextActionPair>& pairs, Rng& rng) {
  InferResult result;
  const std::vector<ContextCluster> clusters = cluster_contexts(pairs);
  result.stats.clusters = static_cast<int>(clusters.size());

  for (const ContextCluster& cluster : clusters) {
    ActionType type;
    try {
      type = identify_action_type(pairs, cluster);
    } catch (const NoMajority&) {
      ++result.stats.no_majority;
      result.stats.discarded_pairs += static_cast<int>(cluster.members.size());
      continue;
    }
    const Rule rule = select_rule(cluster.signature, type);
    TacticBuilder builder(cluster, type, rule);
    for (std::size_t i : cluster.members) {
      if (gesture_sequence(pairs[i].action) != type.gestures) {
        ++result.stats.discarded_pairs;
        continue;
      }
      builder.add(pairs[i], rng, result.stats);
    }
    if (auto tactic = builder.finish()) {
      result.tactics.tactics.push_back(std::move(*tactic));
    }
  }
  if (result.tactics.tactics.empty()) throw EmptyDemo();
  return result;
}

}  // namespace playtest
