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

#include <fstream>
#include <iterator>

#include "json.hpp"
#include "playtest/errors.hpp"
#include "playtest/tactic.hpp"

namespace playtest {

using nlohmann::json;

const char* to_string(Rule r) {
  switch (r) {
    case Rule::R1:
      return "R1";
    case Rule::R2:
      return "R2";
    case Rule::R3:
      return "R3";
    case Rule::R4:
      return "R4";
    case Rule::R5:
      return "R5";
  }
  return "?";
}

std::optional<Rule> parse_rule(std::string_view s) {
  for (Rule r : {Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5}) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

std::string to_string(const ActionType& at) {
  std::string out = "[";
  for (std::size_t i = 0; i < at.gestures.size(); ++i) {
    if (i > 0) out += ",";
    out += to_string(at.gestures[i]);
  }
  out += "]";
  if (at.anchor) out += std::string("(") + to_string(*at.anchor) + ")";
  return out;
}

namespace {

json signature_to_json(const AbstractContext& ac) {
  json cats = json::array();
  for (Category c : kAllCategories) {
    if (ac.has(c)) cats.push_back(to_string(c));
  }
  return {{"categories", cats}, {"grid", ac.grid_present}};
}

AbstractContext signature_from_json(const json& j) {
  AbstractContext ac;
  for (const auto& c : j.at("categories")) {
    const auto cat = parse_category(c.get<std::string>());
    if (!cat) throw FormatError("unknown category " + c.dump());
    ac.add(*cat);
  }
  ac.grid_present = j.at("grid").get<bool>();
  return ac;
}

GestureKind gesture_from_string(const std::string& s) {
  if (s == "tap") return GestureKind::Tap;
  if (s == "swipe") return GestureKind::Swipe;
  throw FormatError("unknown gesture " + s);
}

json tactic_to_json(const Tactic& t) {
  json gestures = json::array();
  for (GestureKind g : t.action_type.gestures) gestures.push_back(to_string(g));
  json anchor = t.action_type.anchor ? json(to_string(*t.action_type.anchor))
                                     : json(nullptr);

  json direction = json::array();
  for (const DirectionParam& d : t.pools.direction) {
    direction.push_back(
        {{"kind", d.kind == DirectionParam::Kind::Linear ? "linear" : "quadratic"},
         {"value", d.value}});
  }
  json taps = json::array();
  for (const TapSample& s : t.pools.taps) {
    taps.push_back({{"x", s.x}, {"y", s.y}, {"dur", s.dur}});
  }
  json patterns = json::array();
  for (const SubmatrixPattern& p : t.patterns) {
    json touched = json::array();
    for (const GridCell& c : p.touched) touched.push_back({c.row, c.col});
    patterns.push_back({{"rows", p.rows},
                        {"cols", p.cols},
                        {"cells", p.cells},
                        {"touched", touched}});
  }
  return {
      {"signature", signature_to_json(t.signature)},
      {"action_type", {{"gestures", gestures}, {"anchor", anchor}}},
      {"rule", to_string(t.rule)},
      {"pools",
       {{"dist", t.pools.dist},
        {"dur", t.pools.dur},
        {"sinx", t.pools.sinx},
        {"direction", direction},
        {"taps", taps},
        {"mean_disp", {t.pools.mean_disp.x, t.pools.mean_disp.y}}}},
      {"patterns", patterns},
  };
}

Tactic tactic_from_json(const json& j) {
  Tactic t;
  t.signature = signature_from_json(j.at("signature"));
  const json& at = j.at("action_type");
  for (const auto& g : at.at("gestures")) {
    t.action_type.gestures.push_back(gesture_from_string(g.get<std::string>()));
  }
  if (!at.at("anchor").is_null()) {
    t.action_type.anchor = parse_category(at.at("anchor").get<std::string>());
    if (!t.action_type.anchor) throw FormatError("unknown anchor category");
  }
  const auto rule = parse_rule(j.at("rule").get<std::string>());
  if (!rule) throw FormatError("unknown rule");
  t.rule = *rule;

  const json& pools = j.at("pools");
  t.pools.dist = pools.at("dist").get<std::vector<double>>();
  t.pools.dur = pools.at("dur").get<std::vector<double>>();
  t.pools.sinx = pools.at("sinx").get<std::vector<double>>();
  for (const auto& d : pools.at("direction")) {
    const std::string kind = d.at("kind").get<std::string>();
    if (kind != "linear" && kind != "quadratic") {
      throw FormatError("unknown direction kind " + kind);
    }
    t.pools.direction.push_back({kind == "linear" ? DirectionParam::Kind::Linear
                                                  : DirectionParam::Kind::Quadratic,
                                 d.at("value").get<double>()});
  }
  for (const auto& s : pools.at("taps")) {
    t.pools.taps.push_back(
        {s.at("x").get<double>(), s.at("y").get<double>(), s.at("dur").get<double>()});
  }
  const auto md = pools.at("mean_disp").get<std::vector<double>>();
  if (md.size() != 2) throw FormatError("mean_disp must have two entries");
  t.pools.mean_disp = {md[0], md[1]};

  for (const auto& p : j.at("patterns")) {
    SubmatrixPattern sp;
    sp.rows = p.at("rows").get<int>();
    sp.cols = p.at("cols").get<int>();
    sp.cells = p.at("cells").get<std::vector<int>>();
    if (sp.rows <= 0 || sp.cols <= 0 ||
        sp.cells.size() != static_cast<std::size_t>(sp.rows * sp.cols)) {
      throw FormatError("pattern shape does not match its cells");
    }
    for (const auto& c : p.at("touched")) {
      sp.touched.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
    }
    t.patterns.push_back(std::move(sp));
  }
  return t;
}

}  // namespace

std::string save_tactics(const TacticSet& set) {
  json tactics = json::array();
  for (const Tactic& t : set.tactics) tactics.push_back(tactic_to_json(t));
  const json doc = {
      {"version", set.version},
      {"provenance",
       {{"demo_session", set.provenance.demo_session},
        {"icon_set", set.provenance.icon_set}}},
      {"tactics", tactics},
  };
  return doc.dump(2) + "\n";
}

TacticSet load_tactics(std::string_view text) {
  try {
    const json doc = json::parse(text);
    TacticSet set;
    set.version = doc.at("version").get<int>();
    if (set.version != TacticSet::kVersion) {
      throw FormatError("unsupported tactic file version " +
                        std::to_string(set.version));
    }
    set.provenance.demo_session =
        doc.at("provenance").at("demo_session").get<std::string>();
    set.provenance.icon_set = doc.at("provenance").at("icon_set").get<std::string>();
    for (const auto& t : doc.at("tactics")) {
      set.tactics.push_back(tactic_from_json(t));
    }
    return set;
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid tactic file: ") + e.what());
  }
}

void save_tactics_file(const std::filesystem::path& path, const TacticSet& set) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << save_tactics(set);
}

TacticSet load_tactics_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return load_tactics(text);
}

}  // namespace playtest
