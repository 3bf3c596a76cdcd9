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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "playtest/errors.hpp"
#include "playtest/harness.hpp"

namespace playtest {
using nlohmann::json;

std::string report_to_json(const TestReport& r) {
  // nlohmann's default object keeps keys sorted, so output is canonical.
  const json doc{{"game", r.game},
                 {"seed", r.seed},
                 {"mode", r.mode},
                 {"score", r.score},
                 {"level", r.level},
                 {"actions_issued", r.actions_issued},
                 {"valid", r.valid},
                 {"invalid", r.invalid},
                 {"fallback", r.fallback},
                 {"state_changing", r.state_changing},
                 {"valid_action_rate", r.valid_action_rate},
                 {"distinct_signatures", r.distinct_signatures},
                 {"fallback_rate", r.fallback_rate},
                 {"step_errors", r.step_errors},
                 {"wall_seconds", r.wall_seconds}};
  return doc.dump(2) + "\n";
}

TestReport report_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    TestReport r;
    r.game = doc.at("game").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.mode = doc.at("mode").get<std::string>();
    r.score = doc.at("score").get<std::int64_t>();
    r.level = doc.at("level").get<int>();
    r.actions_issued = doc.at("actions_issued").get<int>();
    r.valid = doc.at("valid").get<int>();
    r.invalid = doc.at("invalid").get<int>();
    r.fallback = doc.at("fallback").get<int>();
    r.state_changing = doc.at("state_changing").get<int>();
    r.valid_action_rate = doc.at("valid_action_rate").get<double>();
    r.distinct_signatures = doc.at("distinct_signatures").get<int>();
    r.fallback_rate = doc.at("fallback_rate").get<double>();
    r.step_errors = doc.at("step_errors").get<int>();
    r.wall_seconds = doc.at("wall_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
}

void save_report(const std::filesystem::path& path, const TestReport& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << report_to_json(r);
}

TestReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return report_from_json(s.str());
}

std::string compare_reports(const TestReport& a, const TestReport& b) {
  std::string out;
  char line[160];
  auto row = [&](const char* name, const std::string& x, const std::string& y) {
    std::snprintf(line, sizeof line, "%-20s %14s %14s\n", name, x.c_str(), y.c_str());
    out += line;
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  row("", a.mode + ":" + a.game, b.mode + ":" + b.game);
  row("seed", std::to_string(a.seed), std::to_string(b.seed));
  row("score", std::to_string(a.score), std::to_string(b.score));
  row("level", std::to_string(a.level), std::to_string(b.level));
  row("actions_issued", std::to_string(a.actions_issued), std::to_string(b.actions_issued));
  row("valid_action_rate", num(a.valid_action_rate), num(b.valid_action_rate));
  row("fallback_rate", num(a.fallback_rate), num(b.fallback_rate));
  row("distinct_signatures", std::to_string(a.distinct_signatures),
      std::to_string(b.distinct_signatures));
  return out;
}

}  // namespace playtest
