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

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "playtest/errors.hpp"
#include "playtest/harness.hpp"

namespace playtest {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_manifest(const fs::path& dir, const DemoManifest& m) {
  const json doc{{"game", m.game},     {"seed", m.seed},   {"period_s", m.period_s},
                 {"source", m.source}, {"session_id", m.session_id}, {"pairs", m.pairs}};
  write_text(dir / "manifest.json", doc.dump(2) + "\n");
}

}  // namespace

std::optional<std::string> OracleSource::next(const Frame&, std::int64_t t_ms,
                                              std::chrono::milliseconds) {
  Action action = oracle_.next_action(game_);
  EmitOptions opts;
  opts.first_tracking_id = tracking_id_;
  tracking_id_ += static_cast<std::uint32_t>(action.gestures.size());
  // The player reacts half a second after the prompt.
  return emit_trace(action, static_cast<double>(t_ms) / 1000.0 + 0.5, opts);
}

DemoManifest record_demo(Game& game, ActionSource& source, const fs::path& out,
                         const RecordOptions& options) {
  fs::create_directories(out);
  DemoManifest m;
  m.game = to_string(game.id());
  m.seed = game.seed();
  m.period_s = options.period_s;
  m.source = source.name();
  m.session_id = m.game + "-" + std::to_string(m.seed) + "-" + m.source;

  const auto period_ms = static_cast<std::int64_t>(options.period_s * 1000.0);
  const auto started = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - started)
        .count();
  };

  for (int i = 0; i < options.actions; ++i) {
    const std::int64_t t = options.realtime ? elapsed_ms() : i * period_ms;
    const Frame frame = game.render();
    write_ppm(out / (std::to_string(t) + ".ppm"), frame);
    const auto events = source.next(frame, t, std::chrono::milliseconds(3 * period_ms));
    write_text(out / (std::to_string(t) + ".txt"), events.value_or(""));
    m.pairs.push_back(t);
    if (!events) {
      write_manifest(out, m);
      throw SourceTimeout(t);
    }
    game.inject(*events);
    if (options.realtime) {
      const std::int64_t next_tick = t + period_ms;
      const std::int64_t now = elapsed_ms();
      if (now < next_tick) std::this_thread::sleep_for(std::chrono::milliseconds(next_tick - now));
    }
  }
  write_manifest(out, m);
  return m;
}

DemoManifest oracle_play(GameId id, std::uint64_t seed, int actions, const fs::path& out) {
  auto game = make_game(id, seed);
  OracleSource source(*game, seed);
  RecordOptions opts;
  opts.actions = actions;
  return record_demo(*game, source, out, opts);
}

DemoManifest read_manifest(const fs::path& dir) {
  try {
    const json doc = json::parse(read_text(dir / "manifest.json"));
    DemoManifest m;
    m.game = doc.at("game").get<std::string>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.period_s = doc.at("period_s").get<double>();
    m.source = doc.at("source").get<std::string>();
    m.session_id = doc.at("session_id").get<std::string>();
    m.pairs = doc.at("pairs").get<std::vector<std::int64_t>>();
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
}

InferResult infer_from_demo(const fs::path& dir, const std::vector<IconSpec>& specs,
                            std::uint64_t seed, const MatchOptions& match) {
  const DemoPairs demo = pair_demo(dir, specs, match);
  Rng rng(seed);
  InferResult result = infer_tactics(demo.pairs, rng);
  result.tactics.provenance.demo_session = demo.session_id;
  std::ostringstream hex;
  hex << std::hex << icon_set_hash(specs);
  result.tactics.provenance.icon_set = hex.str();
  return result;
}

}  // namespace playtest
