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

// playtest: record demos, infer tactics, play, compare.
//
// Exit status: 0 success, 1 usage error, 2 runtime error.

#include <csignal>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "playtest/errors.hpp"
#include "playtest/game.hpp"
#include "playtest/harness.hpp"
#include "playtest/serve.hpp"

namespace fs = std::filesystem;
using namespace playtest;

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

// Blocks until SIGINT or SIGTERM. Must run before any thread is spawned so
// every thread inherits the mask.
class SignalWaiter {
 public:
  SignalWaiter() {
    sigemptyset(&set_);
    sigaddset(&set_, SIGINT);
    sigaddset(&set_, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set_, nullptr);
  }
  void wait() {
    int sig = 0;
    sigwait(&set_, &sig);
  }

 private:
  sigset_t set_{};
};

std::vector<IconSpec> icons_for(GameId game, const std::string& dir) {
  return dir.empty() ? game_icon_specs(game) : load_icon_specs(dir);
}

int serve_forever(ServeOptions opts) {
  SignalWaiter signals;
  Server server(std::move(opts));
  server.start();
  std::cout << "serving on http://127.0.0.1:" << server.port() << "/ (Ctrl-C to stop)\n"
            << std::flush;
  signals.wait();
  server.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Record game demos, infer playing tactics, and play games with them."};
  app.require_subcommand(1);

  const std::vector<std::string> games{"slingshot", "linkpair", "slider", "buttonrow"};

  // demo
  std::string demo_game;
  std::uint64_t demo_seed = 1;
  std::string demo_out;
  std::string demo_source = "oracle";
  int demo_actions = 40;
  double demo_duration = -1.0;
  double demo_period = 9.0;
  std::uint16_t demo_port = 8080;
  auto* demo = app.add_subcommand(
      "demo",
      "Record a demo: one frame/trace pair per action.\n"
      "With --source ui, open the printed URL and press 'demo'; every gesture made\n"
      "before the next snapshot (one period) belongs to the same action, so a\n"
      "multi-tap move must be finished within one period.");
  demo->add_option("--game", demo_game, "Game")->required()->check(CLI::IsMember(games));
  demo->add_option("--seed", demo_seed, "Game seed");
  demo->add_option("--out", demo_out, "Output directory")->required();
  demo->add_option("--source", demo_source, "Who plays")
      ->check(CLI::IsMember({"oracle", "ui"}));
  auto* n_opt = demo->add_option("--actions", demo_actions, "Number of actions")
                    ->check(CLI::NonNegativeNumber);
  demo->add_option("--duration", demo_duration, "Session length in seconds")
      ->check(CLI::NonNegativeNumber)
      ->excludes(n_opt);
  demo->add_option("--period", demo_period, "Snapshot period in seconds")
      ->check(CLI::PositiveNumber);
  demo->add_option("--port", demo_port, "Port for --source ui");

  // infer
  std::string infer_demo;
  std::string infer_icons;
  std::string infer_out;
  std::uint64_t infer_seed = 0;
  auto* infer = app.add_subcommand("infer", "Infer tactics from a recorded demo");
  infer->add_option("--demo", infer_demo, "Demo directory")->required()->check(CLI::ExistingDirectory);
  infer->add_option("--icons", infer_icons, "Icon directory (<name>.<category>.ppm)")
      ->required()
      ->check(CLI::ExistingDirectory);
  infer->add_option("--out", infer_out, "Tactics file")->required();
  infer->add_option("--seed", infer_seed, "Seed for tie-breaking");

  // play / baseline share their options
  std::string play_game;
  std::string play_tactics;
  std::string play_icons;
  std::uint64_t play_seed = 1;
  int play_budget = 500;
  std::string play_report;
  auto* play = app.add_subcommand("play", "Play a game with inferred tactics");
  auto* baseline = app.add_subcommand("baseline", "Play a game with random taps and swipes");
  for (auto* cmd : {play, baseline}) {
    cmd->add_option("--game", play_game, "Game")->required()->check(CLI::IsMember(games));
    cmd->add_option("--seed", play_seed, "Game and tester seed");
    cmd->add_option("--budget", play_budget, "Actions to issue")->check(CLI::NonNegativeNumber);
    cmd->add_option("--report", play_report, "Report file (JSON)")->required();
  }
  play->add_option("--tactics", play_tactics, "Tactics file")->required()->check(CLI::ExistingFile);
  play->add_option("--icons", play_icons, "Icon directory; defaults to the game's own set")
      ->check(CLI::ExistingDirectory);

  // serve
  ServeOptions serve_opts;
  std::string serve_static;
  std::string serve_sessions = "sessions";
  std::string serve_tactics;
  auto* serve = app.add_subcommand("serve", "Host the browser client");
  serve->add_option("--port", serve_opts.port, "TCP port");
  serve->add_option("--address", serve_opts.address, "Bind address");
  serve->add_option("--static", serve_static, "Directory served at /")
      ->check(CLI::ExistingDirectory);
  serve->add_option("--sessions", serve_sessions, "Where UI demos are written");
  serve->add_option("--tactics", serve_tactics, "Directory of <game>.json tactics for 'play'");

  // report
  std::vector<std::string> compare;
  std::string report_file;
  auto* report = app.add_subcommand("report", "Print a report, or compare two");
  auto* cmp_opt = report->add_option("--compare", compare, "Two reports")->expected(2);
  report->add_option("file", report_file, "Report to print")->excludes(cmp_opt);

  // icons
  std::string icons_game;
  std::string icons_out;
  auto* icons = app.add_subcommand("icons", "Write a game's icon set");
  icons->add_option("--game", icons_game, "Game")->required()->check(CLI::IsMember(games));
  icons->add_option("--out", icons_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }
  if (report->parsed() && compare.empty() && report_file.empty()) {
    std::cerr << "report: give a file or --compare A B\n";
    return kUsageError;
  }

  try {
    if (demo->parsed()) {
      const GameId game = parse_game_id(demo_game);
      if (demo_duration >= 0.0) {
        demo_actions = static_cast<int>(std::floor(demo_duration / demo_period));
      }
      if (demo_source == "ui") {
        serve_opts.port = demo_port;
        serve_opts.sessions_dir = demo_out;
        std::cout << "choose '" << demo_game << "', seed " << demo_seed
                  << ", and press 'demo'; recordings go under " << demo_out << "\n";
        return serve_forever(serve_opts);
      }
      auto g = make_game(game, demo_seed);
      OracleSource source(*g, demo_seed);
      RecordOptions opts;
      opts.actions = demo_actions;
      opts.period_s = demo_period;
      const DemoManifest m = record_demo(*g, source, demo_out, opts);
      std::cout << "recorded " << m.pairs.size() << " actions to " << demo_out << "\n";
    } else if (infer->parsed()) {
      const InferResult r = infer_from_demo(infer_demo, load_icon_specs(infer_icons), infer_seed);
      save_tactics_file(infer_out, r.tactics);
      std::cout << "inferred " << r.tactics.tactics.size() << " tactics from " << r.stats.clusters
                << " context clusters\n";
      for (const Tactic& t : r.tactics.tactics) {
        std::cout << "  " << to_string(t.rule) << "  " << to_string(t.signature) << "\n";
      }
    } else if (play->parsed() || baseline->parsed()) {
      const GameId game = parse_game_id(play_game);
      auto g = make_game(game, play_seed);
      PlayOptions opts;
      opts.budget = play_budget;
      opts.seed = play_seed;
      const TestReport r =
          play->parsed()
              ? run_test(*g, load_tactics_file(play_tactics), icons_for(game, play_icons), opts)
              : run_random_baseline(*g, opts);
      save_report(play_report, r);
      std::cout << r.mode << " " << r.game << " seed " << r.seed << ": score " << r.score
                << ", level " << r.level << ", valid-action rate " << r.valid_action_rate << "\n";
    } else if (serve->parsed()) {
      serve_opts.static_dir = serve_static;
      serve_opts.sessions_dir = serve_sessions;
      serve_opts.tactics_dir = serve_tactics;
      return serve_forever(serve_opts);
    } else if (report->parsed()) {
      if (!compare.empty()) {
        std::cout << compare_reports(load_report(compare[0]), load_report(compare[1]));
      } else {
        std::cout << report_to_json(load_report(report_file));
      }
    } else if (icons->parsed()) {
      save_icon_specs(icons_out, game_icon_specs(parse_game_id(icons_game)));
      std::cout << "wrote " << game_icon_specs(parse_game_id(icons_game)).size() << " icons to "
                << icons_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
