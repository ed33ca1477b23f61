// Copyright 2026 The SUE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// sue: serve, replay, validate, check, dump.

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <boost/asio/io_context.hpp>
#include <boost/asio/signal_set.hpp>
#include <fstream>
#include <iostream>

#include "sue/core/error.hpp"
#include "sue/gateway/server.hpp"
#include "sue/rules/rule_set.hpp"

namespace {

using namespace sue;
namespace asio = boost::asio;

struct EngineOptions {
  std::string rules_path;
  std::string thresholds;  // "s,m,w"
  TimeMs tick_ms = 1000;
};

void add_engine_options(CLI::App* cmd, EngineOptions& opts, bool rules_required) {
  auto* rules = cmd->add_option("--rules", opts.rules_path, "rule file (.sue-rules)")->check(CLI::ExistingFile);
  if (rules_required) rules->required();
  cmd->add_option("--thresholds", opts.thresholds, "belief thresholds strong,medium,weak (default 0.8,0.5,0.2)");
  cmd->add_option("--tick-ms", opts.tick_ms, "tick width in ms")->check(CLI::PositiveNumber);
}

BeliefThresholds parse_thresholds(const std::string& text) {
  BeliefThresholds t;
  if (text.empty()) return t;
  std::vector<double> v;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ValidationError("bad threshold '" + part + "'");
    }
  }
  if (v.size() != 3) throw ValidationError("--thresholds takes three values: strong,medium,weak");
  t = BeliefThresholds{v[0], v[1], v[2]};
  t.validate();
  return t;
}

void print_diagnostics(const std::string& file, const std::vector<rules::Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << file << ":" << d.to_string() << "\n";
}

// Diagnostics have already been printed when this returns nullopt.
std::optional<rules::RuleSet> load_rules(const std::string& path) {
  try {
    return rules::load_rules_file(path);
  } catch (const rules::RuleParseError& e) {
    print_diagnostics(path, e.diagnostics());
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
  }
  return std::nullopt;
}

std::optional<gateway::Scenario> load_scenario(const std::string& path) {
  auto load = gateway::load_scenario_file(path);
  for (const auto& d : load.diagnostics) std::cerr << path << ": " << d.message << "\n";
  return load.scenario;
}

gateway::GatewayConfig make_config(const EngineOptions& opts, TimeMs epoch_ms) {
  gateway::GatewayConfig c;
  c.engine.clock = cep::TickClock{epoch_ms, opts.tick_ms};
  c.engine.thresholds = parse_thresholds(opts.thresholds);
  if (!opts.rules_path.empty()) c.rules_path = opts.rules_path;
  return c;
}

void stop_on_signal(asio::io_context& io, asio::signal_set& signals, gateway::Server& server) {
  signals.async_wait([&](const boost::system::error_code& ec, int sig) {
    if (ec) return;
    spdlog::info("signal {}; shutting down", sig);
    server.stop();
    io.stop();
  });
}

int cmd_serve(const EngineOptions& opts, unsigned short port, const std::string& address) {
  auto rules = load_rules(opts.rules_path);
  if (!rules) return 1;
  // Tick boundaries line up with whole multiples of the tick width.
  const TimeMs now = gateway::wall_clock_ms();
  gateway::GatewayConfig config = make_config(opts, now - now % opts.tick_ms);
  config.mode = gateway::ClockMode::live;
  gateway::Gateway gw(std::move(*rules), config);

  asio::io_context io;
  gateway::Server server(io, gw, port, address);
  server.start();
  gateway::start_live_clock(io, gw);
  asio::signal_set signals(io, SIGINT, SIGTERM);
  stop_on_signal(io, signals, server);
  spdlog::info("live on {}:{} (/ingest, /console)", address, server.port());
  io.run();
  return 0;
}

int cmd_replay(const EngineOptions& opts, const std::string& scenario_path, std::optional<double> speed,
               std::optional<unsigned short> port, const std::string& address) {
  auto rules = load_rules(opts.rules_path);
  if (!rules) return 1;
  auto scenario = load_scenario(scenario_path);
  if (!scenario) return 1;
  gateway::GatewayConfig config = make_config(opts, scenario->epoch_ms);
  config.mode = gateway::ClockMode::replay;
  config.speed = speed.value_or(0.0);
  gateway::Gateway gw(std::move(*rules), config);
  gateway::Replayer replayer(gw, *scenario, speed);

  if (!port) {
    // No server: act as a single console and print what it would receive.
    const auto console = gw.connect(gateway::Endpoint::console);
    auto drain = [&] {
      while (auto frame = gw.pop(console)) std::cout << *frame << "\n";
      std::cout.flush();
    };
    replayer.on_deliver = [&](std::size_t) { drain(); };
    replayer.run();
    drain();
    return 0;
  }

  asio::io_context io;
  gateway::Server server(io, gw, *port, address);
  server.start();
  asio::signal_set signals(io, SIGINT, SIGTERM);
  stop_on_signal(io, signals, server);
  spdlog::info("replaying '{}' ({} entries) on {}:{}", scenario->name, replayer.size(), address, server.port());
  gateway::start_replay(io, replayer, [&] { spdlog::info("replay finished; still serving until interrupted"); });
  io.run();
  return 0;
}

int cmd_validate(const std::string& path) {
  auto scenario = load_scenario(path);
  if (!scenario) return 1;
  std::cout << path << ": ok, " << scenario->entries.size() << " entries\n";
  return 0;
}

int cmd_check(const std::string& path) {
  auto rules = load_rules(path);
  if (!rules) return 1;
  std::cout << path << ": ok, " << rules->fluents.size() << " fluents, " << rules->rules.size() << " rules\n";
  return 0;
}

int cmd_dump(const EngineOptions& opts, const std::string& scenario_path, const std::string& out_path,
             TimeMs bucket_ms) {
  rules::RuleSet rules;
  if (!opts.rules_path.empty()) {
    auto loaded = load_rules(opts.rules_path);
    if (!loaded) return 1;
    rules = std::move(*loaded);
  }
  auto scenario = load_scenario(scenario_path);
  if (!scenario) return 1;
  gateway::GatewayConfig config = make_config(opts, scenario->epoch_ms);
  config.mode = gateway::ClockMode::replay;
  gateway::Gateway gw(std::move(rules), config);
  gateway::Replayer replayer(gw, *scenario, std::nullopt);
  replayer.run();

  const auto& log = gw.log();
  const analytics::TimeRange range = analytics::run_extent(log);
  Json complex = Json::array();
  for (const ComplexEvent* ce : log.complex_events()) complex.push_back(*ce);
  Json details = Json::object();
  for (const ComplexEvent* ce : log.complex_events()) details[ce->id] = analytics::event_detail(log, ce->id);
  const Json doc{{"scenario", scenario->name},
                 {"range", {{"t0", range.t0}, {"t1", range.t1}}},
                 {"summary", analytics::summary(log, range)},
                 {"timeline", {{"bucket_ms", bucket_ms}, {"buckets", analytics::timeline(log, range, bucket_ms)}}},
                 {"sensors", log.sensors()},
                 {"events", log.simple_events()},
                 {"complex_events", std::move(complex)},
                 {"details", std::move(details)}};

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  out << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // Logs go to stderr so replay output on stdout stays clean JSON Lines.
  spdlog::set_default_logger(spdlog::stderr_color_mt("sue"));
  spdlog::cfg::load_env_levels();  // SPDLOG_LEVEL=debug etc.

  CLI::App app{"sue: situational understanding event service"};
  app.require_subcommand(1);

  EngineOptions opts;
  std::string address = "0.0.0.0";
  unsigned short serve_port = 8765;
  auto* serve = app.add_subcommand("serve", "run the live WebSocket service");
  add_engine_options(serve, opts, true);
  serve->add_option("--port", serve_port, "listen port (0 picks a free one)");
  serve->add_option("--address", address, "listen address");

  std::string scenario_path;
  double speed = 1.0;
  bool fast = false;
  std::optional<unsigned short> replay_port;
  auto* replay = app.add_subcommand("replay", "replay a scenario file");
  add_engine_options(replay, opts, true);
  replay->add_option("--scenario", scenario_path, "scenario file (.sue.jsonl)")->required()->check(CLI::ExistingFile);
  auto* speed_opt = replay->add_option("--speed", speed, "time multiplier")->check(CLI::PositiveNumber);
  replay->add_flag("--fast", fast, "as fast as possible")->excludes(speed_opt);
  replay->add_option("--port", replay_port, "serve consoles on this port instead of printing to stdout");
  replay->add_option("--address", address, "listen address");

  auto* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("--scenario", scenario_path, "scenario file")->required();

  std::string rules_only;
  auto* check = app.add_subcommand("check", "check a rule file");
  check->add_option("--rules", rules_only, "rule file")->required();

  std::string out_path;
  TimeMs bucket_ms = 60'000;
  auto* dump = app.add_subcommand("dump", "replay a scenario offline and export analytics as JSON");
  add_engine_options(dump, opts, false);
  dump->add_option("--scenario", scenario_path, "scenario file")->required()->check(CLI::ExistingFile);
  dump->add_option("--out", out_path, "output JSON file")->required();
  dump->add_option("--bucket-ms", bucket_ms, "timeline bucket width")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return cmd_serve(opts, serve_port, address);
    if (*replay) {
      return cmd_replay(opts, scenario_path, fast ? std::nullopt : std::optional<double>(speed), replay_port, address);
    }
    if (*validate) return cmd_validate(scenario_path);
    if (*check) return cmd_check(rules_only);
    if (*dump) return cmd_dump(opts, scenario_path, out_path, bucket_ms);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
