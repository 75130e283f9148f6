#include "mancala/cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mancala/service.h"
#include "mancala/session.h"
#include "mancala/tournament.h"
#include "mancala/wire.h"

namespace mancala::cli {

namespace {

std::atomic<bool> g_stop{false};

extern "C" void HandleSignal(int) { g_stop = true; }

struct ServeFlags {
  int port = 8080;
  std::string host = "127.0.0.1";
  bool allow_cors = false;
  std::string snapshot_file;
  std::size_t max_sessions = 0;
};

struct TournamentFlags {
  int games = 10;
  std::uint64_t seed = 42;
  std::string pairings = "table3";
  std::optional<int> alternate_after;
  std::string format = "pretty";
  int pits = 7;
  int stones = 7;
  unsigned threads = 0;
};

struct DemoFlags {
  int level_a = 3;
  int level_b = 1;
  std::uint64_t seed = 42;
  int pits = 7;
  int stones = 7;
};

void LoadSnapshot(SessionStore& store, const std::string& path,
                  std::ostream& out) {
  if (path.empty() || !std::filesystem::exists(path)) return;
  std::ifstream in(path);
  wire::Json j = wire::Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw std::runtime_error("snapshot " + path + " is not valid JSON");
  }
  std::vector<SessionRecord> records;
  try {
    records = wire::DecodeSnapshot(j);
  } catch (const GameError& e) {
    throw std::runtime_error("snapshot " + path + ": " + e.what());
  }
  const std::size_t n = records.size();
  try {
    store.Import(std::move(records));
  } catch (const GameError& e) {
    throw std::runtime_error("snapshot " + path + ": " + e.what());
  }
  out << "restored " << n << " session(s) from " << path << std::endl;
}

void SaveSnapshot(const SessionStore& store, const std::string& path,
                  std::ostream& out) {
  if (path.empty()) return;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + tmp);
    file << wire::EncodeSnapshot(store.Export()).dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
  out << "saved " << store.size() << " session(s) to " << path << std::endl;
}

int Serve(const ServeFlags& flags, std::ostream& out) {
  g_stop = false;
  SessionStore store(GameRegistry::WithDefaults(), flags.max_sessions);
  LoadSnapshot(store, flags.snapshot_file, out);

  HttpServer server(store, ServiceOptions{.allow_cors = flags.allow_cors});
  const int port = server.Bind(flags.host, flags.port);
  out << "listening on " << flags.host << ":" << port << std::endl;

  auto prev_int = std::signal(SIGINT, HandleSignal);
  auto prev_term = std::signal(SIGTERM, HandleSignal);
  std::thread loop([&] { server.Run(); });
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(50));
  server.Stop();
  loop.join();
  std::signal(SIGINT, prev_int);
  std::signal(SIGTERM, prev_term);

  SaveSnapshot(store, flags.snapshot_file, out);
  out << "stopped" << std::endl;
  return kExitOk;
}

int Tournament(const TournamentFlags& flags, std::ostream& out) {
  const BoardConfig config(flags.pits, flags.stones);
  const ReportFormat format = ParseReportFormat(flags.format);
  if (flags.games < 1) {
    throw GameError(ErrorCode::kBadRequest, "--games must be >= 1");
  }
  if (flags.pairings == "table3") {
    if (flags.alternate_after) {
      throw GameError(ErrorCode::kBadRequest,
                      "--alternate-after applies to custom pairings only");
    }
    out << EmitTable3Report(
        RunTable3(flags.games, flags.seed, config, flags.threads), format);
    return kExitOk;
  }
  const std::vector<Pairing> pairings = ParsePairings(flags.pairings);
  std::vector<MatchResult> results;
  for (std::size_t i = 0; i < pairings.size(); ++i) {
    MatchPlan plan;
    plan.agent_a = pairings[i].a;
    plan.agent_b = pairings[i].b;
    plan.num_games = flags.games;
    plan.alternate_after = flags.alternate_after.value_or(flags.games / 2);
    plan.master_seed = DeriveSeed(flags.seed, i);
    plan.config = config;
    results.push_back(RunMatch(plan, flags.threads));
  }
  out << EmitReport(results, format);
  return kExitOk;
}

int Demo(const DemoFlags& flags, std::ostream& out) {
  const BoardConfig config(flags.pits, flags.stones);
  const AgentSpec a = AgentForLevel(flags.level_a);
  const AgentSpec b = AgentForLevel(flags.level_b);
  const GameTranscript t = PlayGame(a, b, flags.seed, config);

  GameState state = NewGame(config);
  for (const Move& m : t.moves) {
    auto [next, outcome] = ApplyAction(state, Action{m.pit});
    out << "t=" << next.turn_index() << " p" << m.player << " pit=" << m.pit
        << " board=[";
    for (std::size_t i = 0; i < next.board().size(); ++i) {
      out << (i ? "," : "") << next.board()[i];
    }
    out << "] reward=" << outcome.reward;
    if (outcome.extra_turn) out << " extra_turn";
    if (outcome.capture) {
      out << " capture=" << outcome.capture->stones_captured << "@"
          << outcome.capture->landing_pit_index;
    }
    if (outcome.terminal) {
      out << " swept=" << outcome.terminal->swept[0] << "/"
          << outcome.terminal->swept[1];
    }
    out << " sum=" << next.total_stones() << "\n";
    state = std::move(next);
  }
  const auto scores = state.scores();
  if (*state.winner() == Winner::kTie) {
    out << "result: tie " << scores[0] << "-" << scores[1] << "\n";
  } else {
    out << "result: player " << WinnerName(*state.winner()) << " ("
        << (*state.winner() == Winner::kPlayer0 ? a : b).Label() << ") wins "
        << scores[0] << "-" << scores[1] << "\n";
  }
  return kExitOk;
}

}  // namespace

void RequestStop() { g_stop = true; }

AgentSpec ParseAgent(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw GameError(ErrorCode::kBadRequest,
                    "agent '" + text + "' must look like kind:epsilon");
  }
  AgentSpec spec;
  spec.kind = ParseAgentKind(text.substr(0, colon));
  std::istringstream eps(text.substr(colon + 1));
  if (!(eps >> spec.epsilon) || !eps.eof()) {
    throw GameError(ErrorCode::kBadRequest,
                    "bad epsilon in agent '" + text + "'");
  }
  spec.Validate();
  return spec;
}

std::vector<Pairing> ParsePairings(const std::string& text) {
  std::vector<Pairing> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto slash = item.find('/');
    if (slash == std::string::npos) {
      throw GameError(ErrorCode::kBadRequest,
                      "pairing '" + item + "' must look like A/B");
    }
    out.push_back({ParseAgent(item.substr(0, slash)),
                   ParseAgent(item.substr(slash + 1))});
  }
  if (out.empty()) {
    throw GameError(ErrorCode::kBadRequest, "no pairings given");
  }
  return out;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Kalah-variant Mancala environment: HTTP service, tournaments "
               "and demo games"};
  app.name("mancala");
  app.require_subcommand(1);

  ServeFlags serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Run the HTTP game service");
  serve_cmd->add_option("--port", serve.port, "TCP port (0 picks a free one)")
      ->envname("GAPOERA_PORT")
      ->capture_default_str();
  serve_cmd->add_option("--host", serve.host, "Address to bind")
      ->envname("GAPOERA_HOST")
      ->capture_default_str();
  serve_cmd->add_flag("--allow-cors", serve.allow_cors,
                      "Send permissive cross-origin headers");
  serve_cmd->add_option("--snapshot-file", serve.snapshot_file,
                        "Load sessions from this JSON file at start and save "
                        "them there on shutdown");
  serve_cmd->add_option("--max-sessions", serve.max_sessions,
                        "Evict least recently used games beyond this many "
                        "(0 = unlimited)")
      ->capture_default_str();

  TournamentFlags tour;
  CLI::App* tour_cmd =
      app.add_subcommand("tournament", "Play seeded agent-vs-agent matches");
  tour_cmd->add_option("--games", tour.games, "Games per pairing")
      ->capture_default_str();
  tour_cmd->add_option("--seed", tour.seed, "Master seed")->capture_default_str();
  tour_cmd->add_option("--pairings", tour.pairings,
                       "'table3' or comma-separated kind:eps/kind:eps pairs")
      ->capture_default_str();
  tour_cmd->add_option("--alternate-after", tour.alternate_after,
                       "Games agent A opens before B does (default games/2)");
  tour_cmd->add_option("--format", tour.format, "csv or pretty")
      ->capture_default_str();
  tour_cmd->add_option("--pits", tour.pits, "Pits per side")->capture_default_str();
  tour_cmd->add_option("--stones", tour.stones, "Initial stones per pit")
      ->capture_default_str();
  tour_cmd->add_option("--threads", tour.threads,
                       "Worker threads (0 = one per core)")
      ->capture_default_str();

  DemoFlags demo;
  CLI::App* demo_cmd =
      app.add_subcommand("demo", "Trace one bot-vs-bot game move by move");
  demo_cmd->add_option("--level-a", demo.level_a, "Level of player 0 (1-3)")
      ->capture_default_str();
  demo_cmd->add_option("--level-b", demo.level_b, "Level of player 1 (1-3)")
      ->capture_default_str();
  demo_cmd->add_option("--seed", demo.seed, "Game seed")->capture_default_str();
  demo_cmd->add_option("--pits", demo.pits, "Pits per side")->capture_default_str();
  demo_cmd->add_option("--stones", demo.stones, "Initial stones per pit")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help(app.get_subcommands().empty()
                        ? ""
                        : app.get_subcommands().front()->get_name());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*serve_cmd) return Serve(serve, out);
    if (*tour_cmd) return Tournament(tour, out);
    if (*demo_cmd) return Demo(demo, out);
  } catch (const GameError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace mancala::cli
