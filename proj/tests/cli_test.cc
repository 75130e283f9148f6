#include "mancala/cli.h"

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "mancala/client.h"
#include "mancala/service.h"

namespace mancala::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunCli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Output stream that another thread can read while `serve` writes to it.
class SharedOutput : public std::stringbuf {
 public:
  std::string Snapshot() {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return str();
  }

 protected:
  std::streamsize xsputn(const char* s, std::streamsize n) override {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return std::stringbuf::xsputn(s, n);
  }
  int_type overflow(int_type c) override {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return std::stringbuf::overflow(c);
  }

 private:
  std::recursive_mutex mu_;
};

// Runs `serve` on a background thread until Stop().
class ServeRun {
 public:
  explicit ServeRun(std::vector<std::string> args)
      : out_(&buf_), thread_([this, args] {
          code_ = Run(args, out_, err_);
          done_ = true;
        }) {}

  // Port from the "listening on" line, or -1 when serve ended first.
  int WaitForPort() {
    const std::regex re(R"(listening on [^:]+:(\d+))");
    for (int i = 0; i < 500; ++i) {
      std::smatch m;
      const std::string text = buf_.Snapshot();
      if (std::regex_search(text, m, re)) return std::stoi(m[1]);
      if (done_) return -1;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    return -1;
  }

  int Stop() {
    RequestStop();
    thread_.join();
    return code_;
  }

  std::string output() { return buf_.Snapshot(); }

 private:
  SharedOutput buf_;
  std::ostream out_;
  std::ostringstream err_;
  std::atomic<bool> done_{false};
  int code_ = -1;
  std::thread thread_;
};

TEST(CliTest, HelpAndUsageErrors) {
  const Outcome help = RunCli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("tournament"), std::string::npos);
  EXPECT_NE(help.out.find("serve"), std::string::npos);

  EXPECT_EQ(RunCli({"tournament", "--help"}).code, kExitOk);
  EXPECT_EQ(RunCli({}).code, kExitUsage);
  EXPECT_EQ(RunCli({"fly"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"tournament", "--games", "many"}).code, kExitUsage);

  const Outcome zero_pits = RunCli({"demo", "--pits", "0"});
  EXPECT_EQ(zero_pits.code, kExitUsage);
  EXPECT_NE(zero_pits.err.find("error:"), std::string::npos);
  EXPECT_EQ(RunCli({"tournament", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"tournament", "--games", "0"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"demo", "--level-a", "5"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"tournament", "--pairings", "ga1:0.1"}).code, kExitUsage);
}

TEST(CliTest, ParsePairings) {
  const auto p = ParsePairings("ga1:0.1/ga2:0.3,random:1/greedy1:0");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].a, (AgentSpec{AgentKind::kGreedy1, 0.1, 0}));
  EXPECT_EQ(p[0].b, (AgentSpec{AgentKind::kGreedy2, 0.3, 0}));
  EXPECT_EQ(p[1].a, (AgentSpec{AgentKind::kRandom, 1.0, 0}));
  EXPECT_THROW(ParseAgent("ga1"), GameError);
  EXPECT_THROW(ParseAgent("ga1:x"), GameError);
  EXPECT_THROW(ParseAgent("ga1:1.2"), GameError);
  EXPECT_THROW(ParsePairings(""), GameError);
}

TEST(CliTest, TournamentCsvIsReproducible) {
  const std::vector<std::string> args = {"tournament", "--games", "30",
                                         "--seed", "5", "--format", "csv"};
  const Outcome a = RunCli(args);
  const Outcome b = RunCli(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto lines = Lines(a.out);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "pairing,wins_a,wins_b,ties,seed");
  EXPECT_NE(RunCli({"tournament", "--games", "30", "--seed", "6", "--format",
                    "csv"})
                .out,
            a.out);
}

TEST(CliTest, CustomPairings) {
  const Outcome r = RunCli({"tournament", "--pairings",
                            "ga1:0.1/random:1,ga2:0/ga2:0", "--games", "8",
                            "--alternate-after", "2", "--format", "pretty",
                            "--pits", "4", "--stones", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("GA1(0.1) vs Random(1)"), std::string::npos);
  EXPECT_NE(r.out.find("2/6"), std::string::npos);
  EXPECT_EQ(RunCli({"tournament", "--alternate-after", "2"}).code, kExitUsage);
}

TEST(CliTest, DemoTracesEveryMove) {
  const Outcome r = RunCli({"demo", "--seed", "9"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_GE(lines.size(), 2u);
  const std::regex move_re(R"(t=(\d+) p[01] pit=\d+ board=\[.*\] reward=\d+.* sum=(\d+))");
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    std::smatch m;
    ASSERT_TRUE(std::regex_search(lines[i], m, move_re)) << lines[i];
    EXPECT_EQ(std::stoi(m[1]), static_cast<int>(i + 1));
    EXPECT_EQ(std::stoi(m[2]), 98);
  }
  EXPECT_EQ(lines.back().rfind("result: ", 0), 0u) << lines.back();
  EXPECT_NE(lines[lines.size() - 2].find("swept="), std::string::npos);
  EXPECT_EQ(RunCli({"demo", "--seed", "9"}).out, r.out);
}

TEST(CliTest, ServeAnswersAndStops) {
  ServeRun serve({"serve", "--port", "0"});
  const int port = serve.WaitForPort();
  ASSERT_GT(port, 0) << serve.output();
  GameClient game("mancala", "http://127.0.0.1:" + std::to_string(port));
  game.Start();
  game.Step(Action{0});
  EXPECT_EQ(game.current_player(), 0);
  EXPECT_EQ(serve.Stop(), kExitOk);
  EXPECT_NE(serve.output().find("stopped"), std::string::npos);
}

TEST(CliTest, ServeReadsPortFromEnvironment) {
  ::setenv("GAPOERA_PORT", "0", 1);
  ServeRun serve({"serve"});
  const int port = serve.WaitForPort();
  ::unsetenv("GAPOERA_PORT");
  EXPECT_GT(port, 0) << serve.output();
  EXPECT_NE(port, 8080);
  EXPECT_EQ(serve.Stop(), kExitOk);
}

TEST(CliTest, BusyPortExitsWithRuntimeError) {
  SessionStore store;
  HttpServer holder(store);
  const int port = holder.Bind("127.0.0.1", 0);
  const Outcome r = RunCli({"serve", "--port", std::to_string(port)});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_NE(r.err.find("cannot bind"), std::string::npos);
}

TEST(CliTest, SnapshotSurvivesRestart) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("mancala_snapshot_" + std::to_string(::getpid()) + ".json");
  std::filesystem::remove(path);

  std::string id;
  GameState saved;
  {
    ServeRun serve({"serve", "--port", "0", "--snapshot-file", path.string()});
    const int port = serve.WaitForPort();
    ASSERT_GT(port, 0);
    GameClient game("mancala", "http://127.0.0.1:" + std::to_string(port));
    StartOptions opts;
    opts.bot_level = 2;
    id = game.Start(opts);
    game.Step(Action{6});
    game.SimStart();
    game.BotStep();
    saved = game.cached().state;
    EXPECT_EQ(serve.Stop(), kExitOk);
    EXPECT_NE(serve.output().find("saved 1 session(s)"), std::string::npos);
  }
  ASSERT_TRUE(std::filesystem::exists(path));
  {
    ServeRun serve({"serve", "--port", "0", "--snapshot-file", path.string()});
    const int port = serve.WaitForPort();
    ASSERT_GT(port, 0) << serve.output();
    EXPECT_NE(serve.output().find("restored 1 session(s)"), std::string::npos);
    GameClient game("mancala", "http://127.0.0.1:" + std::to_string(port));
    game.Attach(id);
    EXPECT_EQ(game.cached().state, saved);
    EXPECT_EQ(game.cached().sim_depth, 1);
    EXPECT_EQ(game.SimStop(), 0);
    serve.Stop();
  }

  std::filesystem::remove(path);
  {
    std::ofstream bad(path);
    bad << "{not json";
  }
  const Outcome r = RunCli({"serve", "--port", "0", "--snapshot-file", path.string()});
  EXPECT_EQ(r.code, kExitRuntime);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace mancala::cli
