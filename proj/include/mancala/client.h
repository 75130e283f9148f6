#ifndef MANCALA_CLIENT_H_
#define MANCALA_CLIENT_H_

// Synchronous client for the /v1 wire protocol. Mirrors the usual
// research loop:
//
//   GameClient game("mancala", "http://127.0.0.1:8080");
//   game.Start({.bot_level = 3});
//   while (!game.is_over()) {
//     if (game.current_player() == 0) {
//       game.Step(agent(game.Observe(game.current_player())));
//     } else {
//       game.BotStep();
//     }
//   }
//
// Mutating calls are never retried.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mancala/agents.h"
#include "mancala/engine.h"
#include "mancala/session.h"
#include "mancala/wire.h"

namespace httplib {
class Client;
}

namespace mancala {

// A WireError returned by the server, or a transport failure
// (http_status 0, code "transport").
class ClientError : public std::runtime_error {
 public:
  ClientError(int http_status, std::string code, const std::string& message)
      : std::runtime_error(message),
        http_status_(http_status),
        code_(std::move(code)) {}

  int http_status() const { return http_status_; }
  const std::string& code() const { return code_; }

 private:
  int http_status_;
  std::string code_;
};

struct StartOptions {
  std::optional<BoardConfig> config;
  std::optional<int> bot_level;
  std::optional<AgentSpec> bot;  // exact bot instead of a ladder level
  std::optional<Player> bot_player;
  std::optional<std::uint64_t> seed;
};

struct ClientStep {
  SessionView view;
  StepOutcome outcome;
};

struct ClientBotStep {
  Action action;
  SessionView view;
  StepOutcome outcome;
};

class GameClient {
 public:
  GameClient(std::string game_name, std::string host_url);
  ~GameClient();
  GameClient(GameClient&&) noexcept;
  GameClient& operator=(GameClient&&) noexcept;

  std::string Start(const StartOptions& options = {});
  // Binds to an existing game and refreshes the cache.
  void Attach(const std::string& game_id);

  // Fetches the authoritative state and refreshes the cache.
  const SessionView& State();
  Observation Observe(Player player);
  std::vector<Action> LegalActions();
  // Acts as the cached current player unless `player` is given.
  ClientStep Step(Action action, std::optional<Player> player = std::nullopt);
  ClientBotStep BotStep(std::optional<int> level = std::nullopt);
  int SimStart();
  int SimStop();
  void Delete();

  // Cached projections; valid after Start()/Attach().
  const std::optional<std::string>& game_id() const { return game_id_; }
  const SessionView& cached() const;
  bool is_over() const { return cached().state.is_terminal(); }
  Player current_player() const { return cached().state.current_player(); }

 private:
  wire::Json Get(const std::string& path);
  wire::Json Send(const std::string& method, const std::string& path,
                   const std::string& body);
  const std::string& RequireId() const;

  std::string game_name_;
  std::string host_url_;
  std::unique_ptr<httplib::Client> http_;
  std::optional<std::string> game_id_;
  std::optional<SessionView> cache_;
};

}  // namespace mancala

#endif  // MANCALA_CLIENT_H_
