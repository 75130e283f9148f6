#ifndef MANCALA_SESSION_H_
#define MANCALA_SESSION_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "mancala/agents.h"
#include "mancala/engine.h"
#include "mancala/random.h"

namespace mancala {

// Rules entry points for one game type.
struct GameEnvironment {
  std::function<GameState(const BoardConfig&)> new_game;
  std::function<std::vector<Action>(const GameState&)> legal_actions;
  std::function<std::pair<GameState, StepOutcome>(const GameState&, Action)>
      apply_action;
  std::function<Observation(const GameState&, Player)> observe;
};

class GameRegistry {
 public:
  // Registry with "mancala" installed.
  static GameRegistry WithDefaults();

  void Register(const std::string& name, GameEnvironment env);
  bool Contains(const std::string& name) const;
  // Throws GameError(kUnknownGame).
  const GameEnvironment& Get(const std::string& name) const;

 private:
  std::map<std::string, GameEnvironment> games_;
};

// Everything the store keeps for one game. Also the unit of snapshot
// export/import.
struct SessionRecord {
  std::string game_id;
  std::string game_name;
  BoardConfig config;
  GameState state;                    // effective state (scratch while simulating)
  std::vector<GameState> sim_stack;   // snapshots, innermost last
  std::vector<Rng> rng_stack;         // bot stream saved with each snapshot
  std::optional<AgentSpec> bot;
  Player bot_player = 1;
  std::uint64_t seed = 0;
  Rng bot_rng;
  std::int64_t created_at = 0;  // unix seconds

  // The non-simulated game.
  const GameState& live() const {
    return sim_stack.empty() ? state : sim_stack.front();
  }
};

struct CreateOptions {
  BoardConfig config;
  std::optional<AgentSpec> bot;
  Player bot_player = 1;
  std::optional<std::uint64_t> seed;  // random when absent
};

struct SessionView {
  std::string game_id;
  std::string game_name;
  GameState state;
  int sim_depth = 0;
};

struct BotStepResult {
  Action action;
  GameState state;
  StepOutcome outcome;
};

// Thread-safe store of live sessions keyed by game id. Calls on one
// session are serialized; calls on different sessions run in parallel.
// Sessions live until deleted, unless a session cap is set, in which case
// the least recently used session is evicted to make room.
class SessionStore {
 public:
  explicit SessionStore(GameRegistry registry = GameRegistry::WithDefaults(),
                        std::size_t max_sessions = 0);

  std::string Create(const std::string& game_name, const CreateOptions& opts);

  std::pair<GameState, StepOutcome> Step(const std::string& id, Player player,
                                         Action action);
  // Lets the bound bot (or a ladder bot when `level` is given) act once.
  BotStepResult BotStep(const std::string& id,
                        std::optional<int> level = std::nullopt);

  // Returns the new depth.
  int SimStart(const std::string& id);
  // Restores the most recent snapshot; returns it and the new depth.
  std::pair<GameState, int> SimStop(const std::string& id);

  SessionView View(const std::string& id) const;
  GameState GetState(const std::string& id) const;
  Observation GetObservation(const std::string& id, Player player) const;
  std::vector<Action> GetLegalActions(const std::string& id) const;
  void Delete(const std::string& id);

  std::size_t size() const;

  std::vector<SessionRecord> Export() const;
  // Adds exported sessions. An id already present is rejected with
  // kBadRequest and nothing is imported.
  void Import(std::vector<SessionRecord> records);

 private:
  struct Slot {
    mutable std::mutex mu;
    SessionRecord rec;
    std::atomic<std::uint64_t> last_used{0};
  };

  std::shared_ptr<Slot> Find(const std::string& id) const;
  std::string NewId();
  void EvictIfFull();  // requires map_mu_ held exclusively

  GameRegistry registry_;
  std::size_t max_sessions_;
  mutable std::shared_mutex map_mu_;
  std::unordered_map<std::string, std::shared_ptr<Slot>> sessions_;
  mutable std::atomic<std::uint64_t> clock_{0};
  std::mutex id_mu_;
  std::mt19937_64 id_source_;
};

// 32 lowercase hex characters.
bool IsValidGameId(const std::string& id);

}  // namespace mancala

#endif  // MANCALA_SESSION_H_
