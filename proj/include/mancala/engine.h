#ifndef MANCALA_ENGINE_H_
#define MANCALA_ENGINE_H_

// Kalah-variant Mancala rules engine.
//
// Board layout for n pits per side (2n+2 slots):
//
//   index:   0 .. n-1     n        n+1 .. 2n     2n+1
//            P0 houses    P0 store P1 houses     P1 store
//
// Sowing walks indices upward modulo 2n+2 and skips the opponent's store.
// House i is opposite house 2n - i.
//
// All functions are pure: states are values and are never mutated in place.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mancala/error.h"

namespace mancala {

using Player = int;  // 0 or 1

enum class Winner { kPlayer0 = 0, kPlayer1 = 1, kTie = 2 };

std::string WinnerName(Winner w);  // "0", "1", "tie"

class BoardConfig {
 public:
  // Mancala(7,7).
  BoardConfig() = default;
  // Throws GameError(kInvalidConfig) unless pits >= 1 and stones >= 1.
  BoardConfig(int pits_per_side, int stones_per_pit);

  int pits_per_side() const { return pits_; }
  int stones_per_pit() const { return stones_; }
  int total_stones() const { return 2 * pits_ * stones_; }
  int board_size() const { return 2 * pits_ + 2; }

  int store_index(Player p) const { return p == 0 ? pits_ : 2 * pits_ + 1; }
  int house_index(Player p, int pit) const {
    return p == 0 ? pit : pits_ + 1 + pit;
  }
  int opposite_index(int house) const { return 2 * pits_ - house; }
  // Which player owns the house at `index`; -1 for stores.
  Player house_owner(int index) const;

  bool operator==(const BoardConfig&) const = default;

 private:
  int pits_ = 7;
  int stones_ = 7;
};

struct Action {
  int pit = 0;  // 0 = farthest from own store, n-1 = adjacent to it
  bool operator==(const Action&) const = default;
  auto operator<=>(const Action&) const = default;
};

struct Capture {
  int landing_pit_index = 0;
  int opposite_pit_index = 0;
  int stones_captured = 0;  // landing stone plus the opposite pit
  bool operator==(const Capture&) const = default;
};

struct Terminal {
  Winner winner = Winner::kTie;
  std::array<int, 2> final_scores{};
  std::array<int, 2> swept{};  // house stones moved into each store at the end
  bool operator==(const Terminal&) const = default;
};

struct StepOutcome {
  int reward = 0;  // acting player's store delta over the whole action
  bool extra_turn = false;
  std::optional<Capture> capture;
  std::optional<Terminal> terminal;
  bool operator==(const StepOutcome&) const = default;
};

class GameState {
 public:
  // Initial position for `config`.
  explicit GameState(const BoardConfig& config = BoardConfig());

  // Arbitrary position, e.g. from a saved game or a test fixture. The
  // board must have 2n+2 non-negative entries and at least one stone. A
  // board whose house rows are both empty is Finished (winner by stores);
  // a board with exactly one empty row is rejected since play would
  // already have ended there. Throws GameError(kInvalidState).
  static GameState FromBoard(const BoardConfig& config, std::vector<int> board,
                             Player current_player, std::int64_t turn_index = 0);

  const BoardConfig& config() const { return config_; }
  std::span<const int> board() const { return board_; }
  int at(int index) const { return board_.at(index); }
  Player current_player() const { return current_player_; }
  std::int64_t turn_index() const { return turn_index_; }
  bool is_terminal() const { return winner_.has_value(); }
  // Absent while the game is ongoing.
  std::optional<Winner> winner() const { return winner_; }
  std::array<int, 2> scores() const;
  int total_stones() const;

  // Human-readable two-row rendering with player 1's row on top.
  std::string ToString() const;

  bool operator==(const GameState&) const = default;

 private:
  friend std::pair<GameState, StepOutcome> ApplyAction(const GameState&,
                                                       Action);

  BoardConfig config_;
  std::vector<int> board_;
  Player current_player_ = 0;
  std::int64_t turn_index_ = 0;
  std::optional<Winner> winner_;
};

struct Observation {
  Player player = 0;
  std::vector<int> own_pits;
  int own_store = 0;
  std::vector<int> opponent_pits;
  int opponent_store = 0;
  bool to_move = false;
  std::optional<Winner> winner;  // set once the game is over

  bool operator==(const Observation&) const = default;
};

GameState NewGame(const BoardConfig& config);

// Ascending pit ordinals of the mover's non-empty houses; empty when the
// game is over.
std::vector<Action> LegalActions(const GameState& state);

bool IsLegal(const GameState& state, Action action);

// Throws GameError(kGameOver) on a finished game and
// GameError(kIllegalAction) for an out-of-range or empty pit.
std::pair<GameState, StepOutcome> ApplyAction(const GameState& state,
                                              Action action);

// Throws GameError(kBadRequest) unless player is 0 or 1.
Observation Observe(const GameState& state, Player player);

inline std::array<int, 2> Scores(const GameState& s) { return s.scores(); }
inline bool IsTerminal(const GameState& s) { return s.is_terminal(); }
inline std::optional<Winner> GetWinner(const GameState& s) { return s.winner(); }

}  // namespace mancala

#endif  // MANCALA_ENGINE_H_
