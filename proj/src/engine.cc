#include "mancala/engine.h"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mancala {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidState:
    case ErrorCode::kBadRequest:
    case ErrorCode::kNoBot:
      return "bad_request";
    case ErrorCode::kIllegalAction:
      return "illegal_action";
    case ErrorCode::kNotYourTurn:
      return "not_your_turn";
    case ErrorCode::kGameOver:
      return "game_over";
    case ErrorCode::kUnknownGame:
      return "unknown_game";
    case ErrorCode::kUnknownSession:
      return "unknown_session";
    case ErrorCode::kSimStackEmpty:
      return "sim_stack_empty";
  }
  return "bad_request";
}

std::string WinnerName(Winner w) {
  switch (w) {
    case Winner::kPlayer0:
      return "0";
    case Winner::kPlayer1:
      return "1";
    case Winner::kTie:
      return "tie";
  }
  return "tie";
}

BoardConfig::BoardConfig(int pits_per_side, int stones_per_pit)
    : pits_(pits_per_side), stones_(stones_per_pit) {
  if (pits_per_side < 1 || stones_per_pit < 1) {
    throw GameError(ErrorCode::kInvalidConfig,
                    "pits and stones per pit must both be >= 1 (got " +
                        std::to_string(pits_per_side) + ", " +
                        std::to_string(stones_per_pit) + ")");
  }
}

Player BoardConfig::house_owner(int index) const {
  if (index >= 0 && index < pits_) return 0;
  if (index > pits_ && index <= 2 * pits_) return 1;
  return -1;
}

namespace {

bool RowEmpty(const std::vector<int>& board, const BoardConfig& config,
              Player p) {
  const int first = config.house_index(p, 0);
  return std::all_of(board.begin() + first,
                     board.begin() + first + config.pits_per_side(),
                     [](int c) { return c == 0; });
}

Winner CompareStores(int store0, int store1) {
  if (store0 > store1) return Winner::kPlayer0;
  if (store1 > store0) return Winner::kPlayer1;
  return Winner::kTie;
}

}  // namespace

GameState::GameState(const BoardConfig& config)
    : config_(config), board_(config.board_size(), config.stones_per_pit()) {
  board_[config.store_index(0)] = 0;
  board_[config.store_index(1)] = 0;
}

GameState GameState::FromBoard(const BoardConfig& config,
                               std::vector<int> board, Player current_player,
                               std::int64_t turn_index) {
  if (static_cast<int>(board.size()) != config.board_size()) {
    throw GameError(ErrorCode::kInvalidState,
                    "board must have " + std::to_string(config.board_size()) +
                        " entries, got " + std::to_string(board.size()));
  }
  if (std::any_of(board.begin(), board.end(), [](int c) { return c < 0; })) {
    throw GameError(ErrorCode::kInvalidState, "negative stone count");
  }
  if (std::accumulate(board.begin(), board.end(), 0) == 0) {
    throw GameError(ErrorCode::kInvalidState, "board holds no stones");
  }
  if (current_player != 0 && current_player != 1) {
    throw GameError(ErrorCode::kInvalidState, "current player must be 0 or 1");
  }
  if (turn_index < 0) {
    throw GameError(ErrorCode::kInvalidState, "turn index must be >= 0");
  }
  const bool empty0 = RowEmpty(board, config, 0);
  const bool empty1 = RowEmpty(board, config, 1);
  if (empty0 != empty1) {
    throw GameError(ErrorCode::kInvalidState,
                    "one house row is empty but the game was not swept");
  }
  GameState s(config);
  s.board_ = std::move(board);
  s.current_player_ = current_player;
  s.turn_index_ = turn_index;
  if (empty0 && empty1) {
    s.winner_ = CompareStores(s.board_[config.store_index(0)],
                              s.board_[config.store_index(1)]);
  }
  return s;
}

std::array<int, 2> GameState::scores() const {
  return {board_[config_.store_index(0)], board_[config_.store_index(1)]};
}

int GameState::total_stones() const {
  return std::accumulate(board_.begin(), board_.end(), 0);
}

std::string GameState::ToString() const {
  const int n = config_.pits_per_side();
  std::ostringstream out;
  out << "    ";
  for (int pit = n - 1; pit >= 0; --pit) {
    out << ' ' << board_[config_.house_index(1, pit)];
  }
  out << "\n" << board_[config_.store_index(1)] << " |";
  for (int i = 0; i < n; ++i) out << "  ";
  out << " | " << board_[config_.store_index(0)] << "\n    ";
  for (int pit = 0; pit < n; ++pit) {
    out << ' ' << board_[config_.house_index(0, pit)];
  }
  return out.str();
}

GameState NewGame(const BoardConfig& config) { return GameState(config); }

bool IsLegal(const GameState& state, Action action) {
  if (state.is_terminal()) return false;
  const BoardConfig& c = state.config();
  if (action.pit < 0 || action.pit >= c.pits_per_side()) return false;
  return state.at(c.house_index(state.current_player(), action.pit)) > 0;
}

std::vector<Action> LegalActions(const GameState& state) {
  std::vector<Action> actions;
  if (state.is_terminal()) return actions;
  for (int pit = 0; pit < state.config().pits_per_side(); ++pit) {
    if (IsLegal(state, Action{pit})) actions.push_back(Action{pit});
  }
  return actions;
}

std::pair<GameState, StepOutcome> ApplyAction(const GameState& state,
                                              Action action) {
  if (state.is_terminal()) {
    throw GameError(ErrorCode::kGameOver, "game is already finished");
  }
  if (!IsLegal(state, action)) {
    throw GameError(ErrorCode::kIllegalAction,
                    "pit " + std::to_string(action.pit) +
                        " is not a legal action for player " +
                        std::to_string(state.current_player()));
  }

  const BoardConfig& c = state.config();
  const Player me = state.current_player();
  const int size = c.board_size();
  const int own_store = c.store_index(me);
  const int skip = c.store_index(1 - me);

  GameState next = state;
  std::vector<int>& board = next.board_;
  const int store_before = board[own_store];

  int pos = c.house_index(me, action.pit);
  int hand = board[pos];
  board[pos] = 0;
  while (hand > 0) {
    pos = (pos + 1) % size;
    if (pos == skip) continue;
    ++board[pos];
    --hand;
  }

  StepOutcome outcome;
  if (pos == own_store) {
    outcome.extra_turn = true;
  } else {
    const int opposite = c.opposite_index(pos);
    if (c.house_owner(pos) == me && board[pos] == 1 && board[opposite] > 0) {
      const int taken = board[pos] + board[opposite];
      outcome.capture = Capture{pos, opposite, taken};
      board[own_store] += taken;
      board[pos] = 0;
      board[opposite] = 0;
    }
    next.current_player_ = 1 - me;
  }

  const bool empty0 = RowEmpty(board, c, 0);
  const bool empty1 = RowEmpty(board, c, 1);
  if (empty0 || empty1) {
    Terminal t;
    // With both rows empty nothing is left to sweep.
    for (Player p : {0, 1}) {
      if (!(p == 0 ? empty1 : empty0)) continue;
      const int first = c.house_index(p, 0);
      for (int i = first; i < first + c.pits_per_side(); ++i) {
        t.swept[p] += board[i];
        board[i] = 0;
      }
      board[c.store_index(p)] += t.swept[p];
    }
    t.final_scores = {board[c.store_index(0)], board[c.store_index(1)]};
    t.winner = CompareStores(t.final_scores[0], t.final_scores[1]);
    next.winner_ = t.winner;
    outcome.terminal = t;
  }

  outcome.reward = board[own_store] - store_before;
  ++next.turn_index_;
  return {std::move(next), outcome};
}

Observation Observe(const GameState& state, Player player) {
  if (player != 0 && player != 1) {
    throw GameError(ErrorCode::kBadRequest,
                    "player must be 0 or 1, got " + std::to_string(player));
  }
  const BoardConfig& c = state.config();
  const int n = c.pits_per_side();
  Observation obs;
  obs.player = player;
  for (int pit = 0; pit < n; ++pit) {
    obs.own_pits.push_back(state.at(c.house_index(player, pit)));
    obs.opponent_pits.push_back(state.at(c.house_index(1 - player, pit)));
  }
  obs.own_store = state.at(c.store_index(player));
  obs.opponent_store = state.at(c.store_index(1 - player));
  obs.to_move = !state.is_terminal() && state.current_player() == player;
  obs.winner = state.winner();
  return obs;
}

}  // namespace mancala
