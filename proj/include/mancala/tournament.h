#ifndef MANCALA_TOURNAMENT_H_
#define MANCALA_TOURNAMENT_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mancala/agents.h"
#include "mancala/engine.h"

namespace mancala {

// Agent A moves first in games [0, alternate_after) and agent B in the rest.
struct MatchPlan {
  AgentSpec agent_a;
  AgentSpec agent_b;
  int num_games = 10;
  int alternate_after = 5;
  std::uint64_t master_seed = 0;
  BoardConfig config;

  // Throws GameError(kBadRequest).
  void Validate() const;
  std::string Label() const;  // "GA1(0.1) vs GA2(0.3)"
};

struct Move {
  Player player = 0;
  int pit = 0;
  bool operator==(const Move&) const = default;
};

struct GameTranscript {
  int index = 0;
  std::uint64_t seed = 0;  // seat p draws from DeriveSeed(seed, p)
  bool a_first = true;
  std::vector<Move> moves;
  std::array<int, 2> final_scores{};  // by seat
  Winner winner = Winner::kTie;       // by seat

  bool operator==(const GameTranscript&) const = default;
};

struct MatchResult {
  MatchPlan plan;
  int wins_a = 0;
  int wins_b = 0;
  int ties = 0;
  std::vector<GameTranscript> games;

  int a_first_games() const;
  // Recomputes wins and ties from the transcripts.
  void Recount();
};

// Seed of game `index` within a match.
std::uint64_t GameSeed(std::uint64_t master_seed, int index);

// Plays one game between two seats to completion.
GameTranscript PlayGame(const AgentSpec& first, const AgentSpec& second,
                        std::uint64_t game_seed, const BoardConfig& config);

// Re-applies a transcript's moves and returns the final state. Throws
// GameError if a move is illegal or out of turn.
GameState ReplayTranscript(const GameTranscript& transcript,
                           const BoardConfig& config);

// Games run on up to `threads` workers (0 = hardware concurrency); the
// result depends only on the plan.
MatchResult RunMatch(const MatchPlan& plan, unsigned threads = 0);

// Same games played through a running HTTP service: the second seat is
// the server-side bot and the first seat acts through the client SDK.
MatchResult RunMatchRemote(const MatchPlan& plan, const std::string& host_url);

// Greedy Agent I at epsilon 0.1/0.3 against Greedy Agent II at 0.1/0.3.
struct Table3Result {
  std::array<AgentSpec, 2> rows;  // GA1(0.1), GA1(0.3)
  std::array<AgentSpec, 2> cols;  // GA2(0.1), GA2(0.3)
  // Row-major; empty when no games were requested.
  std::vector<MatchResult> cells;
  // Wins per agent summed over its two pairings, in the order
  // rows[0], rows[1], cols[0], cols[1].
  std::array<int, 4> totals{};

  const MatchResult& cell(int row, int col) const { return cells.at(row * 2 + col); }
};

Table3Result RunTable3(int num_games_per_pairing, std::uint64_t master_seed,
                       const BoardConfig& config = BoardConfig(),
                       unsigned threads = 0);

enum class ReportFormat { kCsv, kPretty };

// Throws GameError(kBadRequest) for anything but "csv" or "pretty".
ReportFormat ParseReportFormat(const std::string& name);

// csv: "pairing,wins_a,wins_b,ties,seed" then one row per match.
// pretty: aligned table, one row per match.
std::string EmitReport(std::span<const MatchResult> results,
                       ReportFormat format);

// csv as EmitReport over the four cells; pretty adds the 2x2 grid and the
// per-agent totals.
std::string EmitTable3Report(const Table3Result& result, ReportFormat format);

}  // namespace mancala

#endif  // MANCALA_TOURNAMENT_H_
