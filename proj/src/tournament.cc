#include "mancala/tournament.h"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

namespace mancala {

void MatchPlan::Validate() const {
  agent_a.Validate();
  agent_b.Validate();
  if (num_games < 1) {
    throw GameError(ErrorCode::kBadRequest, "a match needs at least one game");
  }
  if (alternate_after < 0 || alternate_after > num_games) {
    throw GameError(ErrorCode::kBadRequest,
                    "alternate_after must lie in [0, num_games]");
  }
}

std::string MatchPlan::Label() const {
  return agent_a.Label() + " vs " + agent_b.Label();
}

int MatchResult::a_first_games() const {
  return static_cast<int>(std::count_if(
      games.begin(), games.end(),
      [](const GameTranscript& g) { return g.a_first; }));
}

void MatchResult::Recount() {
  wins_a = wins_b = ties = 0;
  for (const GameTranscript& g : games) {
    if (g.winner == Winner::kTie) {
      ++ties;
      continue;
    }
    const bool first_won = g.winner == Winner::kPlayer0;
    (first_won == g.a_first ? wins_a : wins_b)++;
  }
}

std::uint64_t GameSeed(std::uint64_t master_seed, int index) {
  return DeriveSeed(master_seed, static_cast<std::uint64_t>(index));
}

GameTranscript PlayGame(const AgentSpec& first, const AgentSpec& second,
                        std::uint64_t game_seed, const BoardConfig& config) {
  const AgentSpec* seats[2] = {&first, &second};
  Rng streams[2] = {Rng(DeriveSeed(game_seed, 0)), Rng(DeriveSeed(game_seed, 1))};

  GameTranscript t;
  t.seed = game_seed;
  GameState state = NewGame(config);
  while (!state.is_terminal()) {
    const Player p = state.current_player();
    const Action a = ChooseAction(*seats[p], state, streams[p]);
    t.moves.push_back({p, a.pit});
    state = ApplyAction(state, a).first;
  }
  t.final_scores = state.scores();
  t.winner = *state.winner();
  return t;
}

GameState ReplayTranscript(const GameTranscript& transcript,
                           const BoardConfig& config) {
  GameState state = NewGame(config);
  for (const Move& m : transcript.moves) {
    if (m.player != state.current_player()) {
      throw GameError(ErrorCode::kNotYourTurn,
                      "transcript move out of turn at turn " +
                          std::to_string(state.turn_index()));
    }
    state = ApplyAction(state, Action{m.pit}).first;
  }
  return state;
}

MatchResult RunMatch(const MatchPlan& plan, unsigned threads) {
  plan.Validate();
  MatchResult result;
  result.plan = plan;
  result.games.resize(plan.num_games);

  auto play = [&](int i) {
    const bool a_first = i < plan.alternate_after;
    const AgentSpec& first = a_first ? plan.agent_a : plan.agent_b;
    const AgentSpec& second = a_first ? plan.agent_b : plan.agent_a;
    GameTranscript t =
        PlayGame(first, second, GameSeed(plan.master_seed, i), plan.config);
    t.index = i;
    t.a_first = a_first;
    result.games[i] = std::move(t);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, plan.num_games);
  if (threads <= 1) {
    for (int i = 0; i < plan.num_games; ++i) play(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (int i = next++; i < plan.num_games; i = next++) play(i);
      });
    }
  }
  result.Recount();
  return result;
}

Table3Result RunTable3(int num_games_per_pairing, std::uint64_t master_seed,
                       const BoardConfig& config, unsigned threads) {
  Table3Result out;
  out.rows = {AgentSpec{AgentKind::kGreedy1, 0.1, 0},
              AgentSpec{AgentKind::kGreedy1, 0.3, 0}};
  out.cols = {AgentSpec{AgentKind::kGreedy2, 0.1, 0},
              AgentSpec{AgentKind::kGreedy2, 0.3, 0}};
  if (num_games_per_pairing <= 0) return out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      MatchPlan plan;
      plan.agent_a = out.rows[r];
      plan.agent_b = out.cols[c];
      plan.num_games = num_games_per_pairing;
      plan.alternate_after = num_games_per_pairing / 2;
      plan.master_seed = DeriveSeed(master_seed, r * 2 + c);
      plan.config = config;
      out.cells.push_back(RunMatch(plan, threads));
      out.totals[r] += out.cells.back().wins_a;
      out.totals[2 + c] += out.cells.back().wins_b;
    }
  }
  return out;
}

ReportFormat ParseReportFormat(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "pretty") return ReportFormat::kPretty;
  throw GameError(ErrorCode::kBadRequest,
                  "unknown report format '" + name + "' (csv or pretty)");
}

std::string EmitReport(std::span<const MatchResult> results,
                       ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::kCsv) {
    out << "pairing,wins_a,wins_b,ties,seed\n";
    for (const MatchResult& r : results) {
      out << r.plan.Label() << ',' << r.wins_a << ',' << r.wins_b << ','
          << r.ties << ',' << r.plan.master_seed << '\n';
    }
    return out.str();
  }
  std::size_t width = std::string("pairing").size();
  for (const MatchResult& r : results) {
    width = std::max(width, r.plan.Label().size());
  }
  out << std::left << std::setw(static_cast<int>(width)) << "pairing"
      << "  wins_a  wins_b  ties  first(a/b)  seed\n";
  for (const MatchResult& r : results) {
    const int a_first = r.a_first_games();
    const std::string split = std::to_string(a_first) + "/" +
                              std::to_string(r.plan.num_games - a_first);
    out << std::left << std::setw(static_cast<int>(width)) << r.plan.Label()
        << std::right << "  " << std::setw(6) << r.wins_a << "  "
        << std::setw(6) << r.wins_b << "  " << std::setw(4) << r.ties << "  "
        << std::setw(10) << split << "  " << r.plan.master_seed << '\n';
  }
  return out.str();
}

std::string EmitTable3Report(const Table3Result& result, ReportFormat format) {
  if (format == ReportFormat::kCsv) return EmitReport(result.cells, format);
  std::ostringstream out;
  if (!result.cells.empty()) {
    const int games = result.cells.front().plan.num_games;
    out << "Greedy Agent I vs Greedy Agent II, " << games
        << " games per pairing\n\n";
    constexpr int kCell = 30;
    out << std::left << std::setw(10) << "" << std::setw(kCell)
        << result.cols[0].Label() << result.cols[1].Label() << '\n';
    for (int r = 0; r < 2; ++r) {
      out << std::left << std::setw(10) << result.rows[r].Label();
      for (int c = 0; c < 2; ++c) {
        const MatchResult& m = result.cell(r, c);
        std::ostringstream cell;
        cell << "GA1 " << m.wins_a << " / GA2 " << m.wins_b << " / tie "
             << m.ties;
        if (c == 0) out << std::setw(kCell);
        out << cell.str();
      }
      out << '\n';
    }
    out << '\n';
  }
  out << EmitReport(result.cells, format) << "\ntotal wins\n";
  const std::array<const AgentSpec*, 4> agents = {
      &result.rows[0], &result.rows[1], &result.cols[0], &result.cols[1]};
  for (int i = 0; i < 4; ++i) {
    out << "  " << std::left << std::setw(10) << agents[i]->Label()
        << result.totals[i] << '\n';
  }
  return out.str();
}

}  // namespace mancala
