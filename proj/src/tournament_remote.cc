#include "mancala/client.h"
#include "mancala/tournament.h"

namespace mancala {

MatchResult RunMatchRemote(const MatchPlan& plan, const std::string& host_url) {
  plan.Validate();
  MatchResult result;
  result.plan = plan;
  for (int i = 0; i < plan.num_games; ++i) {
    const bool a_first = i < plan.alternate_after;
    const AgentSpec& first = a_first ? plan.agent_a : plan.agent_b;
    const AgentSpec& second = a_first ? plan.agent_b : plan.agent_a;
    const std::uint64_t seed = GameSeed(plan.master_seed, i);

    GameClient game("mancala", host_url);
    StartOptions options;
    options.config = plan.config;
    options.bot = second;
    options.bot_player = 1;
    options.seed = seed;
    game.Start(options);
    Rng stream(DeriveSeed(seed, 0));

    GameTranscript t;
    t.index = i;
    t.seed = seed;
    t.a_first = a_first;
    while (!game.is_over()) {
      if (game.current_player() == 0) {
        const Action a = ChooseAction(first, game.cached().state, stream);
        game.Step(a);
        t.moves.push_back({0, a.pit});
      } else {
        t.moves.push_back({1, game.BotStep().action.pit});
      }
    }
    t.final_scores = game.cached().state.scores();
    t.winner = *game.cached().state.winner();
    game.Delete();
    result.games.push_back(std::move(t));
  }
  result.Recount();
  return result;
}

}  // namespace mancala
