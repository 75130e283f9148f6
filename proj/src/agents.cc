#include "mancala/agents.h"

#include <sstream>
#include <vector>

namespace mancala {

std::string AgentKindName(AgentKind kind) {
  switch (kind) {
    case AgentKind::kGreedy1:
      return "greedy1";
    case AgentKind::kGreedy2:
      return "greedy2";
    case AgentKind::kRandom:
      return "random";
  }
  return "random";
}

AgentKind ParseAgentKind(const std::string& name) {
  if (name == "greedy1" || name == "ga1") return AgentKind::kGreedy1;
  if (name == "greedy2" || name == "ga2") return AgentKind::kGreedy2;
  if (name == "random") return AgentKind::kRandom;
  throw GameError(ErrorCode::kBadRequest, "unknown agent kind '" + name + "'");
}

void AgentSpec::Validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw GameError(ErrorCode::kBadRequest, "epsilon must lie in [0, 1]");
  }
}

std::string AgentSpec::Label() const {
  std::ostringstream out;
  switch (kind) {
    case AgentKind::kGreedy1:
      out << "GA1";
      break;
    case AgentKind::kGreedy2:
      out << "GA2";
      break;
    case AgentKind::kRandom:
      out << "Random";
      break;
  }
  out << '(' << epsilon << ')';
  return out.str();
}

AgentSpec AgentForLevel(int level) {
  switch (level) {
    case 3:
      return {AgentKind::kGreedy1, 0.1, 0};
    case 2:
      return {AgentKind::kGreedy1, 0.3, 0};
    case 1:
      return {AgentKind::kGreedy2, 0.1, 0};
    default:
      throw GameError(ErrorCode::kBadRequest,
                      "unknown level " + std::to_string(level) +
                          " (expected 1, 2 or 3)");
  }
}

namespace {

Action PickUniform(const std::vector<Action>& actions, Rng& rng) {
  return actions[rng.UniformIndex(actions.size())];
}

Action Greedy1(const GameState& state, const std::vector<Action>& legal,
               Rng& rng) {
  std::vector<Action> best;
  int best_reward = -1;
  for (Action a : legal) {
    const int reward = ApplyAction(state, a).second.reward;
    if (reward > best_reward) {
      best_reward = reward;
      best.clear();
    }
    if (reward == best_reward) best.push_back(a);
  }
  return PickUniform(best, rng);
}

Action Greedy2(const GameState& state, const std::vector<Action>& legal,
               Rng& rng) {
  // `legal` is ascending, so scan from the store side.
  for (auto it = legal.rbegin(); it != legal.rend(); ++it) {
    if (ApplyAction(state, *it).second.extra_turn) return *it;
  }
  return PickUniform(legal, rng);
}

}  // namespace

Action ChooseAction(const AgentSpec& spec, const GameState& state, Rng& rng) {
  spec.Validate();
  const std::vector<Action> legal = LegalActions(state);
  if (legal.empty()) {
    throw GameError(ErrorCode::kGameOver, "no action to choose: game is over");
  }
  if (rng.Uniform01() < spec.epsilon) return PickUniform(legal, rng);
  switch (spec.kind) {
    case AgentKind::kGreedy1:
      return Greedy1(state, legal, rng);
    case AgentKind::kGreedy2:
      return Greedy2(state, legal, rng);
    case AgentKind::kRandom:
      break;
  }
  return PickUniform(legal, rng);
}

Agent::Agent(const AgentSpec& spec, std::uint64_t stream_seed)
    : spec_(spec), rng_(stream_seed) {
  spec_.Validate();
}

Action Agent::Choose(const GameState& state) {
  std::lock_guard<std::mutex> lock(mu_);
  return ChooseAction(spec_, state, rng_);
}

}  // namespace mancala
