#ifndef MANCALA_AGENTS_H_
#define MANCALA_AGENTS_H_

#include <cstdint>
#include <mutex>
#include <string>

#include "mancala/engine.h"
#include "mancala/random.h"

namespace mancala {

enum class AgentKind {
  kGreedy1,  // maximise stones added to own store this move
  kGreedy2,  // prefer moves that earn an extra turn, rightmost first
  kRandom,
};

std::string AgentKindName(AgentKind kind);  // "greedy1", "greedy2", "random"
// Accepts the names above plus "ga1"/"ga2". Throws kBadRequest.
AgentKind ParseAgentKind(const std::string& name);

struct AgentSpec {
  AgentKind kind = AgentKind::kRandom;
  double epsilon = 0.0;
  std::uint64_t seed = 0;

  // Throws kBadRequest unless 0 <= epsilon <= 1.
  void Validate() const;
  // Short label such as "GA1(0.1)".
  std::string Label() const;

  bool operator==(const AgentSpec&) const = default;
};

// Difficulty ladder: 3 is hardest.
AgentSpec AgentForLevel(int level);

// One decision. With probability epsilon a uniformly random legal action;
// otherwise the kind's greedy rule evaluated by simulating every legal
// action one ply ahead. Throws kGameOver on a finished game.
Action ChooseAction(const AgentSpec& spec, const GameState& state, Rng& rng);

// An agent with its own stream. Choose() is safe to call from several
// threads; calls are serialized.
class Agent {
 public:
  explicit Agent(const AgentSpec& spec) : Agent(spec, spec.seed) {}
  Agent(const AgentSpec& spec, std::uint64_t stream_seed);

  Action Choose(const GameState& state);
  const AgentSpec& spec() const { return spec_; }

 private:
  AgentSpec spec_;
  std::mutex mu_;
  Rng rng_;
};

}  // namespace mancala

#endif  // MANCALA_AGENTS_H_
