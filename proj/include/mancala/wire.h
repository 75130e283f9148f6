#ifndef MANCALA_WIRE_H_
#define MANCALA_WIRE_H_

// JSON encodings shared by the HTTP service, the client SDK and session
// snapshots. Objects keep insertion order so a given value always
// serializes to the same bytes.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mancala/agents.h"
#include "mancala/engine.h"
#include "mancala/session.h"

namespace mancala::wire {

using Json = nlohmann::ordered_json;

// WireState: game_id, game, config{pits,stones}, board, current_player,
// turn_index, is_over, winner, scores, sim_depth.
Json EncodeState(const std::string& game_id, const std::string& game_name,
                 const GameState& state, int sim_depth);
inline Json EncodeState(const SessionView& view) {
  return EncodeState(view.game_id, view.game_name, view.state, view.sim_depth);
}
// Throws GameError(kBadRequest) on schema violations and
// GameError(kInvalidState) on impossible boards.
GameState DecodeState(const Json& j);
SessionView DecodeView(const Json& j);

Json EncodeWinner(const std::optional<Winner>& winner);
std::optional<Winner> DecodeWinner(const Json& j);

Json EncodeConfig(const BoardConfig& config);
BoardConfig DecodeConfig(const Json& j);

// {reward, extra_turn, capture?, terminal?}; absent members are omitted.
Json EncodeOutcome(const StepOutcome& outcome);
StepOutcome DecodeOutcome(const Json& j);

Json EncodeObservation(const Observation& obs);
Observation DecodeObservation(const Json& j);

Json EncodeAgentSpec(const AgentSpec& spec);
AgentSpec DecodeAgentSpec(const Json& j);

Json EncodeError(std::string_view code, std::string_view message);

// {"version":1,"sessions":[...]}; each session carries its WireState plus
// the simulation stack, bot binding, seed and bot stream.
Json EncodeSnapshot(const std::vector<SessionRecord>& records);
std::vector<SessionRecord> DecodeSnapshot(const Json& j);

}  // namespace mancala::wire

#endif  // MANCALA_WIRE_H_
