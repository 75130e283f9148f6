#include "mancala/wire.h"

namespace mancala::wire {

namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw GameError(ErrorCode::kBadRequest, "malformed payload: " + what);
}

const Json& Member(const Json& j, const char* key) {
  if (!j.is_object()) Malformed("expected an object");
  auto it = j.find(key);
  if (it == j.end()) Malformed(std::string("missing '") + key + "'");
  return *it;
}

template <typename T>
T Get(const Json& j, const char* key) {
  const Json& v = Member(j, key);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    Malformed(std::string("bad type for '") + key + "'");
  }
}

int GetInt(const Json& j, const char* key) {
  const Json& v = Member(j, key);
  if (!v.is_number_integer()) {
    Malformed(std::string("'") + key + "' must be an integer");
  }
  return v.get<int>();
}

std::array<int, 2> GetPair(const Json& j, const char* key) {
  const Json& v = Member(j, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer()) {
    Malformed(std::string("'") + key + "' must be a pair of integers");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

std::vector<int> GetIntArray(const Json& j, const char* key) {
  const Json& v = Member(j, key);
  if (!v.is_array()) Malformed(std::string("'") + key + "' must be an array");
  std::vector<int> out;
  for (const Json& e : v) {
    if (!e.is_number_integer()) {
      Malformed(std::string("'") + key + "' must hold integers");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

Json EncodeWinner(const std::optional<Winner>& winner) {
  if (!winner) return nullptr;
  switch (*winner) {
    case Winner::kPlayer0:
      return 0;
    case Winner::kPlayer1:
      return 1;
    case Winner::kTie:
      return "tie";
  }
  return nullptr;
}

std::optional<Winner> DecodeWinner(const Json& j) {
  if (j.is_null()) return std::nullopt;
  if (j.is_string() && j.get<std::string>() == "tie") return Winner::kTie;
  if (j.is_number_integer()) {
    if (j.get<int>() == 0) return Winner::kPlayer0;
    if (j.get<int>() == 1) return Winner::kPlayer1;
  }
  Malformed("winner must be 0, 1, \"tie\" or null");
}

Json EncodeConfig(const BoardConfig& config) {
  return Json{{"pits", config.pits_per_side()},
              {"stones", config.stones_per_pit()}};
}

BoardConfig DecodeConfig(const Json& j) {
  return BoardConfig(GetInt(j, "pits"), GetInt(j, "stones"));
}

Json EncodeState(const std::string& game_id, const std::string& game_name,
                 const GameState& state, int sim_depth) {
  const auto scores = state.scores();
  Json j;
  j["game_id"] = game_id;
  j["game"] = game_name;
  j["config"] = EncodeConfig(state.config());
  j["board"] = Json(std::vector<int>(state.board().begin(), state.board().end()));
  j["current_player"] = state.current_player();
  j["turn_index"] = state.turn_index();
  j["is_over"] = state.is_terminal();
  j["winner"] = EncodeWinner(state.winner());
  j["scores"] = Json::array({scores[0], scores[1]});
  j["sim_depth"] = sim_depth;
  return j;
}

GameState DecodeState(const Json& j) {
  const BoardConfig config = DecodeConfig(Member(j, "config"));
  const Json& turn = Member(j, "turn_index");
  if (!turn.is_number_integer()) Malformed("'turn_index' must be an integer");
  GameState s = GameState::FromBoard(config, GetIntArray(j, "board"),
                                     GetInt(j, "current_player"),
                                     turn.get<std::int64_t>());
  // The redundant projections must agree with the board.
  if (Get<bool>(j, "is_over") != s.is_terminal() ||
      DecodeWinner(Member(j, "winner")) != s.winner() ||
      GetPair(j, "scores") != s.scores()) {
    Malformed("is_over/winner/scores disagree with the board");
  }
  return s;
}

SessionView DecodeView(const Json& j) {
  SessionView view;
  view.game_id = Get<std::string>(j, "game_id");
  view.game_name = Get<std::string>(j, "game");
  view.state = DecodeState(j);
  view.sim_depth = GetInt(j, "sim_depth");
  return view;
}

Json EncodeOutcome(const StepOutcome& outcome) {
  Json j;
  j["reward"] = outcome.reward;
  j["extra_turn"] = outcome.extra_turn;
  if (outcome.capture) {
    j["capture"] = Json{
        {"landing_pit_index", outcome.capture->landing_pit_index},
        {"opposite_pit_index", outcome.capture->opposite_pit_index},
        {"stones_captured", outcome.capture->stones_captured},
    };
  }
  if (outcome.terminal) {
    const Terminal& t = *outcome.terminal;
    j["terminal"] = Json{
        {"winner", EncodeWinner(t.winner)},
        {"final_scores", Json::array({t.final_scores[0], t.final_scores[1]})},
        {"swept", Json::array({t.swept[0], t.swept[1]})},
    };
  }
  return j;
}

StepOutcome DecodeOutcome(const Json& j) {
  StepOutcome o;
  o.reward = GetInt(j, "reward");
  o.extra_turn = Get<bool>(j, "extra_turn");
  if (j.contains("capture")) {
    const Json& c = j["capture"];
    o.capture = Capture{GetInt(c, "landing_pit_index"),
                        GetInt(c, "opposite_pit_index"),
                        GetInt(c, "stones_captured")};
  }
  if (j.contains("terminal")) {
    const Json& t = j["terminal"];
    auto winner = DecodeWinner(Member(t, "winner"));
    if (!winner) Malformed("terminal winner may not be null");
    o.terminal = Terminal{*winner, GetPair(t, "final_scores"),
                          GetPair(t, "swept")};
  }
  return o;
}

Json EncodeObservation(const Observation& obs) {
  Json j;
  j["player"] = obs.player;
  j["own_pits"] = obs.own_pits;
  j["own_store"] = obs.own_store;
  j["opponent_pits"] = obs.opponent_pits;
  j["opponent_store"] = obs.opponent_store;
  j["to_move"] = obs.to_move;
  j["is_over"] = obs.winner.has_value();
  j["winner"] = EncodeWinner(obs.winner);
  return j;
}

Observation DecodeObservation(const Json& j) {
  Observation obs;
  obs.player = GetInt(j, "player");
  obs.own_pits = GetIntArray(j, "own_pits");
  obs.own_store = GetInt(j, "own_store");
  obs.opponent_pits = GetIntArray(j, "opponent_pits");
  obs.opponent_store = GetInt(j, "opponent_store");
  obs.to_move = Get<bool>(j, "to_move");
  obs.winner = DecodeWinner(Member(j, "winner"));
  return obs;
}

Json EncodeAgentSpec(const AgentSpec& spec) {
  return Json{{"kind", AgentKindName(spec.kind)}, {"epsilon", spec.epsilon}};
}

AgentSpec DecodeAgentSpec(const Json& j) {
  AgentSpec spec;
  spec.kind = ParseAgentKind(Get<std::string>(j, "kind"));
  const Json& eps = Member(j, "epsilon");
  if (!eps.is_number()) Malformed("'epsilon' must be a number");
  spec.epsilon = eps.get<double>();
  spec.Validate();
  return spec;
}

Json EncodeError(std::string_view code, std::string_view message) {
  return Json{{"error", code}, {"message", message}};
}

Json EncodeSnapshot(const std::vector<SessionRecord>& records) {
  Json sessions = Json::array();
  for (const SessionRecord& rec : records) {
    Json s;
    s["state"] = EncodeState(rec.game_id, rec.game_name, rec.state,
                             static_cast<int>(rec.sim_stack.size()));
    Json stack = Json::array();
    for (std::size_t i = 0; i < rec.sim_stack.size(); ++i) {
      stack.push_back(Json{
          {"state", EncodeState(rec.game_id, rec.game_name, rec.sim_stack[i],
                                static_cast<int>(i))},
          {"bot_rng", rec.rng_stack[i].Serialize()},
      });
    }
    s["sim_stack"] = std::move(stack);
    s["bot"] = rec.bot ? EncodeAgentSpec(*rec.bot) : Json(nullptr);
    s["bot_player"] = rec.bot_player;
    s["seed"] = rec.seed;
    s["bot_rng"] = rec.bot_rng.Serialize();
    s["created_at"] = rec.created_at;
    sessions.push_back(std::move(s));
  }
  return Json{{"version", 1}, {"sessions", std::move(sessions)}};
}

std::vector<SessionRecord> DecodeSnapshot(const Json& j) {
  if (GetInt(j, "version") != 1) Malformed("unsupported snapshot version");
  const Json& sessions = Member(j, "sessions");
  if (!sessions.is_array()) Malformed("'sessions' must be an array");
  std::vector<SessionRecord> out;
  for (const Json& s : sessions) {
    SessionRecord rec;
    const Json& state = Member(s, "state");
    rec.game_id = Get<std::string>(state, "game_id");
    rec.game_name = Get<std::string>(state, "game");
    rec.state = DecodeState(state);
    rec.config = rec.state.config();
    const Json& stack = Member(s, "sim_stack");
    if (!stack.is_array()) Malformed("'sim_stack' must be an array");
    for (const Json& frame : stack) {
      rec.sim_stack.push_back(DecodeState(Member(frame, "state")));
      try {
        rec.rng_stack.push_back(
            Rng::Deserialize(Get<std::string>(frame, "bot_rng")));
      } catch (const std::invalid_argument&) {
        Malformed("bad bot_rng in sim_stack");
      }
    }
    const Json& bot = Member(s, "bot");
    if (!bot.is_null()) rec.bot = DecodeAgentSpec(bot);
    rec.bot_player = GetInt(s, "bot_player");
    rec.seed = Get<std::uint64_t>(s, "seed");
    try {
      rec.bot_rng = Rng::Deserialize(Get<std::string>(s, "bot_rng"));
    } catch (const std::invalid_argument&) {
      Malformed("bad bot_rng");
    }
    rec.created_at = Get<std::int64_t>(s, "created_at");
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace mancala::wire
