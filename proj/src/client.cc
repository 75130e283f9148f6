#include "mancala/client.h"

#include "httplib.h"

namespace mancala {

using wire::Json;

namespace {

Json ParseResponse(int status, const std::string& body) {
  Json j = Json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (status < 200 || status >= 300) {
    if (j.is_object() && j.contains("error") && j["error"].is_string()) {
      throw ClientError(status, j["error"].get<std::string>(),
                        j.value("message", std::string()));
    }
    throw ClientError(status, "bad_response",
                      "HTTP " + std::to_string(status) + " without WireError");
  }
  if (j.is_discarded()) {
    throw ClientError(status, "bad_response", "response is not JSON");
  }
  return j;
}

template <typename F>
auto Decode(F f) -> decltype(f()) {
  try {
    return f();
  } catch (const GameError& e) {
    throw ClientError(200, "bad_response", e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ClientError(200, "bad_response", e.what());
  }
}

}  // namespace

GameClient::GameClient(std::string game_name, std::string host_url)
    : game_name_(std::move(game_name)),
      host_url_(std::move(host_url)),
      http_(std::make_unique<httplib::Client>(host_url_)) {
  http_->set_connection_timeout(5);
  http_->set_read_timeout(30);
}

GameClient::~GameClient() = default;
GameClient::GameClient(GameClient&&) noexcept = default;
GameClient& GameClient::operator=(GameClient&&) noexcept = default;

Json GameClient::Get(const std::string& path) {
  auto res = http_->Get(path);
  if (!res) {
    throw ClientError(0, "transport",
                      "GET " + path + ": " + httplib::to_string(res.error()));
  }
  return ParseResponse(res->status, res->body);
}

Json GameClient::Send(const std::string& method, const std::string& path,
                      const std::string& body) {
  httplib::Result res = method == "DELETE"
                            ? http_->Delete(path)
                            : http_->Post(path, body, "application/json");
  if (!res) {
    throw ClientError(0, "transport", method + " " + path + ": " +
                                          httplib::to_string(res.error()));
  }
  return ParseResponse(res->status, res->body);
}

const std::string& GameClient::RequireId() const {
  if (!game_id_) {
    throw ClientError(0, "not_started", "call Start() or Attach() first");
  }
  return *game_id_;
}

const SessionView& GameClient::cached() const {
  if (!cache_) {
    throw ClientError(0, "not_started", "call Start() or Attach() first");
  }
  return *cache_;
}

std::string GameClient::Start(const StartOptions& options) {
  Json body;
  body["game"] = game_name_;
  if (options.config) body["config"] = wire::EncodeConfig(*options.config);
  if (options.bot_level) body["bot_level"] = *options.bot_level;
  if (options.bot) body["bot"] = wire::EncodeAgentSpec(*options.bot);
  if (options.bot_player) body["bot_player"] = *options.bot_player;
  if (options.seed) body["seed"] = *options.seed;
  const Json j = Send("POST", "/v1/games", body.dump());
  cache_ = Decode([&] { return wire::DecodeView(j.at("state")); });
  game_id_ = Decode([&] { return j.at("game_id").get<std::string>(); });
  return *game_id_;
}

void GameClient::Attach(const std::string& game_id) {
  game_id_ = game_id;
  State();
}

const SessionView& GameClient::State() {
  const Json j = Get("/v1/games/" + RequireId() + "/state");
  cache_ = Decode([&] { return wire::DecodeView(j); });
  return *cache_;
}

Observation GameClient::Observe(Player player) {
  const Json j = Get("/v1/games/" + RequireId() +
                     "/observe?player=" + std::to_string(player));
  return Decode([&] { return wire::DecodeObservation(j); });
}

std::vector<Action> GameClient::LegalActions() {
  const Json j = Get("/v1/games/" + RequireId() + "/legal_actions");
  return Decode([&] {
    std::vector<Action> out;
    for (const Json& a : j.at("actions")) out.push_back(Action{a.get<int>()});
    return out;
  });
}

ClientStep GameClient::Step(Action action, std::optional<Player> player) {
  const std::string& id = RequireId();
  Json body;
  body["player"] = player ? *player : current_player();
  body["action"] = action.pit;
  const Json j = Send("POST", "/v1/games/" + id + "/step", body.dump());
  ClientStep out = Decode([&] {
    return ClientStep{wire::DecodeView(j.at("state")),
                      wire::DecodeOutcome(j.at("outcome"))};
  });
  cache_ = out.view;
  return out;
}

ClientBotStep GameClient::BotStep(std::optional<int> level) {
  const std::string& id = RequireId();
  Json body = Json::object();
  if (level) body["level"] = *level;
  const Json j =
      Send("POST", "/v1/games/" + id + "/bot_step", body.dump());
  ClientBotStep out = Decode([&] {
    return ClientBotStep{Action{j.at("action").get<int>()},
                         wire::DecodeView(j.at("state")),
                         wire::DecodeOutcome(j.at("outcome"))};
  });
  cache_ = out.view;
  return out;
}

int GameClient::SimStart() {
  const Json j =
      Send("POST", "/v1/games/" + RequireId() + "/sim/start", "{}");
  const int depth = Decode([&] { return j.at("sim_depth").get<int>(); });
  if (cache_) cache_->sim_depth = depth;
  return depth;
}

int GameClient::SimStop() {
  const Json j =
      Send("POST", "/v1/games/" + RequireId() + "/sim/stop", "{}");
  cache_ = Decode([&] { return wire::DecodeView(j.at("state")); });
  return cache_->sim_depth;
}

void GameClient::Delete() {
  Send("DELETE", "/v1/games/" + RequireId(), "");
  game_id_.reset();
  cache_.reset();
}

}  // namespace mancala
