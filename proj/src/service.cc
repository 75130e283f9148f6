#include "mancala/service.h"

#include <charconv>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "httplib.h"
#include "mancala/wire.h"

namespace mancala {

using wire::Json;

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownGame:
    case ErrorCode::kUnknownSession:
      return 404;
    case ErrorCode::kNotYourTurn:
    case ErrorCode::kGameOver:
    case ErrorCode::kSimStackEmpty:
    case ErrorCode::kNoBot:
      return 409;
    case ErrorCode::kIllegalAction:
      return 422;
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidState:
    case ErrorCode::kBadRequest:
      return 400;
  }
  return 400;
}

namespace {

HttpResponse Reply(int status, const Json& body) {
  return {status, body.dump()};
}

HttpResponse ErrorReply(int status, std::string_view code,
                        std::string_view message) {
  return Reply(status, wire::EncodeError(code, message));
}

std::vector<std::string_view> SplitPath(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    const auto slash = path.find('/');
    const auto part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

Json ParseBody(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return Json::object();
  }
  Json j = Json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw GameError(ErrorCode::kBadRequest, "body must be a JSON object");
  }
  return j;
}

int RequireInt(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_number_integer()) {
    throw GameError(ErrorCode::kBadRequest,
                    std::string("'") + key + "' must be an integer");
  }
  return it->get<int>();
}

std::optional<int> OptionalInt(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return std::nullopt;
  return RequireInt(body, key);
}

int ParsePlayerParam(const std::map<std::string, std::string>& query) {
  auto it = query.find("player");
  if (it == query.end()) {
    throw GameError(ErrorCode::kBadRequest, "query parameter 'player' required");
  }
  const std::string& text = it->second;
  int player = -1;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), player);
  if (ec != std::errc() || end != text.data() + text.size() ||
      (player != 0 && player != 1)) {
    throw GameError(ErrorCode::kBadRequest, "player must be 0 or 1");
  }
  return player;
}

class Router {
 public:
  Router(SessionStore& store, std::string_view method, std::string_view body,
         const std::map<std::string, std::string>& query)
      : store_(store), method_(method), body_(body), query_(query) {}

  HttpResponse Route(const std::vector<std::string_view>& parts) {
    if (parts.size() < 2 || parts[0] != "v1" || parts[1] != "games") {
      return NotFound();
    }
    if (parts.size() == 2) {
      return method_ == "POST" ? CreateGame() : MethodNotAllowed();
    }
    const std::string id(parts[2]);
    if (parts.size() == 3) {
      if (method_ != "DELETE") return MethodNotAllowed();
      store_.Delete(id);
      return Reply(200, Json{{"deleted", id}});
    }
    const std::string_view verb = parts[3];
    if (parts.size() == 4) {
      if (verb == "state") return Get([&] { return State(id); });
      if (verb == "observe") return Get([&] { return ObserveGame(id); });
      if (verb == "legal_actions") return Get([&] { return Legal(id); });
      if (verb == "step") return Post([&] { return StepGame(id); });
      if (verb == "bot_step") return Post([&] { return BotStepGame(id); });
    }
    if (parts.size() == 5 && verb == "sim") {
      if (parts[4] == "start") return Post([&] { return SimStart(id); });
      if (parts[4] == "stop") return Post([&] { return SimStop(id); });
    }
    return NotFound();
  }

 private:
  template <typename F>
  HttpResponse Get(F f) {
    return method_ == "GET" ? f() : MethodNotAllowed();
  }
  template <typename F>
  HttpResponse Post(F f) {
    return method_ == "POST" ? f() : MethodNotAllowed();
  }

  static HttpResponse NotFound() {
    return ErrorReply(404, "bad_request", "no such route");
  }
  static HttpResponse MethodNotAllowed() {
    return ErrorReply(405, "bad_request", "method not allowed on this route");
  }

  HttpResponse CreateGame() {
    const Json body = ParseBody(body_);
    auto game = body.find("game");
    if (game == body.end() || !game->is_string()) {
      throw GameError(ErrorCode::kBadRequest, "'game' must be a string");
    }
    CreateOptions opts;
    if (body.contains("config") && !body["config"].is_null()) {
      opts.config = wire::DecodeConfig(body["config"]);
    }
    if (auto level = OptionalInt(body, "bot_level")) {
      opts.bot = AgentForLevel(*level);
    }
    if (body.contains("bot") && !body["bot"].is_null()) {
      if (opts.bot) {
        throw GameError(ErrorCode::kBadRequest,
                        "give either 'bot_level' or 'bot', not both");
      }
      opts.bot = wire::DecodeAgentSpec(body["bot"]);
    }
    if (auto player = OptionalInt(body, "bot_player")) {
      opts.bot_player = *player;
    }
    if (body.contains("seed") && !body["seed"].is_null()) {
      if (!body["seed"].is_number_unsigned()) {
        throw GameError(ErrorCode::kBadRequest,
                        "'seed' must be a non-negative integer");
      }
      opts.seed = body["seed"].get<std::uint64_t>();
    }
    const std::string id = store_.Create(game->get<std::string>(), opts);
    return Reply(201, Json{{"game_id", id},
                           {"state", wire::EncodeState(store_.View(id))}});
  }

  HttpResponse State(const std::string& id) {
    return Reply(200, wire::EncodeState(store_.View(id)));
  }

  HttpResponse ObserveGame(const std::string& id) {
    const Player player = ParsePlayerParam(query_);
    return Reply(200,
                 wire::EncodeObservation(store_.GetObservation(id, player)));
  }

  HttpResponse Legal(const std::string& id) {
    Json actions = Json::array();
    for (Action a : store_.GetLegalActions(id)) actions.push_back(a.pit);
    return Reply(200, Json{{"actions", std::move(actions)}});
  }

  HttpResponse StepGame(const std::string& id) {
    const Json body = ParseBody(body_);
    const int player = RequireInt(body, "player");
    const int action = RequireInt(body, "action");
    auto [state, outcome] = store_.Step(id, player, Action{action});
    return Reply(200, Json{{"state", wire::EncodeState(store_.View(id))},
                           {"outcome", wire::EncodeOutcome(outcome)}});
  }

  HttpResponse BotStepGame(const std::string& id) {
    const Json body = ParseBody(body_);
    const BotStepResult r = store_.BotStep(id, OptionalInt(body, "level"));
    return Reply(200, Json{{"action", r.action.pit},
                           {"state", wire::EncodeState(store_.View(id))},
                           {"outcome", wire::EncodeOutcome(r.outcome)}});
  }

  HttpResponse SimStart(const std::string& id) {
    return Reply(200, Json{{"sim_depth", store_.SimStart(id)}});
  }

  HttpResponse SimStop(const std::string& id) {
    const int depth = store_.SimStop(id).second;
    return Reply(200, Json{{"sim_depth", depth},
                           {"state", wire::EncodeState(store_.View(id))}});
  }

  SessionStore& store_;
  std::string_view method_;
  std::string_view body_;
  const std::map<std::string, std::string>& query_;
};

}  // namespace

HttpResponse Service::Handle(
    std::string_view method, std::string_view path, std::string_view body,
    const std::map<std::string, std::string>& query) const {
  try {
    Router router(store_, method, body, query);
    return router.Route(SplitPath(path));
  } catch (const GameError& e) {
    return ErrorReply(HttpStatusFor(e.code()), ErrorCodeName(e.code()),
                      e.what());
  } catch (const std::exception& e) {
    return ErrorReply(500, "bad_request", e.what());
  }
}

void Service::Mount(httplib::Server& server) const {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const HttpResponse r = Handle(req.method, req.path, req.body, query);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  const char* any = R"(/.*)";
  server.Get(any, handler);
  server.Post(any, handler);
  server.Delete(any, handler);
  if (options_.allow_cors) {
    server.Options(any, [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
    server.set_post_routing_handler(
        [](const httplib::Request&, httplib::Response& res) {
          res.set_header("Access-Control-Allow-Origin", "*");
          res.set_header("Access-Control-Allow-Methods",
                         "GET, POST, DELETE, OPTIONS");
          res.set_header("Access-Control-Allow-Headers", "Content-Type");
        });
  }
}

HttpServer::HttpServer(SessionStore& store, ServiceOptions options)
    : service_(store, options), server_(std::make_unique<httplib::Server>()) {
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
               reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  service_.Mount(*server_);
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (server_->bind_to_port(host, port)) {
    bound = port;
  }
  if (bound < 0) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  std::lock_guard<std::mutex> lock(run_mu_);
  bound_ = true;
  return bound;
}

void HttpServer::Run() {
  {
    std::lock_guard<std::mutex> lock(run_mu_);
    if (stopped_) return;
    started_ = true;
  }
  server_->listen_after_bind();
}

void HttpServer::WaitUntilReady() const { server_->wait_until_ready(); }

void HttpServer::Stop() {
  bool release_unused = false;
  {
    std::lock_guard<std::mutex> lock(run_mu_);
    if (stopped_ && !started_) return;
    stopped_ = true;
    if (!started_) {
      if (!bound_) return;
      started_ = true;
      release_unused = true;
    }
  }
  if (release_unused) {
    std::thread listener([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    server_->stop();
    listener.join();
    return;
  }
  server_->wait_until_ready();
  server_->stop();
}

}  // namespace mancala
