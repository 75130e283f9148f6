#ifndef MANCALA_SERVICE_H_
#define MANCALA_SERVICE_H_

// HTTP + JSON facade over SessionStore.
//
//   POST   /v1/games                       create a game
//   GET    /v1/games/{id}/state            WireState
//   GET    /v1/games/{id}/observe?player=P player-relative view
//   GET    /v1/games/{id}/legal_actions    {"actions":[...]}
//   POST   /v1/games/{id}/step             {"player":P,"action":A}
//   POST   /v1/games/{id}/bot_step         {"level":L} (optional)
//   POST   /v1/games/{id}/sim/start
//   POST   /v1/games/{id}/sim/stop
//   DELETE /v1/games/{id}
//
// Every non-2xx response body is {"error":code,"message":text}.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "mancala/error.h"
#include "mancala/session.h"

namespace httplib {
class Server;
}

namespace mancala {

struct HttpResponse {
  int status = 200;
  std::string body;
};

int HttpStatusFor(ErrorCode code);

struct ServiceOptions {
  bool allow_cors = false;
};

// Stateless request handler; all game state lives in the store.
class Service {
 public:
  explicit Service(SessionStore& store, ServiceOptions options = {})
      : store_(store), options_(options) {}

  HttpResponse Handle(std::string_view method, std::string_view path,
                      std::string_view body,
                      const std::map<std::string, std::string>& query = {}) const;

  // Routes every request on `server` through Handle().
  void Mount(httplib::Server& server) const;

  const ServiceOptions& options() const { return options_; }

 private:
  SessionStore& store_;
  ServiceOptions options_;
};

// Owns an httplib server bound to one address.
class HttpServer {
 public:
  HttpServer(SessionStore& store, ServiceOptions options = {});
  ~HttpServer();

  // Binds; port 0 picks an ephemeral port. Returns the bound port or throws
  // std::runtime_error when the address is unavailable.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); call after Bind(). Returns at once if Stop()
  // already ran.
  void Run();
  // Blocks until Run() is accepting connections.
  void WaitUntilReady() const;
  void Stop();

 private:
  Service service_;
  std::unique_ptr<httplib::Server> server_;
  std::mutex run_mu_;
  bool bound_ = false;
  bool started_ = false;
  bool stopped_ = false;
};

}  // namespace mancala

#endif  // MANCALA_SERVICE_H_
