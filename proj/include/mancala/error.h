#ifndef MANCALA_ERROR_H_
#define MANCALA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mancala {

// Machine-readable failure categories shared by every layer. The service
// maps these onto HTTP status codes and the wire "error" field.
enum class ErrorCode {
  kInvalidConfig,
  kInvalidState,
  kIllegalAction,
  kNotYourTurn,
  kGameOver,
  kUnknownGame,
  kUnknownSession,
  kSimStackEmpty,
  kNoBot,
  kBadRequest,
};

// Wire name, e.g. "illegal_action".
std::string_view ErrorCodeName(ErrorCode code);

class GameError : public std::runtime_error {
 public:
  GameError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mancala

#endif  // MANCALA_ERROR_H_
