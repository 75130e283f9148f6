#ifndef MANCALA_CLI_H_
#define MANCALA_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "mancala/agents.h"

namespace mancala::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Entry point for `mancala serve|tournament|demo`. Returns the exit code.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Makes a running `serve` shut down as if interrupted.
void RequestStop();

struct Pairing {
  AgentSpec a;
  AgentSpec b;
};

// "kind:epsilon", e.g. "greedy1:0.1" or "ga2:0.3" or "random:1".
AgentSpec ParseAgent(const std::string& text);
// Comma-separated "A/B" pairs, e.g. "ga1:0.1/ga2:0.1,random:1/random:1".
std::vector<Pairing> ParsePairings(const std::string& text);

}  // namespace mancala::cli

#endif  // MANCALA_CLI_H_
