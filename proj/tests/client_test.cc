#include "mancala/client.h"

#include <gtest/gtest.h>

#include <thread>

#include "mancala/service.h"
#include "mancala/tournament.h"

namespace mancala {
namespace {

class ClientTest : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = server_.Bind("127.0.0.1", 0);
    loop_ = std::jthread([this] { server_.Run(); });
    server_.WaitUntilReady();
  }
  void TearDown() override { server_.Stop(); }

  std::string Url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  template <typename Fn>
  static ClientError ErrorOf(Fn&& fn) {
    try {
      fn();
    } catch (const ClientError& e) {
      return e;
    }
    ADD_FAILURE() << "no ClientError thrown";
    return ClientError(-1, "", "");
  }

  SessionStore store_;
  HttpServer server_{store_};
  int port_ = 0;
  std::jthread loop_;
};

TEST_F(ClientTest, PlaysAgainstLevelThreeToTheEnd) {
  GameClient game("mancala", Url());
  StartOptions opts;
  opts.bot_level = 3;
  const std::string id = game.Start(opts);
  EXPECT_TRUE(IsValidGameId(id));
  EXPECT_EQ(game.cached().state, NewGame(BoardConfig()));

  Agent me(AgentForLevel(2), 4);
  int moves = 0;
  while (!game.is_over()) {
    if (game.current_player() == 0) {
      const Observation obs = game.Observe(0);
      ASSERT_TRUE(obs.to_move);
      game.Step(me.Choose(game.cached().state));
    } else {
      game.BotStep();
    }
    ++moves;
    ASSERT_EQ(game.cached().state.total_stones(), 98);
  }
  EXPECT_EQ(game.cached().state.turn_index(), moves);
  EXPECT_EQ(game.State().state, game.cached().state);
  const auto scores = game.cached().state.scores();
  EXPECT_EQ(scores[0] + scores[1], 98);
  const Winner w = *game.cached().state.winner();
  EXPECT_EQ(w, scores[0] > scores[1]   ? Winner::kPlayer0
               : scores[1] > scores[0] ? Winner::kPlayer1
                                       : Winner::kTie);

  const ClientError over = ErrorOf([&] { game.Step(Action{0}, 0); });
  EXPECT_EQ(over.http_status(), 409);
  EXPECT_EQ(over.code(), "game_over");
}

TEST_F(ClientTest, ServerErrorsSurfaceWithCodes) {
  GameClient game("mancala", Url());
  game.Start();
  const GameState before = game.State().state;
  const ClientError turn = ErrorOf([&] { game.Step(Action{0}, 1); });
  EXPECT_EQ(turn.http_status(), 409);
  EXPECT_EQ(turn.code(), "not_your_turn");
  game.Step(Action{3});
  const ClientError illegal = ErrorOf([&] { game.Step(Action{9}, 1); });
  EXPECT_EQ(illegal.http_status(), 422);
  EXPECT_EQ(illegal.code(), "illegal_action");
  EXPECT_EQ(game.State().state.turn_index(), before.turn_index() + 1);

  GameClient other("chess", Url());
  const ClientError unknown = ErrorOf([&] { other.Start(); });
  EXPECT_EQ(unknown.http_status(), 404);
  EXPECT_EQ(unknown.code(), "unknown_game");
}

TEST_F(ClientTest, CacheTracksMutations) {
  GameClient game("mancala", Url());
  StartOptions opts;
  opts.bot_level = 1;
  opts.seed = 3;
  game.Start(opts);
  const ClientStep s = game.Step(Action{6});
  EXPECT_EQ(game.cached().state, s.view.state);
  EXPECT_EQ(game.current_player(), 1);
  EXPECT_EQ(game.SimStart(), 1);
  EXPECT_EQ(game.cached().sim_depth, 1);
  const ClientBotStep b = game.BotStep();
  EXPECT_EQ(game.cached().state, b.view.state);
  EXPECT_EQ(game.SimStop(), 0);
  EXPECT_EQ(game.cached().state, s.view.state);
  EXPECT_EQ(game.State().state, s.view.state);
  EXPECT_EQ(game.LegalActions(), mancala::LegalActions(s.view.state));
  const ClientError empty = ErrorOf([&] { game.SimStop(); });
  EXPECT_EQ(empty.code(), "sim_stack_empty");
}

TEST_F(ClientTest, AttachAndDelete) {
  GameClient a("mancala", Url());
  const std::string id = a.Start();
  a.Step(Action{1});
  GameClient b("mancala", Url());
  b.Attach(id);
  EXPECT_EQ(b.cached().state, a.cached().state);
  b.Delete();
  EXPECT_FALSE(b.game_id().has_value());
  const ClientError gone = ErrorOf([&] { a.State(); });
  EXPECT_EQ(gone.http_status(), 404);
  EXPECT_EQ(gone.code(), "unknown_session");
  const ClientError idle = ErrorOf([&] { b.LegalActions(); });
  EXPECT_EQ(idle.code(), "not_started");
}

TEST_F(ClientTest, ExactBotAndSeat) {
  GameClient game("mancala", Url());
  StartOptions opts;
  opts.bot = AgentSpec{AgentKind::kGreedy2, 0.0, 0};
  opts.bot_player = 0;
  opts.config = BoardConfig(7, 7);
  game.Start(opts);
  // Greedy Agent II without exploration opens with the far pit.
  EXPECT_EQ(game.BotStep().action.pit, 0);
}

TEST_F(ClientTest, RemoteMatchEqualsLocalMatch) {
  MatchPlan plan;
  plan.agent_a = AgentForLevel(3);
  plan.agent_b = AgentForLevel(1);
  plan.num_games = 6;
  plan.alternate_after = 3;
  plan.master_seed = 2024;
  const MatchResult local = RunMatch(plan, 2);
  const MatchResult remote = RunMatchRemote(plan, Url());
  EXPECT_EQ(remote.games, local.games);
  EXPECT_EQ(remote.wins_a, local.wins_a);
  EXPECT_EQ(store_.size(), 0u);
}

TEST(ClientTransportTest, UnreachableServer) {
  // Bind a port, then free it so nothing is listening there.
  int port = 0;
  {
    SessionStore store;
    HttpServer probe(store);
    port = probe.Bind("127.0.0.1", 0);
  }
  GameClient game("mancala", "http://127.0.0.1:" + std::to_string(port));
  try {
    game.Start();
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.http_status(), 0);
    EXPECT_EQ(e.code(), "transport");
  }
}

}  // namespace
}  // namespace mancala
