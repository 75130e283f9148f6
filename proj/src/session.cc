#include "mancala/session.h"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace mancala {

GameRegistry GameRegistry::WithDefaults() {
  GameRegistry registry;
  registry.Register("mancala", GameEnvironment{
                                   .new_game = NewGame,
                                   .legal_actions = LegalActions,
                                   .apply_action = ApplyAction,
                                   .observe = Observe,
                               });
  return registry;
}

void GameRegistry::Register(const std::string& name, GameEnvironment env) {
  games_[name] = std::move(env);
}

bool GameRegistry::Contains(const std::string& name) const {
  return games_.count(name) > 0;
}

const GameEnvironment& GameRegistry::Get(const std::string& name) const {
  auto it = games_.find(name);
  if (it == games_.end()) {
    throw GameError(ErrorCode::kUnknownGame, "unknown game '" + name + "'");
  }
  return it->second;
}

bool IsValidGameId(const std::string& id) {
  return id.size() == 32 &&
         std::all_of(id.begin(), id.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

namespace {

std::uint64_t EntropySeed() {
  // random_device yields 32 bits per call.
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

SessionStore::SessionStore(GameRegistry registry, std::size_t max_sessions)
    : registry_(std::move(registry)),
      max_sessions_(max_sessions),
      id_source_(EntropySeed()) {}

std::string SessionStore::NewId() {
  std::lock_guard<std::mutex> lock(id_mu_);
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                static_cast<unsigned long long>(id_source_()),
                static_cast<unsigned long long>(id_source_()));
  return std::string(buf, 32);
}

void SessionStore::EvictIfFull() {
  if (max_sessions_ == 0) return;
  while (sessions_.size() >= max_sessions_ && !sessions_.empty()) {
    auto oldest = std::min_element(
        sessions_.begin(), sessions_.end(), [](const auto& a, const auto& b) {
          return a.second->last_used.load() < b.second->last_used.load();
        });
    sessions_.erase(oldest);
  }
}

std::shared_ptr<SessionStore::Slot> SessionStore::Find(
    const std::string& id) const {
  std::shared_lock lock(map_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw GameError(ErrorCode::kUnknownSession, "unknown game id '" + id + "'");
  }
  it->second->last_used.store(++clock_);
  return it->second;
}

std::string SessionStore::Create(const std::string& game_name,
                                 const CreateOptions& opts) {
  const GameEnvironment& env = registry_.Get(game_name);
  if (opts.bot) opts.bot->Validate();
  if (opts.bot_player != 0 && opts.bot_player != 1) {
    throw GameError(ErrorCode::kBadRequest, "bot player must be 0 or 1");
  }

  auto slot = std::make_shared<Slot>();
  SessionRecord& rec = slot->rec;
  rec.game_name = game_name;
  rec.config = opts.config;
  rec.state = env.new_game(opts.config);
  rec.bot = opts.bot;
  rec.bot_player = opts.bot_player;
  rec.seed = opts.seed ? *opts.seed : EntropySeed();
  rec.bot_rng = Rng(DeriveSeed(rec.seed, rec.bot_player));
  rec.created_at = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  slot->last_used = ++clock_;

  std::unique_lock lock(map_mu_);
  std::string id;
  do {
    id = NewId();
  } while (sessions_.count(id) > 0);
  rec.game_id = id;
  EvictIfFull();
  sessions_.emplace(id, std::move(slot));
  return id;
}

namespace {

void CheckPlayer(Player player) {
  if (player != 0 && player != 1) {
    throw GameError(ErrorCode::kBadRequest,
                    "player must be 0 or 1, got " + std::to_string(player));
  }
}

}  // namespace

std::pair<GameState, StepOutcome> SessionStore::Step(const std::string& id,
                                                     Player player,
                                                     Action action) {
  auto slot = Find(id);
  std::lock_guard<std::mutex> lock(slot->mu);
  SessionRecord& rec = slot->rec;
  CheckPlayer(player);
  if (rec.state.is_terminal()) {
    throw GameError(ErrorCode::kGameOver, "game is already finished");
  }
  if (player != rec.state.current_player()) {
    throw GameError(ErrorCode::kNotYourTurn,
                    "it is player " +
                        std::to_string(rec.state.current_player()) +
                        "'s turn");
  }
  auto result = registry_.Get(rec.game_name).apply_action(rec.state, action);
  rec.state = result.first;
  return result;
}

BotStepResult SessionStore::BotStep(const std::string& id,
                                    std::optional<int> level) {
  auto slot = Find(id);
  std::lock_guard<std::mutex> lock(slot->mu);
  SessionRecord& rec = slot->rec;
  if (rec.state.is_terminal()) {
    throw GameError(ErrorCode::kGameOver, "game is already finished");
  }
  std::optional<AgentSpec> spec = rec.bot;
  if (level) spec = AgentForLevel(*level);
  if (!spec) {
    throw GameError(ErrorCode::kNoBot,
                    "no bot is bound to this game and no level was given");
  }
  if (rec.state.current_player() != rec.bot_player) {
    throw GameError(ErrorCode::kNotYourTurn,
                    "it is player " +
                        std::to_string(rec.state.current_player()) +
                        "'s turn, not the bot's");
  }
  const Action action = ChooseAction(*spec, rec.state, rec.bot_rng);
  auto [next, outcome] =
      registry_.Get(rec.game_name).apply_action(rec.state, action);
  rec.state = next;
  return {action, std::move(next), outcome};
}

int SessionStore::SimStart(const std::string& id) {
  auto slot = Find(id);
  std::lock_guard<std::mutex> lock(slot->mu);
  SessionRecord& rec = slot->rec;
  rec.sim_stack.push_back(rec.state);
  rec.rng_stack.push_back(rec.bot_rng);
  return static_cast<int>(rec.sim_stack.size());
}

std::pair<GameState, int> SessionStore::SimStop(const std::string& id) {
  auto slot = Find(id);
  std::lock_guard<std::mutex> lock(slot->mu);
  SessionRecord& rec = slot->rec;
  if (rec.sim_stack.empty()) {
    throw GameError(ErrorCode::kSimStackEmpty, "no simulation in progress");
  }
  rec.state = std::move(rec.sim_stack.back());
  rec.sim_stack.pop_back();
  rec.bot_rng = std::move(rec.rng_stack.back());
  rec.rng_stack.pop_back();
  return {rec.state, static_cast<int>(rec.sim_stack.size())};
}

SessionView SessionStore::View(const std::string& id) const {
  auto slot = Find(id);
  std::lock_guard<std::mutex> lock(slot->mu);
  const SessionRecord& rec = slot->rec;
  return {rec.game_id, rec.game_name, rec.state,
          static_cast<int>(rec.sim_stack.size())};
}

GameState SessionStore::GetState(const std::string& id) const {
  return View(id).state;
}

Observation SessionStore::GetObservation(const std::string& id,
                                         Player player) const {
  auto slot = Find(id);
  std::lock_guard<std::mutex> lock(slot->mu);
  return registry_.Get(slot->rec.game_name).observe(slot->rec.state, player);
}

std::vector<Action> SessionStore::GetLegalActions(const std::string& id) const {
  auto slot = Find(id);
  std::lock_guard<std::mutex> lock(slot->mu);
  return registry_.Get(slot->rec.game_name).legal_actions(slot->rec.state);
}

void SessionStore::Delete(const std::string& id) {
  std::unique_lock lock(map_mu_);
  if (sessions_.erase(id) == 0) {
    throw GameError(ErrorCode::kUnknownSession, "unknown game id '" + id + "'");
  }
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(map_mu_);
  return sessions_.size();
}

std::vector<SessionRecord> SessionStore::Export() const {
  std::vector<std::shared_ptr<Slot>> slots;
  {
    std::shared_lock lock(map_mu_);
    for (const auto& [id, slot] : sessions_) slots.push_back(slot);
  }
  std::vector<SessionRecord> out;
  out.reserve(slots.size());
  for (const auto& slot : slots) {
    std::lock_guard<std::mutex> lock(slot->mu);
    out.push_back(slot->rec);
  }
  std::sort(out.begin(), out.end(),
            [](const SessionRecord& a, const SessionRecord& b) {
              return a.game_id < b.game_id;
            });
  return out;
}

void SessionStore::Import(std::vector<SessionRecord> records) {
  std::unique_lock lock(map_mu_);
  for (const SessionRecord& rec : records) {
    if (!IsValidGameId(rec.game_id)) {
      throw GameError(ErrorCode::kBadRequest,
                      "malformed game id '" + rec.game_id + "'");
    }
    if (sessions_.count(rec.game_id) > 0) {
      throw GameError(ErrorCode::kBadRequest,
                      "game id '" + rec.game_id + "' already exists");
    }
    registry_.Get(rec.game_name);
    if (rec.sim_stack.size() != rec.rng_stack.size()) {
      throw GameError(ErrorCode::kBadRequest,
                      "simulation stacks of '" + rec.game_id +
                          "' have mismatched depth");
    }
  }
  for (SessionRecord& rec : records) {
    auto slot = std::make_shared<Slot>();
    slot->last_used = ++clock_;
    std::string id = rec.game_id;
    slot->rec = std::move(rec);
    EvictIfFull();
    sessions_.emplace(std::move(id), std::move(slot));
  }
}

}  // namespace mancala
