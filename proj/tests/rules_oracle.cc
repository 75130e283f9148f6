#include "rules_oracle.h"

#include <stdexcept>

namespace mancala::oracle {

namespace {

enum class SlotKind { kHouse, kStore };

struct Slot {
  int owner;
  SlotKind kind;
  int pit;
};

int& Ref(Position& p, const Slot& s) {
  return s.kind == SlotKind::kStore ? p.store[s.owner] : p.houses[s.owner][s.pit];
}

int FlatIndex(int n, const Slot& s) {
  const int base = s.owner == 0 ? 0 : n + 1;
  return s.kind == SlotKind::kStore ? base + n : base + s.pit;
}

bool AllZero(const std::vector<int>& v) {
  for (int x : v) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace

Position Initial(int pits, int stones) {
  Position p;
  p.houses[0].assign(pits, stones);
  p.houses[1].assign(pits, stones);
  return p;
}

Position FromFlat(const std::vector<int>& board, int to_move) {
  const int n = (static_cast<int>(board.size()) - 2) / 2;
  Position p;
  p.houses[0].assign(board.begin(), board.begin() + n);
  p.store[0] = board[n];
  p.houses[1].assign(board.begin() + n + 1, board.begin() + 2 * n + 1);
  p.store[1] = board[2 * n + 1];
  p.to_move = to_move;
  p.over = AllZero(p.houses[0]) && AllZero(p.houses[1]);
  return p;
}

std::vector<int> ToFlat(const Position& p) {
  std::vector<int> out = p.houses[0];
  out.push_back(p.store[0]);
  out.insert(out.end(), p.houses[1].begin(), p.houses[1].end());
  out.push_back(p.store[1]);
  return out;
}

std::vector<int> Moves(const Position& p) {
  std::vector<int> out;
  if (p.over) return out;
  for (int i = 0; i < static_cast<int>(p.houses[p.to_move].size()); ++i) {
    if (p.houses[p.to_move][i] > 0) out.push_back(i);
  }
  return out;
}

Result Play(const Position& p, int pit) {
  const int me = p.to_move;
  const int them = 1 - me;
  const int n = static_cast<int>(p.houses[me].size());
  if (p.over || pit < 0 || pit >= n || p.houses[me][pit] == 0) {
    throw std::logic_error("oracle: illegal move");
  }

  // The mover's sowing circuit, starting at their own first house.
  std::vector<Slot> cycle;
  for (int i = 0; i < n; ++i) cycle.push_back({me, SlotKind::kHouse, i});
  cycle.push_back({me, SlotKind::kStore, 0});
  for (int i = 0; i < n; ++i) cycle.push_back({them, SlotKind::kHouse, i});

  Result r;
  r.next = p;
  Position& q = r.next;
  int stones = q.houses[me][pit];
  q.houses[me][pit] = 0;
  int at = pit;
  Slot last = cycle[pit];
  for (int k = 0; k < stones; ++k) {
    at = (at + 1) % static_cast<int>(cycle.size());
    last = cycle[at];
    Ref(q, last) += 1;
  }

  if (last.kind == SlotKind::kStore) {
    r.extra_turn = true;
  } else {
    if (last.owner == me && q.houses[me][last.pit] == 1 &&
        q.houses[them][n - 1 - last.pit] > 0) {
      r.captured = true;
      r.capture_landing = FlatIndex(n, last);
      r.capture_opposite =
          FlatIndex(n, Slot{them, SlotKind::kHouse, n - 1 - last.pit});
      r.capture_count = 1 + q.houses[them][n - 1 - last.pit];
      q.store[me] += r.capture_count;
      q.houses[me][last.pit] = 0;
      q.houses[them][n - 1 - last.pit] = 0;
    }
    q.to_move = them;
  }

  const bool mine_empty = AllZero(q.houses[me]);
  const bool theirs_empty = AllZero(q.houses[them]);
  if (mine_empty || theirs_empty) {
    if (mine_empty && !theirs_empty) {
      for (int& h : q.houses[them]) {
        r.swept[them] += h;
        h = 0;
      }
      q.store[them] += r.swept[them];
    } else if (theirs_empty && !mine_empty) {
      for (int& h : q.houses[me]) {
        r.swept[me] += h;
        h = 0;
      }
      q.store[me] += r.swept[me];
    }
    q.over = true;
    r.winner = q.store[0] > q.store[1] ? 0 : q.store[1] > q.store[0] ? 1 : 2;
  }
  r.reward = q.store[me] - p.store[me];
  return r;
}

}  // namespace mancala::oracle
