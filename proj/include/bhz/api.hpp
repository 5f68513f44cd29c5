/*
 * Copyright 2026 The bhz Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Human-vs-engine game sessions held in memory.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "bhz/solver.hpp"
#include "bhz/theory.hpp"

namespace bhz {

enum class SessionStatus : std::uint8_t { Placing, Decomposing, Finished };

const char* to_string(SessionStatus status);

struct HistoryEntry {
  Player actor;
  // "P1", "M", "A2", ...
  std::string action;
  // Canonical full state after the action.
  std::string state;
  std::string rule;
};

struct SessionView {
  std::string id;
  int m = 0;
  value_t n = 0;
  FullState state{GameState(2), 0};
  Player turn = Player::One;
  Player human = Player::One;
  SessionStatus status = SessionStatus::Placing;
  std::optional<Player> winner;
  std::vector<HistoryEntry> history;
  std::vector<std::string> legal_actions;
  std::vector<std::string> warnings;
};

struct Hint {
  // Empty when the game is over.
  std::string action;
  std::string action_rule;
  std::optional<Outcome> outcome;
  std::string outcome_rule;
  SessionStatus status = SessionStatus::Placing;
};

struct Verdict {
  Outcome outcome;
  std::string rule;
};

// Closed form when covered, otherwise the solver.
Verdict classify_for_play(Solver& solver, const GameState& state);
Verdict classify_for_play(Solver& solver, const FullState& state);

// The engine's pick for the player to move: prescribed when the theory
// covers the position, a solver winning action otherwise, else the first
// legal action in canonical order. `mover` and `n` feed the forcing strategy.
StrategyAdvice choose_action(Solver& solver, const FullState& state, Player mover, value_t n);

class UnknownSessionError : public GameError {
public:
  using GameError::GameError;
};

// The human acted out of turn, or after the game ended.
class NotYourTurnError : public GameError {
public:
  using GameError::GameError;
};

class RejectedActionError : public IllegalActionError {
public:
  RejectedActionError(const std::string& what, std::vector<std::string> legal)
      : IllegalActionError(what), legal_(std::move(legal))
  {
  }
  const std::vector<std::string>& legal() const { return legal_; }

private:
  std::vector<std::string> legal_;
};

class SessionManager {
public:
  explicit SessionManager(SolverOptions options = {});
  ~SessionManager();

  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  // m in {2,3,4}; m = 5 runs on the solver alone and carries a warning.
  SessionView create(int m, value_t n, Player human);
  SessionView get(const std::string& id) const;
  SessionView submit(const std::string& id, const std::string& action);
  Hint hint(const std::string& id);

  std::size_t size() const;
  Solver& solver() { return solver_; }

private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  std::string fresh_id();

  Solver solver_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace bhz
