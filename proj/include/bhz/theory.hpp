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

// Closed-form outcomes for small black holes and the constructive strategies
// that go with them. Every answer carries a rule tag (see docs/rule_tags.md).
// Outside the proven shapes the answer is "uncovered", never a guess.
//
// Coordinates: a = count(F_1), b = count(F_2), c = count(F_3);
// alpha = a / 3, k1 = a % 3, gamma = c / 4, k3 = c % 4.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bhz/engine.hpp"
#include "bhz/solver.hpp"

namespace bhz {

inline constexpr const char* kUncovered = "uncovered";

struct ClosedFormResult {
  std::optional<Outcome> outcome;
  std::string rule;

  bool covered() const { return outcome.has_value(); }
};

enum class Player : std::uint8_t { One = 1, Two = 2 };

inline Player other(Player p) { return p == Player::One ? Player::Two : Player::One; }
inline int to_int(Player p) { return static_cast<int>(p); }

// The query falls outside every closed form.
class UncoveredError : public GameError {
public:
  using GameError::GameError;
};

// No forcing guarantee for this request (wrong role, or play has left the
// forced line). Callers fall back to the solver.
class StrategyError : public GameError {
public:
  using GameError::GameError;
};

ClosedFormResult classify_f2(count_t a);
ClosedFormResult classify_f3(count_t a, count_t b);
// Throws InvalidStateError unless m == 4.
ClosedFormResult classify_f4(const GameState& state);
// Every F_4 statement that speaks about this state, most specific first.
// classify_f4 returns the first entry; they must all agree.
std::vector<ClosedFormResult> applicable_f4_rules(const GameState& state);

// Dispatches on m; uncovered for m >= 5.
ClosedFormResult classify_closed_form(const GameState& state);

struct Winner {
  Player player;
  std::string rule;
  // Short justification, e.g. "n ≡ 5 mod 9".
  std::string reason;
};

// Throws UncoveredError for m outside {2, 3, 4}, std::invalid_argument for n == 0.
Winner empty_board_winner(value_t n, int black_hole);

struct StrategyAdvice {
  std::variant<Move, Placement> action;
  std::string rule;
};

std::string to_string(const StrategyAdvice& advice);

// The move named by the constructive proofs when the state is a covered N
// position. nullopt for covered P positions, terminal states and uncovered
// states; `rule_out` (if given) receives the deciding tag or "uncovered".
std::optional<Move> prescribed_decomposition_move(const GameState& state,
                                                  std::string* rule_out = nullptr);

// Forcing placement for the empty-board winner. `role` must be the player to
// move and the designated winner for (n, m); throws StrategyError otherwise,
// or when the board is no longer on the forced line.
StrategyAdvice prescribed_placement(const FullState& fs, Player role, value_t n);

}  // namespace bhz
