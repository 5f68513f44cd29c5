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

// Rules of the black hole Zeckendorf game.
//
// The board has columns F_1 .. F_{m-1}, weighted by Fibonacci numbers indexed
// so that F_1 = 1, F_2 = 2. Column m is the black hole: any piece that lands
// on column m or beyond leaves play. Before the decomposition phase, players
// alternately place single pieces in the outermost columns (F_1 and F_{m-1})
// until the weighted sum reaches the starting total n.
//
// Columns are 1-based everywhere in the public interface.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bhz {

using count_t = std::uint32_t;
using value_t = std::uint64_t;

// Largest column index whose weight fits in value_t.
inline constexpr int kMaxColumn = 90;

class GameError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed state, bad m, unparsable text.
class InvalidStateError : public GameError {
public:
  using GameError::GameError;
};

// A move or placement that is not legal in the given state.
class IllegalActionError : public GameError {
public:
  using GameError::GameError;
};

// F_i with F_1 = 1, F_2 = 2, F_{k+1} = F_k + F_{k-1}.
value_t fibonacci_weight(int column);

class GameState {
public:
  // Empty board with a black hole on F_m.
  explicit GameState(int black_hole);
  GameState(int black_hole, std::vector<count_t> counts);

  int black_hole() const { return black_hole_; }
  int columns() const { return black_hole_ - 1; }

  // Pieces in column F_col, col in [1, m-1].
  count_t count(int column) const;
  std::span<const count_t> counts() const { return counts_; }

  GameState with_count(int column, count_t value) const;

  bool operator==(const GameState&) const = default;

private:
  int black_hole_;
  std::vector<count_t> counts_;
};

struct Move {
  enum class Kind : std::uint8_t { Merge, Add, Split };

  Kind kind;
  // Merge: always 1. Add(i): takes from columns i and i+1. Split(i): takes two from i.
  int column;

  static Move merge() { return {Kind::Merge, 1}; }
  static Move add(int column) { return {Kind::Add, column}; }
  static Move split(int column) { return {Kind::Split, column}; }

  bool operator==(const Move&) const = default;
};

struct Placement {
  int column;

  bool operator==(const Placement&) const = default;
};

// Board plus the pieces not yet placed. Placement phase while remaining > 0.
struct FullState {
  GameState board;
  value_t remaining = 0;

  FullState(GameState board_in, value_t remaining_in)
      : board(std::move(board_in)), remaining(remaining_in) {}

  // Empty board with n pieces to place.
  static FullState start(int black_hole, value_t n) { return {GameState(black_hole), n}; }

  bool placing() const { return remaining > 0; }

  bool operator==(const FullState&) const = default;
};

// Decomposition phase.

// Legal moves in canonical order: M, A1, A2, ..., S2, S3, ...
std::vector<Move> legal_moves(const GameState& state);
bool is_legal(const GameState& state, const Move& move);
GameState apply_move(const GameState& state, const Move& move);
bool is_terminal(const GameState& state);

value_t board_value(const GameState& state);
value_t piece_count(const GameState& state);
// Sum of count * column index. Unchanged by a split on F_2 that stays on the board,
// lowered by one by any other non-absorbing split.
value_t column_index_sum(const GameState& state);

// (pieces, column index sum, pieces on F_2). Strictly decreases
// lexicographically on every move, so the game graph is acyclic.
std::array<value_t, 3> progress_measure(const GameState& state);

// Greedy largest-weight-first decomposition of n < F_m.
GameState zeckendorf_decomposition(value_t n, int black_hole);

// Placement phase.

std::vector<Placement> legal_placements(const FullState& state);
bool is_legal(const FullState& state, const Placement& placement);
FullState apply_placement(const FullState& state, const Placement& placement);

// Text forms: "M", "A1", "S3", "P1", "P3" and "m=4;counts=2,0,0".
std::string to_string(const Move& move);
std::string to_string(const Placement& placement);
std::string to_string(const GameState& state);
std::string to_string(const FullState& state);

Move parse_move(std::string_view text);
Placement parse_placement(std::string_view text);
GameState parse_state(std::string_view text);
// "a,b,c" ordered from F_1 outward.
GameState parse_columns(int black_hole, std::string_view text);
// Short "(a,b,c)" form for reports.
std::string columns_string(const GameState& state);

struct StateHash {
  std::size_t operator()(const GameState& state) const noexcept;
  std::size_t operator()(const FullState& state) const noexcept;
};

}  // namespace bhz

template <>
struct std::hash<bhz::GameState> {
  std::size_t operator()(const bhz::GameState& s) const noexcept { return bhz::StateHash{}(s); }
};

template <>
struct std::hash<bhz::FullState> {
  std::size_t operator()(const bhz::FullState& s) const noexcept { return bhz::StateHash{}(s); }
};
