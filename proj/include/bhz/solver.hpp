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

// Exact P/N classification by memoized depth-first search.
//
// The game graph is finite and acyclic (every move lowers progress_measure
// lexicographically, and every placement lowers the number of unplaced
// pieces), so a position is P iff all of its
// children are N. Placement turns and decomposition turns alternate with no
// extra turn at the phase boundary, so both phases are one game to the search.

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "bhz/engine.hpp"

namespace bhz {

enum class Outcome : std::uint8_t { P, N };

inline char to_char(Outcome o) { return o == Outcome::P ? 'P' : 'N'; }

struct Classification {
  Outcome outcome;
  // "solver" or a closed-form rule tag.
  std::string provenance;
};

// Raised when a search would need more states than the configured budget.
// The instance is too large; no partial answer is ever returned.
class BudgetExceededError : public std::runtime_error {
public:
  explicit BudgetExceededError(std::uint64_t budget);
  std::uint64_t budget() const { return budget_; }

private:
  std::uint64_t budget_;
};

// Outcome cache keyed by full state. Entries never change once written;
// re-inserting the same value is a no-op, a conflicting value is a logic error.
class MemoTable {
public:
  std::optional<Outcome> find(const FullState& key) const;
  void insert(const FullState& key, Outcome outcome);
  std::size_t size() const;

private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<FullState, Outcome> table_;
};

struct SolverOptions {
  std::uint64_t node_budget = 50'000'000;
};

// Reads BHZ_NODE_BUDGET if set.
SolverOptions options_from_env();

struct TableRow {
  GameState state;
  Outcome outcome;
};

class Solver {
public:
  explicit Solver(SolverOptions options = {});

  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  Outcome outcome(const GameState& state);
  Outcome outcome(const FullState& state);

  Classification classify_position(const GameState& state) { return {outcome(state), "solver"}; }
  Classification classify_full(const FullState& state) { return {outcome(state), "solver"}; }

  // Moves leading to P positions, canonical order. Empty iff state is P.
  std::vector<Move> winning_moves(const GameState& state);
  std::vector<Placement> winning_placements(const FullState& state);

  // Every state with lo[i] <= count(i+1) <= hi[i], column 1 varying fastest.
  void for_each_in_box(int black_hole, const std::vector<count_t>& lo,
                       const std::vector<count_t>& hi,
                       const std::function<void(const TableRow&)>& sink);
  // Box over (a, b, c); columns past the board are ignored. m in {2, 3, 4}.
  std::vector<TableRow> enumerate_table(int black_hole, count_t a_max, count_t b_max,
                                        count_t c_max);

  std::size_t memo_size() const { return memo_.size(); }
  std::uint64_t node_budget() const { return options_.node_budget; }

private:
  Outcome search(const FullState& root);

  SolverOptions options_;
  MemoTable memo_;
};

// Children of a full state: placements while pieces remain, then moves.
std::vector<FullState> successors(const FullState& state);

// "m,a,b,c,remaining,outcome"
std::string csv_header();
std::string csv_row(const TableRow& row);
TableRow parse_csv_row(const std::string& line);

}  // namespace bhz
