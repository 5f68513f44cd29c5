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

// Checks of the closed forms and strategies against the exact solver.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bhz/solver.hpp"
#include "bhz/theory.hpp"

namespace bhz {

struct Mismatch {
  std::string state;
  std::string detail;
  // Ordering key for picking the smallest counterexample (board value or n).
  value_t size = 0;
};

struct ClaimReport {
  std::string claim;
  std::uint64_t instances = 0;
  std::vector<Mismatch> mismatches{};
  double seconds = 0;
  // Strategy steps where the theory gave no advice and the solver chose.
  std::uint64_t solver_fallbacks = 0;

  bool passed() const { return mismatches.empty(); }
  // Smallest mismatch by size; nullptr when passed.
  const Mismatch* minimal_counterexample() const;
};

struct Box {
  count_t a_max = 0;
  count_t b_max = 0;
  count_t c_max = 0;
};

// Theory vs solver on every covered state of the box. For m = 4 only the
// listed b values are visited; b_max is ignored.
ClaimReport crosscheck_range(Solver& solver, int black_hole, const Box& box,
                             const std::vector<count_t>& b_values = {});

// Every covered F_4 rule that applies to a state gives the same answer.
ClaimReport check_rule_agreement(const Box& box, const std::vector<count_t>& b_values);

// From every covered N state in the box the prescribed move lands on a P position.
ClaimReport check_constructive(Solver& solver, int black_hole, const Box& box,
                               const std::vector<count_t>& b_values = {});

// empty_board_winner against the solver for 1 <= n <= n_max.
ClaimReport check_empty_board(Solver& solver, int black_hole, value_t n_max);

// The designated winner plays prescribed placements, then prescribed moves
// (solver moves where the theory is silent), against every adversary line.
ClaimReport simulate_strategy_exhaustive(Solver& solver, value_t n, int black_hole);
ClaimReport simulate_strategies(Solver& solver, int black_hole, value_t n_max);

// Base-case trees and fixture classifications.
ClaimReport verify_fixtures(Solver& solver);

// Random games from the empty board across m in {2,3,4,5}, n <= n_max.
ClaimReport random_playouts(std::uint64_t games, std::uint64_t seed, value_t n_max = 60);

// The default suite; `extended` widens the strategy simulation to n <= 120.
std::vector<ClaimReport> run_suite(Solver& solver, bool extended);

std::string format_text(const std::vector<ClaimReport>& reports);
std::string format_json(const std::vector<ClaimReport>& reports);

}  // namespace bhz
