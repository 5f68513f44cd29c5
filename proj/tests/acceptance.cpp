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

// Acceptance criteria 1-9: one PASS/FAIL line each, exact match, timed.
// Every criterion starts from a fresh solver so its time includes the search.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "bhz/verify.hpp"

using namespace bhz;

namespace {

struct Outcome_ {
  bool ok = true;
  std::string detail;
  std::uint64_t instances = 0;
};

using Check = std::function<Outcome_(Solver&)>;

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const Check& check)
{
  Solver solver;
  auto start = std::chrono::steady_clock::now();
  Outcome_ r;
  try {
    r = check(solver);
  } catch (const std::exception& e) {
    r.ok = false;
    r.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = secs < limit_seconds;
  bool pass = r.ok && in_time;
  if (!pass)
    ++failures;
  std::printf("criterion %d: %s  %s  instances=%llu  time=%.3fs (limit %.0fs)%s%s\n", id,
              pass ? "PASS" : "FAIL", title, static_cast<unsigned long long>(r.instances), secs,
              limit_seconds, r.detail.empty() ? "" : "  ", r.detail.c_str());
  std::fflush(stdout);
}

Outcome_ from_reports(std::initializer_list<ClaimReport> reports)
{
  Outcome_ r;
  for (const auto& rep : reports) {
    r.instances += rep.instances;
    if (rep.solver_fallbacks)
      r.detail += rep.claim + " solver fallbacks on uncovered boards=" +
                  std::to_string(rep.solver_fallbacks) + "; ";
    if (!rep.passed()) {
      r.ok = false;
      const auto* m = rep.minimal_counterexample();
      r.detail += rep.claim + ": " + std::to_string(rep.mismatches.size()) +
                  " mismatches, smallest " + m->state + " " + m->detail + "; ";
    }
  }
  return r;
}

void expect(Outcome_& r, bool cond, const std::string& what)
{
  ++r.instances;
  if (!cond) {
    r.ok = false;
    r.detail += what + "; ";
  }
}

std::string cell(count_t a, count_t b, count_t c)
{
  std::ostringstream s;
  s << '(' << a << ',' << b << ',' << c << ')';
  return s.str();
}

// Solver vs classify_f4 on (a,b,c), a <= 45, c <= 60; also requires full coverage.
void compare_slice(Solver& solver, count_t b, Outcome_& r)
{
  for (count_t c = 0; c <= 60; ++c)
    for (count_t a = 0; a <= 45; ++a) {
      GameState s(4, {a, b, c});
      auto theory = classify_f4(s);
      if (!theory.covered()) {
        expect(r, false, cell(a, b, c) + " uncovered");
        continue;
      }
      auto exact = solver.outcome(s);
      expect(r, *theory.outcome == exact,
             cell(a, b, c) + " theory " + to_char(*theory.outcome) + " (" + theory.rule +
                 ") solver " + to_char(exact));
    }
}

}  // namespace

int main()
{
  criterion(1, "F2 pattern a<=1000", 1, [](Solver& solver) {
    Outcome_ r;
    for (count_t a = 0; a <= 1000; ++a) {
      bool p = a % 4 == 0 || a % 4 == 1;
      expect(r, (solver.outcome(GameState(2, {a})) == Outcome::P) == p,
             "a=" + std::to_string(a));
    }
    return r;
  });

  criterion(2, "F3 table a,b<=60", 5, [](Solver& solver) {
    Outcome_ r;
    for (count_t b = 0; b <= 60; ++b)
      for (count_t a = 0; a <= 60; ++a) {
        auto k1 = a % 3, k2 = b % 3;
        bool p = (k1 == 0 && k2 == 0) || (k1 == 0 && k2 == 1) || (k1 == 1 && k2 == 0);
        expect(r, (solver.outcome(GameState(3, {a, b})) == Outcome::P) == p,
               "(" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    return r;
  });

  criterion(3, "(a,0,c) table a<=45 c<=60 vs closed form", 120, [](Solver& solver) {
    Outcome_ r;
    compare_slice(solver, 0, r);
    // Named exception states.
    auto is = [&](count_t a, count_t b, count_t c, Outcome o) {
      expect(r, solver.outcome(GameState(4, {a, b, c})) == o &&
                    classify_f4(GameState(4, {a, b, c})).outcome == o,
             cell(a, b, c) + " exception state");
    };
    is(2, 0, 0, Outcome::N);
    is(1, 0, 2, Outcome::P);
    is(1, 0, 3, Outcome::N);
    is(2, 0, 1, Outcome::P);
    for (count_t c : {1u, 2u, 6u})
      is(0, 1, c, Outcome::N);
    // Threshold boundaries: both sides of alpha = gamma + t for every row rule.
    struct Row {
      count_t k1, k3;
      int t;
    };
    const Row rows[] = {{0, 0, 0}, {2, 0, 1}, {0, 1, -1}, {2, 1, 0}, {1, 2, 0}, {1, 3, -1}};
    int boundary = 0;
    for (const auto& row : rows)
      for (count_t g = 2; g <= 10; ++g)
        for (int side : {-1, 0, 1}) {
          long long alpha = static_cast<long long>(g) + row.t + side;
          if (alpha < 0 || 3 * alpha + row.k1 > 45)
            continue;
          GameState s(4, {static_cast<count_t>(3 * alpha + row.k1), 0, 4 * g + row.k3});
          expect(r, classify_f4(s).outcome == solver.outcome(s),
                 columns_string(s) + " boundary");
          ++boundary;
        }
    r.detail += "boundary cells=" + std::to_string(boundary);
    return r;
  });

  criterion(4, "(a,1,c) table a<=45 c<=60 vs closed form", 120, [](Solver& solver) {
    Outcome_ r;
    compare_slice(solver, 1, r);
    // The statement itself, independent of the closed-form code.
    for (count_t c = 0; c <= 60; ++c)
      for (count_t a = 0; a <= 45; ++a) {
        long long alpha = a / 3, k1 = a % 3, gamma = c / 4, k3 = c % 4;
        Outcome o;
        if (k1 != 0)
          o = Outcome::N;
        else {
          const long long slack[] = {0, -1, -2, 2};
          o = alpha <= gamma + slack[k3] ? Outcome::P : Outcome::N;
        }
        expect(r, solver.outcome(GameState(4, {a, 1, c})) == o, cell(a, 1, c) + " statement");
      }
    for (auto [a, c] : {std::pair<count_t, count_t>{4, 3}, {7, 2}, {10, 1}, {13, 0}, {2, 2},
                        {5, 1}, {8, 0}, {1, 4}})
      expect(r, solver.outcome(GameState(4, {a, 1, c})) == Outcome::N, cell(a, 1, c) +  " exception");
    return r;
  });

  criterion(5, "empty-board winners m=3 n<=200, m=4 n<=120", 300, [](Solver& solver) {
    auto r = from_reports({check_empty_board(solver, 3, 200), check_empty_board(solver, 4, 120)});
    for (value_t n : {17, 47})
      expect(r, solver.outcome(FullState::start(4, n)) == Outcome::P, "n=" + std::to_string(n));
    for (value_t n : {2, 32})
      expect(r, solver.outcome(FullState::start(4, n)) == Outcome::N, "n=" + std::to_string(n));
    return r;
  });

  criterion(6, "prescribed moves reach P from every covered N state", 60, [](Solver& solver) {
    return from_reports({check_constructive(solver, 3, {60, 60, 0}),
                         check_constructive(solver, 4, {45, 0, 60}, {0, 1})});
  });

  criterion(7, "forcing strategies n<=60, m in {3,4}", 300, [](Solver& solver) {
    return from_reports({simulate_strategies(solver, 3, 60), simulate_strategies(solver, 4, 60)});
  });

  // Checked literally: the pair (pieces, index sum) must fall on every move.
  bool pair_conflict_only = false;
  criterion(8, "10000 random playouts", 60, [&](Solver&) {
    Outcome_ r;
    std::mt19937_64 rng(20240607);
    auto pick = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };
    std::uint64_t moves = 0, ties = 0, ties_off_s2 = 0, other = 0;
    std::string first_tie;
    for (int g = 0; g < 10000; ++g) {
      int m = std::uniform_int_distribution<int>(2, 5)(rng);
      value_t n = std::uniform_int_distribution<value_t>(1, 60)(rng);
      value_t fm = fibonacci_weight(m);
      FullState fs = FullState::start(m, n);
      while (fs.placing()) {
        auto opts = legal_placements(fs);
        fs = apply_placement(fs, opts[pick(opts.size())]);
      }
      GameState s = fs.board;
      while (!is_terminal(s)) {
        auto opts = legal_moves(s);
        Move mv = opts[pick(opts.size())];
        GameState t = apply_move(s, mv);
        ++moves;
        auto p0 = piece_count(s), p1 = piece_count(t);
        auto q0 = column_index_sum(s), q1 = column_index_sum(t);
        if (!(p1 < p0 || (p1 == p0 && q1 < q0))) {
          if (ties++ == 0)
            first_tie = to_string(s) + " " + to_string(mv);
          if (mv != Move::split(2) || p1 != p0 || q1 != q0)
            ++ties_off_s2;
        }
        if (board_value(t) % fm != board_value(s) % fm)
          ++other;
        s = std::move(t);
      }
      if (s != zeckendorf_decomposition(n % fm, m))
        ++other;
      ++r.instances;
    }
    r.ok = ties == 0 && other == 0;
    pair_conflict_only = ties > 0 && ties_off_s2 == 0 && other == 0;
    r.detail = "moves=" + std::to_string(moves) + " pair-non-decreasing=" + std::to_string(ties) +
               " (of which not an exact S2 tie: " + std::to_string(ties_off_s2) +
               ") other-violations=" + std::to_string(other);
    if (ties)
      r.detail += "; first: " + first_tie +
                  "; a non-absorbing S2 maps 2 pieces at index 2 to indices 1 and 3, so the pair "
                  "is unchanged (2*2 = 1+3); the triple (pieces, index sum, count on F_2) falls "
                  "on every move and the library uses it";
    return r;
  });

  criterion(9, "base-case fixtures", 1, [](Solver& solver) {
    return from_reports({verify_fixtures(solver)});
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAILED" : "OK", failures);
  if (failures == 1 && pair_conflict_only)
    std::printf("only criterion 8 failed, solely on the S2 pair tie; see README\n");
  return failures ? 1 : 0;
}
