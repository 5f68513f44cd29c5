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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bhz/engine.hpp"
#include "oracle.hpp"

using namespace bhz;

namespace {

GameState board(std::vector<count_t> c)
{
  int m = static_cast<int>(c.size()) + 1;
  return GameState(m, std::move(c));
}

std::vector<std::string> names(const std::vector<Move>& moves)
{
  std::vector<std::string> out;
  for (const auto& m : moves)
    out.push_back(to_string(m));
  return out;
}

}  // namespace

TEST_CASE("weights follow F1=1, F2=2 indexing")
{
  CHECK(fibonacci_weight(1) == 1);
  CHECK(fibonacci_weight(2) == 2);
  CHECK(fibonacci_weight(3) == 3);
  CHECK(fibonacci_weight(4) == 5);
  CHECK(fibonacci_weight(5) == 8);
  for (int i = 1; i <= 60; ++i)
    CHECK(fibonacci_weight(i) == static_cast<value_t>(oracle::fib(i)));
  CHECK_THROWS_AS(fibonacci_weight(0), std::out_of_range);
  CHECK_THROWS_AS(fibonacci_weight(kMaxColumn + 1), std::out_of_range);
  CHECK(fibonacci_weight(kMaxColumn) > fibonacci_weight(kMaxColumn - 1));
}

TEST_CASE("board construction")
{
  CHECK_THROWS_WITH_AS(GameState(1), "F1 black hole not playable", InvalidStateError);
  CHECK_THROWS_AS(GameState(0), InvalidStateError);
  CHECK_THROWS_AS(GameState(4, {1, 2}), InvalidStateError);
  GameState s(4, {1, 2, 3});
  CHECK(s.columns() == 3);
  CHECK(s.count(3) == 3);
  CHECK_THROWS_AS(s.count(4), std::out_of_range);
  CHECK(s.with_count(2, 7).count(2) == 7);
}

TEST_CASE("legal moves come in canonical order")
{
  CHECK(names(legal_moves(board({2, 0, 0}))) == std::vector<std::string>{"M"});
  CHECK(names(legal_moves(board({2, 2, 2}))) ==
        std::vector<std::string>{"M", "A1", "A2", "S2", "S3"});
  CHECK(names(legal_moves(board({1, 1, 0}))) == std::vector<std::string>{"A1"});
  CHECK(legal_moves(board({1, 0, 1})).empty());
  CHECK(legal_moves(board({0, 0, 0})).empty());
  // F_2 is the black hole: only merges.
  CHECK(names(legal_moves(board({5}))) == std::vector<std::string>{"M"});
}

TEST_CASE("move arithmetic and absorption")
{
  CHECK(apply_move(board({2, 0, 0}), Move::merge()) == board({0, 1, 0}));
  CHECK(apply_move(board({1, 1, 0}), Move::add(1)) == board({0, 0, 1}));
  // A2 on F_4 drops into the hole.
  CHECK(apply_move(board({0, 1, 1}), Move::add(2)) == board({0, 0, 0}));
  // S2 goes to F_1 and F_3.
  CHECK(apply_move(board({0, 2, 0}), Move::split(2)) == board({1, 0, 1}));
  // S3 on F_4: one piece to F_1, one absorbed.
  CHECK(apply_move(board({0, 0, 2}), Move::split(3)) == board({1, 0, 0}));
  // m = 3: S2 sends its upper piece into the hole.
  CHECK(apply_move(board({0, 2}), Move::split(2)) == board({1, 0}));
  CHECK(apply_move(board({0, 0, 0, 2}), Move::split(4)) == board({0, 1, 0, 0}));
  CHECK_THROWS_AS(apply_move(board({1, 0, 0}), Move::merge()), IllegalActionError);
  CHECK_THROWS_AS(apply_move(board({0, 0, 1}), Move::split(3)), IllegalActionError);
  CHECK_THROWS_AS(apply_move(board({3, 0, 0}), Move::split(1)), IllegalActionError);
  CHECK_THROWS_AS(apply_move(board({1, 1, 1}), Move::add(3)), IllegalActionError);
}

TEST_CASE("engine moves match the oracle's move set")
{
  std::mt19937 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    int m = 2 + static_cast<int>(rng() % 5);
    std::vector<count_t> c(m - 1);
    for (auto& v : c)
      v = rng() % 4;
    GameState s(m, c);
    std::set<oracle::Board> mine, theirs;
    for (const auto& mv : legal_moves(s)) {
      auto t = apply_move(s, mv);
      mine.insert(oracle::Board(t.counts().begin(), t.counts().end()));
    }
    for (auto& b : oracle::moves(oracle::Board(c.begin(), c.end())))
      theirs.insert(b);
    REQUIRE(mine == theirs);
    CHECK(is_terminal(s) == legal_moves(s).empty());
  }
}

TEST_CASE("every move conserves value mod F_m and lowers the progress measure")
{
  std::mt19937 rng(11);
  int split2_ties = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    int m = 2 + static_cast<int>(rng() % 5);
    std::vector<count_t> c(m - 1);
    for (auto& v : c)
      v = rng() % 6;
    GameState s(m, c);
    for (const auto& mv : legal_moves(s)) {
      auto t = apply_move(s, mv);
      CHECK(board_value(t) % fibonacci_weight(m) == board_value(s) % fibonacci_weight(m));
      CHECK(board_value(t) <= board_value(s));
      CHECK(progress_measure(t) < progress_measure(s));
      bool pair_tie = piece_count(t) == piece_count(s) &&
                      column_index_sum(t) == column_index_sum(s);
      if (pair_tie) {
        // Only 2 F_2 -> F_1 + F_3 keeps both piece count and index sum.
        CHECK(mv == Move::split(2));
        ++split2_ties;
      }
    }
  }
  CHECK(split2_ties > 0);
}

TEST_CASE("zeckendorf decomposition agrees with a brute-force search")
{
  for (int m = 2; m <= 8; ++m) {
    const auto fm = fibonacci_weight(m);
    for (value_t n = 0; n < fm; ++n) {
      auto z = zeckendorf_decomposition(n, m);
      // Brute force: the unique 0/1 non-adjacent vector with this value.
      int found = 0;
      for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
        if (mask & (mask >> 1))
          continue;
        long long v = 0;
        for (int i = 0; i < m - 1; ++i)
          if (mask >> i & 1)
            v += oracle::fib(i + 1);
        if (v != static_cast<long long>(n))
          continue;
        ++found;
        for (int i = 0; i < m - 1; ++i)
          CHECK(z.count(i + 1) == (mask >> i & 1));
      }
      CHECK(found == 1);
      CHECK(is_terminal(z));
    }
    CHECK_THROWS_AS(zeckendorf_decomposition(fm, m), std::invalid_argument);
  }
}

TEST_CASE("placements use only the outermost columns")
{
  auto fs = FullState::start(4, 2);
  auto ps = legal_placements(fs);
  REQUIRE(ps.size() == 1);
  CHECK(ps[0].column == 1);
  CHECK_FALSE(is_legal(fs, Placement{3}));
  CHECK_FALSE(is_legal(fs, Placement{2}));
  CHECK_THROWS_AS(apply_placement(fs, Placement{3}), IllegalActionError);

  fs = FullState::start(4, 20);
  ps = legal_placements(fs);
  REQUIRE(ps.size() == 2);
  CHECK(ps[1].column == 3);
  auto next = apply_placement(fs, Placement{3});
  CHECK(next.remaining == 17);
  CHECK(next.board == board({0, 0, 1}));

  // Single-column board.
  CHECK(legal_placements(FullState::start(2, 5)).size() == 1);
  CHECK_THROWS_AS(legal_placements(FullState(GameState(3), 0)), IllegalActionError);
}

TEST_CASE("text forms round trip")
{
  GameState s(4, {2, 0, 13});
  CHECK(to_string(s) == "m=4;counts=2,0,13");
  CHECK(parse_state(to_string(s)) == s);
  CHECK(parse_columns(4, "2,0,13") == s);
  CHECK(parse_columns(4, " (2, 0, 13) ") == s);
  CHECK(columns_string(s) == "(2,0,13)");
  CHECK(to_string(FullState(s, 4)) == "m=4;counts=2,0,13;remaining=4");
  for (const char* text : {"M", "A1", "A2", "S2", "S3"})
    CHECK(to_string(parse_move(text)) == text);
  CHECK(parse_placement("P3").column == 3);
  CHECK_THROWS_AS(parse_columns(4, "1,2"), InvalidStateError);
  CHECK_THROWS_AS(parse_columns(4, "1,x,2"), InvalidStateError);
  CHECK_THROWS_AS(parse_columns(4, "1,-2,2"), InvalidStateError);
  CHECK_THROWS_AS(parse_move("Q1"), InvalidStateError);
  CHECK_THROWS_AS(parse_state("counts=1"), InvalidStateError);
}

TEST_CASE("hashing separates remaining counts")
{
  FullState a(GameState(4, {1, 0, 0}), 0), b(GameState(4, {1, 0, 0}), 1);
  CHECK_FALSE(a == b);
  CHECK(std::hash<FullState>{}(a) != std::hash<FullState>{}(b));
}
