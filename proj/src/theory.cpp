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

#include "bhz/theory.hpp"

#include <algorithm>
#include <array>

namespace bhz {

namespace {

constexpr Outcome P = Outcome::P;
constexpr Outcome N = Outcome::N;

Outcome p_if(bool cond) { return cond ? P : N; }

// Signed so threshold comparisons like alpha <= gamma - 2 stay honest.
struct Coords {
  long long a, b, c;
  long long alpha, k1, gamma, k3;

  explicit Coords(const GameState& s)
      : a(s.count(1)), b(s.count(2)), c(s.count(3)), alpha(a / 3), k1(a % 3), gamma(c / 4),
        k3(c % 4)
  {
  }
};

struct ExceptionState {
  count_t a, b, c;
};

// N positions not reached by the general b = 1 argument.
constexpr std::array<ExceptionState, 8> kB1Exceptions{{
    {4, 1, 3}, {7, 1, 2}, {10, 1, 1}, {13, 1, 0}, {2, 1, 2}, {5, 1, 1}, {8, 1, 0}, {1, 1, 4}}};

bool in_b1_exceptions(const Coords& x)
{
  return std::any_of(kB1Exceptions.begin(), kB1Exceptions.end(), [&](const ExceptionState& s) {
    return s.a == x.a && s.b == x.b && s.c == x.c;
  });
}

// Threshold rows for (a,0,c).
ClosedFormResult b0_general(const Coords& x)
{
  const auto al = x.alpha, ga = x.gamma;
  Outcome o = N;
  switch (x.k3) {
  case 0:
    o = x.k1 == 0 ? p_if(al >= ga) : x.k1 == 1 ? P : p_if(al >= ga + 1);
    break;
  case 1:
    o = x.k1 == 0 ? p_if(al >= ga - 1) : x.k1 == 1 ? P : p_if(al >= ga);
    break;
  case 2:
    o = x.k1 == 1 ? p_if(al <= ga) : N;
    break;
  case 3:
    o = x.k1 == 1 ? p_if(al <= ga - 1) : N;
    break;
  }
  return {o, "F4.Fig1.c" + std::to_string(x.k3) + ".a" + std::to_string(x.k1)};
}

ClosedFormResult b1_general(const Coords& x)
{
  if (x.k1 != 0)
    return {N, "F4.b1.k1in12"};
  const auto al = x.alpha, ga = x.gamma;
  static constexpr std::array<long long, 4> kSlack{0, -1, -2, 2};
  return {p_if(al <= ga + kSlack[x.k3]), "F4.b1.k1is0.k3" + std::to_string(x.k3)};
}

std::string f3_tag(long long k1, long long k2)
{
  return "F3.res." + std::to_string(k1) + std::to_string(k2);
}

}  // namespace

ClosedFormResult classify_f2(count_t a)
{
  return {p_if(a % 4 == 0 || a % 4 == 1), "F2.mod4"};
}

ClosedFormResult classify_f3(count_t a, count_t b)
{
  const auto k1 = a % 3, k2 = b % 3;
  bool p = (k1 == 0 && k2 == 0) || (k1 == 0 && k2 == 1) || (k1 == 1 && k2 == 0);
  return {p_if(p), f3_tag(k1, k2)};
}

std::vector<ClosedFormResult> applicable_f4_rules(const GameState& state)
{
  if (state.black_hole() != 4)
    throw InvalidStateError("F4 closed forms need m=4, got m=" + std::to_string(state.black_hole()));
  const Coords x(state);
  std::vector<ClosedFormResult> out;

  if (x.b == 0) {
    if (x.c == 0)
      out.push_back({p_if(x.a != 2), "F4.allA"});
    if (x.a == 0)
      out.push_back({p_if(x.c == 0 || x.c == 1 || x.c == 5), "F4.allC"});
    if (x.a == 1)
      out.push_back({p_if(x.c != 3), "F4.1c"});
    if (x.a == 2)
      out.push_back({p_if(x.c == 1), "F4.2c"});
    if (x.c == 1)
      out.push_back({P, "F4.a01"});
    if (x.c == 2)
      out.push_back({p_if(x.a == 1), "F4.a02"});
    if (x.c == 3)
      out.push_back({N, "F4.a03"});
    out.push_back(b0_general(x));
  } else if (x.b == 1) {
    if (in_b1_exceptions(x))
      out.push_back({N, "F4.appC"});
    if (x.a == 0)
      out.push_back({p_if(x.c != 1 && x.c != 2 && x.c != 6), "F4.01c"});
    if (x.a == 1)
      out.push_back({N, "F4.11c"});
    if (x.a == 2)
      out.push_back({N, "F4.21c"});
    out.push_back(b1_general(x));
  }
  return out;
}

ClosedFormResult classify_f4(const GameState& state)
{
  auto rules = applicable_f4_rules(state);
  if (rules.empty())
    return {std::nullopt, kUncovered};
  return rules.front();
}

ClosedFormResult classify_closed_form(const GameState& state)
{
  switch (state.black_hole()) {
  case 2:
    return classify_f2(state.count(1));
  case 3:
    return classify_f3(state.count(1), state.count(2));
  case 4:
    return classify_f4(state);
  default:
    return {std::nullopt, kUncovered};
  }
}

Winner empty_board_winner(value_t n, int black_hole)
{
  if (n == 0)
    throw std::invalid_argument("n must be positive");
  switch (black_hole) {
  case 2: {
    auto r = n % 4;
    return {r == 1 || r == 2 ? Player::One : Player::Two, "F2.empty.mod4",
            "n ≡ " + std::to_string(r) + " mod 4"};
  }
  case 3: {
    auto r = n % 9;
    bool one = r == 1 || r == 2 || r == 3 || r == 6 || r == 8;
    return {one ? Player::One : Player::Two, "F3.empty.mod9", "n ≡ " + std::to_string(r) + " mod 9"};
  }
  case 4: {
    if (n == 17 || n == 47)
      return {Player::Two, "F4.empty.exception", "n = " + std::to_string(n) + " exception"};
    if (n == 2 || n == 32)
      return {Player::One, "F4.empty.exception", "n = " + std::to_string(n) + " exception"};
    static constexpr std::array<int, 9> kPlayerOne{1, 3, 5, 7, 8, 10, 12, 14, 15};
    auto r = static_cast<int>(n % 16);
    bool one = std::find(kPlayerOne.begin(), kPlayerOne.end(), r) != kPlayerOne.end();
    return {one ? Player::One : Player::Two, "F4.empty.mod16",
            "n ≡ " + std::to_string(r) + " mod 16"};
  }
  default:
    throw UncoveredError("no closed-form empty-board winner for m=" + std::to_string(black_hole) +
                         "; use the solver");
  }
}

std::string to_string(const StrategyAdvice& advice)
{
  return std::visit([](const auto& a) { return to_string(a); }, advice.action);
}

namespace {

std::optional<Move> f2_move(const GameState& s)
{
  if (classify_f2(s.count(1)).outcome == P)
    return std::nullopt;
  return Move::merge();
}

std::optional<Move> f3_move(const GameState& s)
{
  const auto k1 = s.count(1) % 3, k2 = s.count(2) % 3;
  if (k1 == 2 && (k2 == 0 || k2 == 2))
    return Move::merge();
  if (k1 == 0 && k2 == 2)
    return Move::split(2);
  if ((k1 == 1 && k2 != 0) || (k1 == 2 && k2 == 1))
    return Move::add(1);
  return std::nullopt;
}

std::optional<Move> f4_b0_move(const Coords& x)
{
  const auto al = x.alpha, ga = x.gamma;
  switch (x.k3) {
  case 0:
    if (x.k1 == 0 && al <= ga - 1)
      return Move::split(3);
    if (x.k1 == 2 && al <= ga)
      return Move::merge();
    break;
  case 1:
    if (x.k1 == 0 && al <= ga - 2)
      return Move::split(3);
    if (x.k1 == 2 && al <= ga - 1)
      return Move::merge();
    break;
  case 2:
    if (x.k1 == 0)
      return Move::split(3);
    if (x.k1 == 1 && al >= ga + 1)
      return Move::split(3);
    if (x.k1 == 2)
      return al <= ga - 2 ? Move::merge() : Move::split(3);
    break;
  case 3:
    if (x.k1 == 0)
      return Move::split(3);
    if (x.k1 == 1 && al >= ga)
      return Move::split(3);
    if (x.k1 == 2)
      return al <= ga + 2 ? Move::merge() : Move::split(3);
    break;
  }
  return std::nullopt;
}

std::optional<Move> f4_b1_move(const Coords& x)
{
  const auto al = x.alpha, ga = x.gamma;
  if (x.k1 == 1) {
    switch (x.k3) {
    case 0:
      return al >= ga - 1 ? Move::add(1) : Move::add(2);
    case 3:
      return al >= ga + 1 ? Move::add(1) : Move::add(2);
    default:
      return Move::add(2);
    }
  }
  if (x.k1 == 2) {
    switch (x.k3) {
    case 1:
      return al <= ga ? Move::add(1) : Move::add(2);
    case 2:
      return al <= ga - 1 ? Move::add(1) : Move::add(2);
    default:
      return Move::add(1);
    }
  }
  switch (x.k3) {
  case 0:
    if (al >= ga + 1)
      return Move::add(1);
    break;
  case 1:
    if (al >= ga)
      return Move::add(2);
    break;
  case 2:
    if (al >= ga - 1)
      return Move::add(2);
    break;
  case 3:
    if (al >= ga + 3)
      return Move::add(1);
    break;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Move> prescribed_decomposition_move(const GameState& state, std::string* rule_out)
{
  auto verdict = classify_closed_form(state);
  if (rule_out)
    *rule_out = verdict.rule;
  if (!verdict.covered() || verdict.outcome == P)
    return std::nullopt;

  switch (state.black_hole()) {
  case 2:
    return f2_move(state);
  case 3:
    return f3_move(state);
  default: {
    const Coords x(state);
    return x.b == 0 ? f4_b0_move(x) : f4_b1_move(x);
  }
  }
}

namespace {

// First placement column for Player 1 when Player 1 is the designated winner.
int opening_column(value_t n, int black_hole)
{
  if (black_hole == 3) {
    auto r = n % 9;
    return (r == 2 || r == 3 || r == 6) ? 2 : 1;
  }
  switch (n % 4) {
  case 0:
    return 3;
  case 1:
  case 2:
    return 1;
  default:
    return (n % 16 == 3 || n % 16 == 7) ? 1 : 3;
  }
}

}  // namespace

StrategyAdvice prescribed_placement(const FullState& fs, Player role, value_t n)
{
  if (!fs.placing())
    throw StrategyError("placement phase is over");
  const int m = fs.board.black_hole();
  if (m < 2 || m > 4)
    throw StrategyError("no forcing strategy for m=" + std::to_string(m));
  const auto winner = empty_board_winner(n, m);
  if (role != winner.player)
    throw StrategyError("Player " + std::to_string(to_int(role)) +
                        " has no forcing strategy for n=" + std::to_string(n) + ", m=" +
                        std::to_string(m));

  const std::string prefix = "F" + std::to_string(m) + ".force.";
  auto legal = legal_placements(fs);
  if (m == 2)
    return {legal.front(), "F2.force.single"};

  const int outer = m - 1;
  const auto placed = piece_count(fs.board);
  if (role == Player::One && placed == 0) {
    Placement first{opening_column(n, m)};
    if (!is_legal(fs, first))
      first = Placement{1};
    return {first, prefix + "opening"};
  }
  if (legal.size() == 1)
    return {legal.front(), prefix + "mirror"};

  // Signed offset between the outer columns that the winner maintains.
  long long target = 0;
  if (role == Player::One)
    target = opening_column(n, m) == 1 ? 1 : -1;
  const long long diff = static_cast<long long>(fs.board.count(1)) - fs.board.count(outer);

  if (diff - target == 1)
    return {Placement{outer}, prefix + "mirror"};
  if (diff - target == -1)
    return {Placement{1}, prefix + "mirror"};
  throw StrategyError("board " + columns_string(fs.board) + " left the forced line");
}

}  // namespace bhz
