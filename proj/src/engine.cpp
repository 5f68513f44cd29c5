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

#include "bhz/engine.hpp"

#include <array>
#include <charconv>
#include <limits>
#include <sstream>

namespace bhz {

namespace {

std::array<value_t, kMaxColumn + 1> make_weights()
{
  std::array<value_t, kMaxColumn + 1> w{};
  w[1] = 1;
  w[2] = 2;
  for (int i = 3; i <= kMaxColumn; ++i)
    w[i] = w[i - 1] + w[i - 2];
  return w;
}

const std::array<value_t, kMaxColumn + 1> kWeights = make_weights();

void check_black_hole(int black_hole)
{
  if (black_hole == 1)
    throw InvalidStateError("F1 black hole not playable");
  if (black_hole < 2 || black_hole > kMaxColumn)
    throw InvalidStateError("black hole index must be in [2, " + std::to_string(kMaxColumn) +
                            "], got " + std::to_string(black_hole));
}

// Adds one piece to column col, or drops it into the black hole.
void deposit(std::vector<count_t>& counts, int col)
{
  if (col <= static_cast<int>(counts.size()))
    ++counts[col - 1];
}

template <typename T>
T parse_number(std::string_view text, const char* what)
{
  T value{};
  auto first = text.data();
  auto last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty())
    throw InvalidStateError(std::string("cannot parse ") + what + ": '" + std::string(text) + "'");
  return value;
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

std::vector<count_t> parse_count_list(std::string_view text)
{
  std::vector<count_t> counts;
  text = trim(text);
  if (!text.empty() && text.front() == '(' && text.back() == ')')
    text = text.substr(1, text.size() - 2);
  while (true) {
    auto comma = text.find(',');
    counts.push_back(parse_number<count_t>(trim(text.substr(0, comma)), "column count"));
    if (comma == std::string_view::npos)
      break;
    text.remove_prefix(comma + 1);
  }
  return counts;
}

void hash_combine(std::size_t& seed, std::uint64_t v)
{
  seed ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

value_t fibonacci_weight(int column)
{
  if (column < 1 || column > kMaxColumn)
    throw std::out_of_range("column index out of range: " + std::to_string(column));
  return kWeights[column];
}

GameState::GameState(int black_hole) : black_hole_(black_hole)
{
  check_black_hole(black_hole);
  counts_.assign(black_hole - 1, 0);
}

GameState::GameState(int black_hole, std::vector<count_t> counts)
    : black_hole_(black_hole), counts_(std::move(counts))
{
  check_black_hole(black_hole);
  if (static_cast<int>(counts_.size()) != black_hole - 1)
    throw InvalidStateError("expected " + std::to_string(black_hole - 1) + " columns for m=" +
                            std::to_string(black_hole) + ", got " + std::to_string(counts_.size()));
}

count_t GameState::count(int column) const
{
  if (column < 1 || column > columns())
    throw std::out_of_range("no column F" + std::to_string(column) + " on this board");
  return counts_[column - 1];
}

GameState GameState::with_count(int column, count_t value) const
{
  auto counts = counts_;
  if (column < 1 || column > columns())
    throw std::out_of_range("no column F" + std::to_string(column) + " on this board");
  counts[column - 1] = value;
  return GameState(black_hole_, std::move(counts));
}

bool is_legal(const GameState& state, const Move& move)
{
  const int k = state.columns();
  auto c = state.counts();
  switch (move.kind) {
  case Move::Kind::Merge:
    return move.column == 1 && c[0] >= 2;
  case Move::Kind::Add:
    return move.column >= 1 && move.column + 1 <= k && c[move.column - 1] >= 1 && c[move.column] >= 1;
  case Move::Kind::Split:
    return move.column >= 2 && move.column <= k && c[move.column - 1] >= 2;
  }
  return false;
}

std::vector<Move> legal_moves(const GameState& state)
{
  std::vector<Move> moves;
  const int k = state.columns();
  auto c = state.counts();
  if (c[0] >= 2)
    moves.push_back(Move::merge());
  for (int i = 1; i + 1 <= k; ++i)
    if (c[i - 1] >= 1 && c[i] >= 1)
      moves.push_back(Move::add(i));
  for (int i = 2; i <= k; ++i)
    if (c[i - 1] >= 2)
      moves.push_back(Move::split(i));
  return moves;
}

GameState apply_move(const GameState& state, const Move& move)
{
  if (!is_legal(state, move))
    throw IllegalActionError("illegal move " + to_string(move) + " in " + to_string(state));

  std::vector<count_t> c(state.counts().begin(), state.counts().end());
  switch (move.kind) {
  case Move::Kind::Merge:
    c[0] -= 2;
    deposit(c, 2);
    break;
  case Move::Kind::Add:
    c[move.column - 1] -= 1;
    c[move.column] -= 1;
    deposit(c, move.column + 2);
    break;
  case Move::Kind::Split:
    c[move.column - 1] -= 2;
    deposit(c, move.column == 2 ? 1 : move.column - 2);
    deposit(c, move.column + 1);
    break;
  }
  return GameState(state.black_hole(), std::move(c));
}

bool is_terminal(const GameState& state)
{
  auto c = state.counts();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= 2)
      return false;
    if (i + 1 < c.size() && c[i] >= 1 && c[i + 1] >= 1)
      return false;
  }
  return true;
}

value_t board_value(const GameState& state)
{
  value_t total = 0;
  auto c = state.counts();
  for (std::size_t i = 0; i < c.size(); ++i)
    total += static_cast<value_t>(c[i]) * kWeights[i + 1];
  return total;
}

value_t piece_count(const GameState& state)
{
  value_t total = 0;
  for (auto v : state.counts())
    total += v;
  return total;
}

value_t column_index_sum(const GameState& state)
{
  value_t total = 0;
  auto c = state.counts();
  for (std::size_t i = 0; i < c.size(); ++i)
    total += static_cast<value_t>(c[i]) * (i + 1);
  return total;
}

std::array<value_t, 3> progress_measure(const GameState& state)
{
  value_t f2 = state.columns() >= 2 ? state.count(2) : 0;
  return {piece_count(state), column_index_sum(state), f2};
}

GameState zeckendorf_decomposition(value_t n, int black_hole)
{
  check_black_hole(black_hole);
  if (n >= kWeights[black_hole])
    throw std::invalid_argument("value " + std::to_string(n) + " is not below F_" +
                                std::to_string(black_hole) + " = " +
                                std::to_string(kWeights[black_hole]));
  std::vector<count_t> counts(black_hole - 1, 0);
  for (int col = black_hole - 1; col >= 1 && n > 0; --col) {
    if (kWeights[col] <= n) {
      counts[col - 1] = 1;
      n -= kWeights[col];
    }
  }
  return GameState(black_hole, std::move(counts));
}

bool is_legal(const FullState& state, const Placement& placement)
{
  if (state.remaining == 0)
    return false;
  const int outer = state.board.columns();
  if (placement.column != 1 && placement.column != outer)
    return false;
  return kWeights[placement.column] <= state.remaining;
}

std::vector<Placement> legal_placements(const FullState& state)
{
  if (state.remaining == 0)
    throw IllegalActionError("no pieces left to place");
  std::vector<Placement> out{{1}};
  const int outer = state.board.columns();
  if (outer >= 2 && kWeights[outer] <= state.remaining)
    out.push_back({outer});
  return out;
}

FullState apply_placement(const FullState& state, const Placement& placement)
{
  if (!is_legal(state, placement))
    throw IllegalActionError("illegal placement " + to_string(placement) + " in " +
                             to_string(state));
  return {state.board.with_count(placement.column, state.board.count(placement.column) + 1),
          state.remaining - kWeights[placement.column]};
}

std::string to_string(const Move& move)
{
  switch (move.kind) {
  case Move::Kind::Merge:
    return "M";
  case Move::Kind::Add:
    return "A" + std::to_string(move.column);
  case Move::Kind::Split:
    return "S" + std::to_string(move.column);
  }
  return "?";
}

std::string to_string(const Placement& placement)
{
  return "P" + std::to_string(placement.column);
}

std::string to_string(const GameState& state)
{
  std::ostringstream out;
  out << "m=" << state.black_hole() << ";counts=";
  auto c = state.counts();
  for (std::size_t i = 0; i < c.size(); ++i)
    out << (i ? "," : "") << c[i];
  return out.str();
}

std::string to_string(const FullState& state)
{
  return to_string(state.board) + ";remaining=" + std::to_string(state.remaining);
}

std::string columns_string(const GameState& state)
{
  std::ostringstream out;
  out << '(';
  auto c = state.counts();
  for (std::size_t i = 0; i < c.size(); ++i)
    out << (i ? "," : "") << c[i];
  out << ')';
  return out.str();
}

Move parse_move(std::string_view text)
{
  text = trim(text);
  if (text == "M")
    return Move::merge();
  if (text.size() >= 2 && (text[0] == 'A' || text[0] == 'S')) {
    int col = parse_number<int>(text.substr(1), "move column");
    return text[0] == 'A' ? Move::add(col) : Move::split(col);
  }
  throw InvalidStateError("cannot parse move: '" + std::string(text) + "'");
}

Placement parse_placement(std::string_view text)
{
  text = trim(text);
  if (text.size() >= 2 && text[0] == 'P')
    return {parse_number<int>(text.substr(1), "placement column")};
  throw InvalidStateError("cannot parse placement: '" + std::string(text) + "'");
}

GameState parse_state(std::string_view text)
{
  text = trim(text);
  constexpr std::string_view m_prefix = "m=";
  constexpr std::string_view counts_prefix = "counts=";
  auto semi = text.find(';');
  if (text.substr(0, m_prefix.size()) != m_prefix || semi == std::string_view::npos)
    throw InvalidStateError("expected 'm=<int>;counts=<c1,c2,...>', got '" + std::string(text) + "'");
  int m = parse_number<int>(text.substr(m_prefix.size(), semi - m_prefix.size()), "m");
  auto rest = text.substr(semi + 1);
  if (rest.substr(0, counts_prefix.size()) != counts_prefix)
    throw InvalidStateError("expected 'counts=' after ';' in '" + std::string(text) + "'");
  return GameState(m, parse_count_list(rest.substr(counts_prefix.size())));
}

GameState parse_columns(int black_hole, std::string_view text)
{
  return GameState(black_hole, parse_count_list(text));
}

std::size_t StateHash::operator()(const GameState& state) const noexcept
{
  std::size_t seed = static_cast<std::size_t>(state.black_hole());
  for (auto v : state.counts())
    hash_combine(seed, v);
  return seed;
}

std::size_t StateHash::operator()(const FullState& state) const noexcept
{
  std::size_t seed = (*this)(state.board);
  hash_combine(seed, state.remaining);
  return seed;
}

}  // namespace bhz
