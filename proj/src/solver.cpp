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

#include "bhz/solver.hpp"

#include <cstdlib>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace bhz {

BudgetExceededError::BudgetExceededError(std::uint64_t budget)
    : std::runtime_error("solver state budget of " + std::to_string(budget) +
                         " exceeded; instance too large"),
      budget_(budget)
{
}

std::optional<Outcome> MemoTable::find(const FullState& key) const
{
  std::shared_lock lock(mutex_);
  auto it = table_.find(key);
  if (it == table_.end())
    return std::nullopt;
  return it->second;
}

void MemoTable::insert(const FullState& key, Outcome outcome)
{
  std::unique_lock lock(mutex_);
  auto [it, inserted] = table_.emplace(key, outcome);
  if (!inserted && it->second != outcome)
    throw std::logic_error("memo conflict at " + to_string(key));
}

std::size_t MemoTable::size() const
{
  std::shared_lock lock(mutex_);
  return table_.size();
}

SolverOptions options_from_env()
{
  SolverOptions options;
  if (const char* env = std::getenv("BHZ_NODE_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw std::invalid_argument(std::string("bad BHZ_NODE_BUDGET: '") + env + "'");
    options.node_budget = v;
  }
  return options;
}

std::vector<FullState> successors(const FullState& state)
{
  std::vector<FullState> out;
  if (state.placing()) {
    for (const auto& p : legal_placements(state))
      out.push_back(apply_placement(state, p));
  } else {
    for (const auto& m : legal_moves(state.board))
      out.emplace_back(apply_move(state.board, m), 0);
  }
  return out;
}

Solver::Solver(SolverOptions options) : options_(options) {}

Outcome Solver::outcome(const GameState& state)
{
  return search(FullState(state, 0));
}

Outcome Solver::outcome(const FullState& state)
{
  return search(state);
}

Outcome Solver::search(const FullState& root)
{
  if (auto hit = memo_.find(root))
    return *hit;

  struct Frame {
    FullState state;
    std::vector<FullState> children;
    std::size_t next = 0;
  };

  std::vector<Frame> stack;
  std::unordered_set<FullState> on_path;

  auto push = [&](const FullState& s) {
    if (memo_.size() + stack.size() >= options_.node_budget)
      throw BudgetExceededError(options_.node_budget);
    on_path.insert(s);
    stack.push_back({s, successors(s), 0});
  };

  push(root);
  while (!stack.empty()) {
    Frame& top = stack.back();

    std::optional<Outcome> result;
    while (top.next < top.children.size()) {
      auto hit = memo_.find(top.children[top.next]);
      if (!hit)
        break;
      if (*hit == Outcome::P) {
        // one P child is enough
        result = Outcome::N;
        break;
      }
      ++top.next;
    }
    if (!result && top.next == top.children.size())
      result = Outcome::P;

    if (result) {
      memo_.insert(top.state, *result);
      on_path.erase(top.state);
      stack.pop_back();
      continue;
    }

    FullState child = top.children[top.next];
    if (on_path.count(child))
      throw std::logic_error("game graph cycle through " + to_string(child));
    push(child);
  }

  return *memo_.find(root);
}

std::vector<Move> Solver::winning_moves(const GameState& state)
{
  std::vector<Move> out;
  for (const auto& m : legal_moves(state))
    if (outcome(apply_move(state, m)) == Outcome::P)
      out.push_back(m);
  return out;
}

std::vector<Placement> Solver::winning_placements(const FullState& state)
{
  std::vector<Placement> out;
  for (const auto& p : legal_placements(state))
    if (outcome(apply_placement(state, p)) == Outcome::P)
      out.push_back(p);
  return out;
}

void Solver::for_each_in_box(int black_hole, const std::vector<count_t>& lo,
                             const std::vector<count_t>& hi,
                             const std::function<void(const TableRow&)>& sink)
{
  const std::size_t k = static_cast<std::size_t>(black_hole - 1);
  if (lo.size() != k || hi.size() != k)
    throw std::invalid_argument("box dimensions do not match the board");
  for (std::size_t i = 0; i < k; ++i)
    if (lo[i] > hi[i])
      return;

  std::vector<count_t> counts = lo;
  while (true) {
    GameState state(black_hole, counts);
    sink({state, outcome(state)});

    std::size_t i = 0;
    while (i < k && counts[i] == hi[i]) {
      counts[i] = lo[i];
      ++i;
    }
    if (i == k)
      break;
    ++counts[i];
  }
}

std::vector<TableRow> Solver::enumerate_table(int black_hole, count_t a_max, count_t b_max,
                                              count_t c_max)
{
  if (black_hole < 2 || black_hole > 4)
    throw std::invalid_argument("tables cover m in {2, 3, 4}");
  std::vector<count_t> hi{a_max, b_max, c_max};
  hi.resize(black_hole - 1);
  std::vector<TableRow> rows;
  for_each_in_box(black_hole, std::vector<count_t>(hi.size(), 0), hi,
                  [&](const TableRow& row) { rows.push_back(row); });
  return rows;
}

std::string csv_header()
{
  return "m,a,b,c,remaining,outcome";
}

std::string csv_row(const TableRow& row)
{
  if (row.state.columns() > 3)
    throw std::invalid_argument("CSV rows hold at most three columns");
  std::ostringstream out;
  out << row.state.black_hole();
  for (int col = 1; col <= 3; ++col)
    out << ',' << (col <= row.state.columns() ? row.state.count(col) : 0);
  out << ",0," << to_char(row.outcome);
  return out.str();
}

TableRow parse_csv_row(const std::string& line)
{
  std::vector<std::string> fields;
  std::stringstream in(line);
  std::string field;
  while (std::getline(in, field, ','))
    fields.push_back(field);
  if (fields.size() != 6)
    throw InvalidStateError("expected 6 CSV fields in '" + line + "'");

  int m = std::stoi(fields[0]);
  if (m < 2 || m > 4)
    throw InvalidStateError("CSV row m out of range in '" + line + "'");
  std::vector<count_t> counts;
  for (int col = 1; col < m; ++col)
    counts.push_back(static_cast<count_t>(std::stoul(fields[col])));
  for (int col = m; col <= 3; ++col)
    if (std::stoul(fields[col]) != 0)
      throw InvalidStateError("column beyond the black hole is non-zero in '" + line + "'");
  if (fields[5] != "P" && fields[5] != "N")
    throw InvalidStateError("bad outcome in '" + line + "'");
  return {GameState(m, std::move(counts)), fields[5] == "P" ? Outcome::P : Outcome::N};
}

}  // namespace bhz
