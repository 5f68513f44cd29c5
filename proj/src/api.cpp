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

#include "bhz/api.hpp"

#include <cstdio>
#include <random>

namespace bhz {

const char* to_string(SessionStatus status)
{
  switch (status) {
  case SessionStatus::Placing:
    return "placing";
  case SessionStatus::Decomposing:
    return "decomposing";
  case SessionStatus::Finished:
    return "finished";
  }
  return "?";
}

Verdict classify_for_play(Solver& solver, const GameState& state)
{
  auto theory = classify_closed_form(state);
  if (theory.covered())
    return {*theory.outcome, theory.rule};
  return {solver.outcome(state), "solver"};
}

Verdict classify_for_play(Solver& solver, const FullState& state)
{
  if (!state.placing())
    return classify_for_play(solver, state.board);
  const int m = state.board.black_hole();
  if (m <= 4 && piece_count(state.board) == 0) {
    // Player 1 is to move on the empty board.
    auto w = empty_board_winner(state.remaining, m);
    return {w.player == Player::Two ? Outcome::P : Outcome::N, w.rule};
  }
  return {solver.outcome(state), "solver"};
}

StrategyAdvice choose_action(Solver& solver, const FullState& state, Player mover, value_t n)
{
  const int m = state.board.black_hole();
  if (state.placing()) {
    if (m <= 4 && empty_board_winner(n, m).player == mover) {
      try {
        return prescribed_placement(state, mover, n);
      } catch (const StrategyError&) {
      }
    }
    auto wins = solver.winning_placements(state);
    if (!wins.empty())
      return {wins.front(), "solver"};
    return {legal_placements(state).front(), "canonical-first"};
  }

  auto legal = legal_moves(state.board);
  if (legal.empty())
    throw IllegalActionError("no moves from terminal state " + to_string(state.board));
  std::string rule;
  if (auto move = prescribed_decomposition_move(state.board, &rule))
    return {*move, rule};
  if (rule == kUncovered) {
    auto wins = solver.winning_moves(state.board);
    if (!wins.empty())
      return {wins.front(), "solver"};
  }
  return {legal.front(), "canonical-first"};
}

struct SessionManager::Session {
  struct Data {
    std::string id;
    int m;
    value_t n;
    Player human;
    FullState state;
    Player turn = Player::One;
    SessionStatus status = SessionStatus::Placing;
    std::optional<Player> winner{};
    std::vector<HistoryEntry> history{};
    std::vector<std::string> warnings{};
  };

  mutable std::mutex mutex;
  Data data;

  explicit Session(Data d) : data(std::move(d)) {}
};

namespace {

std::vector<std::string> legal_action_strings(const FullState& fs)
{
  std::vector<std::string> out;
  if (fs.placing()) {
    for (const auto& p : legal_placements(fs))
      out.push_back(to_string(p));
  } else {
    for (const auto& m : legal_moves(fs.board))
      out.push_back(to_string(m));
  }
  return out;
}

template <typename D>
void apply_action(D& d, const std::string& text, Player actor, std::string rule)
{
  if (d.status == SessionStatus::Finished)
    throw NotYourTurnError("game is finished");
  auto legal = legal_action_strings(d.state);
  auto reject = [&](const std::string& why) {
    throw RejectedActionError(why, legal);
  };

  std::string canonical;
  try {
    if (d.state.placing()) {
      auto p = parse_placement(text);
      if (!is_legal(d.state, p))
        reject("illegal placement " + to_string(p) + " with " + std::to_string(d.state.remaining) +
               " left to place");
      d.state = apply_placement(d.state, p);
      canonical = to_string(p);
    } else {
      auto mv = parse_move(text);
      if (!is_legal(d.state.board, mv))
        reject("illegal move " + to_string(mv) + " in " + columns_string(d.state.board));
      d.state = FullState(apply_move(d.state.board, mv), 0);
      canonical = to_string(mv);
    }
  } catch (const InvalidStateError& e) {
    reject(e.what());
  }

  d.history.push_back({actor, canonical, to_string(d.state), std::move(rule)});
  d.turn = other(actor);
  if (d.state.placing()) {
    d.status = SessionStatus::Placing;
  } else if (is_terminal(d.state.board)) {
    // Last player to move wins.
    d.status = SessionStatus::Finished;
    d.winner = actor;
  } else {
    d.status = SessionStatus::Decomposing;
  }
}

template <typename D>
void engine_turns(Solver& solver, D& d)
{
  while (d.status != SessionStatus::Finished && d.turn != d.human) {
    auto advice = choose_action(solver, d.state, d.turn, d.n);
    apply_action(d, to_string(advice), d.turn, advice.rule);
  }
}

template <typename D>
SessionView view_of(const D& d)
{
  SessionView v;
  v.id = d.id;
  v.m = d.m;
  v.n = d.n;
  v.state = d.state;
  v.turn = d.turn;
  v.human = d.human;
  v.status = d.status;
  v.winner = d.winner;
  v.history = d.history;
  v.warnings = d.warnings;
  if (d.status != SessionStatus::Finished)
    v.legal_actions = legal_action_strings(d.state);
  return v;
}

}  // namespace

SessionManager::SessionManager(SolverOptions options) : solver_(options) {}

SessionManager::~SessionManager() = default;

std::string SessionManager::fresh_id()
{
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

SessionView SessionManager::create(int m, value_t n, Player human)
{
  if (m == 1)
    throw InvalidStateError("F1 black hole not playable");
  if (m < 2 || m > 5)
    throw InvalidStateError("m must be in {2, 3, 4} (or 5 in solver-only mode), got " +
                            std::to_string(m));
  if (n < 1)
    throw InvalidStateError("n must be at least 1");

  Session::Data d{fresh_id(), m, n, human, FullState::start(m, n)};
  if (m == 5)
    d.warnings.push_back("m=5 has no closed forms; the engine uses the solver alone and may hit "
                         "the node budget for large n");
  engine_turns(solver_, d);

  auto view = view_of(d);
  std::unique_lock lock(mutex_);
  while (sessions_.count(d.id))
    d.id = view.id = fresh_id();
  std::string id = d.id;
  sessions_.emplace(std::move(id), std::make_shared<Session>(std::move(d)));
  return view;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const
{
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end())
    throw UnknownSessionError("no session '" + id + "'");
  return it->second;
}

SessionView SessionManager::get(const std::string& id) const
{
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return view_of(s->data);
}

SessionView SessionManager::submit(const std::string& id, const std::string& action)
{
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  if (s->data.status == SessionStatus::Finished)
    throw NotYourTurnError("game is finished");
  if (s->data.turn != s->data.human)
    throw NotYourTurnError("it is not the human's turn");

  // Work on a copy so a failed engine reply leaves the session untouched.
  auto d = s->data;
  apply_action(d, action, d.human, "human");
  engine_turns(solver_, d);
  s->data = std::move(d);
  return view_of(s->data);
}

Hint SessionManager::hint(const std::string& id)
{
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  const auto& d = s->data;
  Hint h;
  h.status = d.status;
  if (d.status == SessionStatus::Finished)
    return h;
  auto advice = choose_action(solver_, d.state, d.turn, d.n);
  h.action = to_string(advice);
  h.action_rule = advice.rule;
  auto verdict = classify_for_play(solver_, d.state);
  h.outcome = verdict.outcome;
  h.outcome_rule = verdict.rule;
  return h;
}

std::size_t SessionManager::size() const
{
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

}  // namespace bhz
