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

#include "bhz/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace bhz {

const Mismatch* ClaimReport::minimal_counterexample() const
{
  if (mismatches.empty())
    return nullptr;
  return &*std::min_element(mismatches.begin(), mismatches.end(),
                            [](const Mismatch& x, const Mismatch& y) { return x.size < y.size; });
}

namespace {

class Timer {
public:
  explicit Timer(ClaimReport& report) : report_(report) {}
  ~Timer()
  {
    report_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  ClaimReport& report_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Calls f on every state of the box, column 1 varying fastest.
template <typename F>
void for_each_state(int m, const Box& box, const std::vector<count_t>& b_values, F&& f)
{
  switch (m) {
  case 2:
    for (count_t a = 0; a <= box.a_max; ++a)
      f(GameState(2, {a}));
    break;
  case 3:
    for (count_t b = 0; b <= box.b_max; ++b)
      for (count_t a = 0; a <= box.a_max; ++a)
        f(GameState(3, {a, b}));
    break;
  case 4:
    for (count_t b : b_values)
      for (count_t c = 0; c <= box.c_max; ++c)
        for (count_t a = 0; a <= box.a_max; ++a)
          f(GameState(4, {a, b, c}));
    break;
  default:
    throw std::invalid_argument("closed-form boxes exist for m in {2, 3, 4}");
  }
}

std::string box_suffix(int m, const std::vector<count_t>& b_values)
{
  std::string s = "F" + std::to_string(m);
  if (m == 4) {
    s += ".b";
    for (std::size_t i = 0; i < b_values.size(); ++i)
      s += (i ? "," : "") + std::to_string(b_values[i]);
  }
  return s;
}

void add_mismatch(ClaimReport& r, const GameState& s, std::string detail)
{
  r.mismatches.push_back({columns_string(s), std::move(detail), board_value(s)});
}

}  // namespace

ClaimReport crosscheck_range(Solver& solver, int black_hole, const Box& box,
                             const std::vector<count_t>& b_values)
{
  ClaimReport r{.claim = box_suffix(black_hole, b_values) + ".crosscheck"};
  Timer t(r);
  for_each_state(black_hole, box, b_values, [&](const GameState& s) {
    auto theory = classify_closed_form(s);
    if (!theory.covered())
      return;
    ++r.instances;
    auto exact = solver.outcome(s);
    if (*theory.outcome != exact)
      add_mismatch(r, s,
                   std::string("theory ") + to_char(*theory.outcome) + " by " + theory.rule +
                       ", solver " + to_char(exact));
  });
  return r;
}

ClaimReport check_rule_agreement(const Box& box, const std::vector<count_t>& b_values)
{
  ClaimReport r{.claim = box_suffix(4, b_values) + ".rule-agreement"};
  Timer t(r);
  for_each_state(4, box, b_values, [&](const GameState& s) {
    auto rules = applicable_f4_rules(s);
    ++r.instances;
    for (const auto& rule : rules)
      if (rule.outcome != rules.front().outcome)
        add_mismatch(r, s, rules.front().rule + " disagrees with " + rule.rule);
  });
  return r;
}

ClaimReport check_constructive(Solver& solver, int black_hole, const Box& box,
                               const std::vector<count_t>& b_values)
{
  ClaimReport r{.claim = box_suffix(black_hole, b_values) + ".constructive"};
  Timer t(r);
  for_each_state(black_hole, box, b_values, [&](const GameState& s) {
    auto theory = classify_closed_form(s);
    if (!theory.covered() || theory.outcome != Outcome::N)
      return;
    ++r.instances;
    auto move = prescribed_decomposition_move(s);
    if (!move) {
      add_mismatch(r, s, "no prescribed move from N position (" + theory.rule + ")");
      return;
    }
    if (!is_legal(s, *move)) {
      add_mismatch(r, s, "prescribed " + to_string(*move) + " is illegal");
      return;
    }
    auto next = apply_move(s, *move);
    if (solver.outcome(next) != Outcome::P)
      add_mismatch(r, s, "prescribed " + to_string(*move) + " reaches N position " +
                             columns_string(next));
  });
  return r;
}

ClaimReport check_empty_board(Solver& solver, int black_hole, value_t n_max)
{
  ClaimReport r{.claim = "F" + std::to_string(black_hole) + ".empty-board"};
  Timer t(r);
  for (value_t n = 1; n <= n_max; ++n) {
    ++r.instances;
    auto theory = empty_board_winner(n, black_hole);
    // Player 2 wins exactly when the opening position is P.
    auto exact = solver.outcome(FullState::start(black_hole, n)) == Outcome::P ? Player::Two
                                                                                : Player::One;
    if (theory.player != exact)
      r.mismatches.push_back({"n=" + std::to_string(n),
                              "theory Player " + std::to_string(to_int(theory.player)) + " (" +
                                  theory.rule + "), solver Player " +
                                  std::to_string(to_int(exact)),
                              n});
  }
  return r;
}

namespace {

class StrategySimulation {
public:
  StrategySimulation(Solver& solver, value_t n, int m, ClaimReport& report)
      : solver_(solver), n_(n), report_(report), winner_(empty_board_winner(n, m).player)
  {
  }

  bool run(int m) { return winner_wins(FullState::start(m, n_), winner_ == Player::One); }
  std::uint64_t fallbacks() const { return fallbacks_; }

private:
  struct Key {
    FullState state;
    bool winner_to_move;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept
    {
      return StateHash{}(k.state) * 2 + (k.winner_to_move ? 1 : 0);
    }
  };

  void fail(const FullState& fs, std::string why)
  {
    if (report_.mismatches.size() < 8)
      report_.mismatches.push_back({"n=" + std::to_string(n_) + " at " + to_string(fs),
                                    std::move(why), n_});
  }

  // nullopt when the winner has nothing sound to play.
  std::optional<FullState> winner_step(const FullState& fs)
  {
    if (fs.placing()) {
      try {
        auto advice = prescribed_placement(fs, winner_, n_);
        return apply_placement(fs, std::get<Placement>(advice.action));
      } catch (const StrategyError&) {
        ++fallbacks_;
      }
      auto wins = solver_.winning_placements(fs);
      if (wins.empty())
        return std::nullopt;
      return apply_placement(fs, wins.front());
    }
    std::string rule;
    auto move = prescribed_decomposition_move(fs.board, &rule);
    if (!move && rule == kUncovered) {
      ++fallbacks_;
      auto wins = solver_.winning_moves(fs.board);
      if (!wins.empty())
        move = wins.front();
    }
    if (!move)
      return std::nullopt;
    return FullState(apply_move(fs.board, *move), 0);
  }

  bool winner_wins(const FullState& fs, bool winner_to_move)
  {
    Key key{fs, winner_to_move};
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;

    bool result;
    if (!fs.placing() && is_terminal(fs.board)) {
      // The player who cannot move loses.
      result = !winner_to_move;
    } else if (winner_to_move) {
      auto next = winner_step(fs);
      result = next && winner_wins(*next, false);
      if (!next)
        fail(fs, "designated winner has no winning action");
    } else {
      result = true;
      for (const auto& child : successors(fs))
        if (!winner_wins(child, true)) {
          result = false;
          break;
        }
    }
    memo_.emplace(key, result);
    return result;
  }

  Solver& solver_;
  value_t n_;
  ClaimReport& report_;
  Player winner_;
  std::uint64_t fallbacks_ = 0;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

}  // namespace

ClaimReport simulate_strategy_exhaustive(Solver& solver, value_t n, int black_hole)
{
  ClaimReport r{.claim = "F" + std::to_string(black_hole) + ".forcing.n" + std::to_string(n)};
  Timer t(r);
  ++r.instances;
  StrategySimulation sim(solver, n, black_hole, r);
  if (!sim.run(black_hole) && r.mismatches.empty())
    r.mismatches.push_back({"n=" + std::to_string(n), "adversary line defeats the strategy", n});
  r.solver_fallbacks = sim.fallbacks();
  return r;
}

ClaimReport simulate_strategies(Solver& solver, int black_hole, value_t n_max)
{
  ClaimReport r{.claim = "F" + std::to_string(black_hole) + ".forcing"};
  Timer t(r);
  for (value_t n = 1; n <= n_max; ++n) {
    auto one = simulate_strategy_exhaustive(solver, n, black_hole);
    r.instances += one.instances;
    r.solver_fallbacks += one.solver_fallbacks;
    for (auto& mm : one.mismatches)
      r.mismatches.push_back(std::move(mm));
  }
  return r;
}

namespace {

struct FixtureEdge {
  std::vector<count_t> from;
  const char* move;
  std::vector<count_t> to;
};

// Base-case game trees for m = 4, edge by edge.
const std::vector<FixtureEdge>& base_case_edges()
{
  static const std::vector<FixtureEdge> edges{
      // (a,0,0)
      {{2, 0, 0}, "M", {0, 1, 0}},
      {{3, 0, 0}, "M", {1, 1, 0}},
      {{1, 1, 0}, "A1", {0, 0, 1}},
      {{4, 0, 0}, "M", {2, 1, 0}},
      {{2, 1, 0}, "A1", {1, 0, 1}},
      {{5, 0, 0}, "M", {3, 1, 0}},
      {{3, 1, 0}, "A1", {2, 0, 1}},
      {{2, 0, 1}, "M", {0, 1, 1}},
      {{0, 1, 1}, "A2", {0, 0, 0}},
      {{7, 0, 0}, "M", {5, 1, 0}},
      {{5, 1, 0}, "A1", {4, 0, 1}},
      {{4, 0, 1}, "M", {2, 1, 1}},
      {{2, 1, 1}, "A1", {1, 0, 2}},
      {{1, 0, 2}, "S3", {2, 0, 0}},
      {{2, 0, 0}, "M", {0, 1, 0}},
      // (1,0,c)
      {{1, 0, 2}, "S3", {2, 0, 0}},
      {{1, 0, 3}, "S3", {2, 0, 1}},
      {{2, 0, 1}, "M", {0, 1, 1}},
      {{0, 1, 1}, "A2", {0, 0, 0}},
      {{1, 0, 4}, "S3", {2, 0, 2}},
      {{2, 0, 2}, "S3", {3, 0, 0}},
      {{3, 0, 0}, "M", {1, 1, 0}},
      {{1, 1, 0}, "A1", {0, 0, 1}},
      {{1, 0, 8}, "S3", {2, 0, 6}},
      {{2, 0, 6}, "S3", {3, 0, 4}},
      {{3, 0, 4}, "M", {1, 1, 4}},
      {{1, 1, 4}, "A1", {0, 0, 5}},
      {{3, 0, 4}, "S3", {4, 0, 2}},
      {{4, 0, 2}, "S3", {5, 0, 0}},
      // b = 1 exception states
      {{4, 1, 3}, "A1", {3, 0, 4}},
      {{3, 0, 4}, "S3", {4, 0, 2}},
      {{3, 0, 4}, "M", {1, 1, 4}},
      {{4, 0, 2}, "S3", {5, 0, 0}},
      {{1, 1, 4}, "A1", {0, 0, 5}},
      {{7, 1, 2}, "A2", {7, 0, 1}},
      {{10, 1, 1}, "A2", {10, 0, 0}},
      {{13, 1, 0}, "A1", {12, 0, 1}},
      {{2, 1, 2}, "A2", {2, 0, 1}},
      {{5, 1, 1}, "A2", {5, 0, 0}},
      {{8, 1, 0}, "A1", {7, 0, 1}},
  };
  return edges;
}

struct FixtureClass {
  std::vector<count_t> state;
  Outcome outcome;
};

const std::vector<FixtureClass>& fixture_classes()
{
  using O = Outcome;
  static const std::vector<FixtureClass> fixtures{
      {{1, 0, 0}, O::P},  {{3, 0, 0}, O::P},  {{4, 0, 0}, O::P},  {{5, 0, 0}, O::P},
      {{7, 0, 0}, O::P},  {{2, 0, 0}, O::N},  {{1, 0, 0}, O::P},  {{1, 0, 1}, O::P},
      {{1, 0, 2}, O::P},  {{1, 0, 4}, O::P},  {{1, 0, 8}, O::P},  {{1, 0, 3}, O::N},
      {{4, 1, 3}, O::N},  {{7, 1, 2}, O::N},  {{10, 1, 1}, O::N}, {{13, 1, 0}, O::N},
      {{2, 1, 2}, O::N},  {{5, 1, 1}, O::N},  {{8, 1, 0}, O::N},  {{1, 1, 4}, O::N},
      // Targets the trees rely on.
      {{0, 0, 5}, O::P},  {{7, 0, 1}, O::P},  {{12, 0, 1}, O::P}, {{2, 0, 1}, O::P},
      {{10, 0, 0}, O::P}, {{0, 1, 0}, O::P},
  };
  return fixtures;
}

}  // namespace

ClaimReport verify_fixtures(Solver& solver)
{
  ClaimReport r{.claim = "F4.fixtures"};
  Timer t(r);
  for (const auto& e : base_case_edges()) {
    ++r.instances;
    GameState from(4, e.from);
    GameState to(4, e.to);
    Move move = parse_move(e.move);
    if (!is_legal(from, move)) {
      add_mismatch(r, from, std::string("edge ") + e.move + " is illegal");
      continue;
    }
    auto reached = apply_move(from, move);
    if (reached != to)
      add_mismatch(r, from, std::string("edge ") + e.move + " reaches " + columns_string(reached) +
                                ", transcribed " + columns_string(to));
  }
  for (const auto& f : fixture_classes()) {
    ++r.instances;
    GameState s(4, f.state);
    auto exact = solver.outcome(s);
    if (exact != f.outcome)
      add_mismatch(r, s, std::string("expected ") + to_char(f.outcome) + ", solver " +
                             to_char(exact));
  }
  return r;
}

ClaimReport random_playouts(std::uint64_t games, std::uint64_t seed, value_t n_max)
{
  ClaimReport r{.claim = "playouts"};
  Timer t(r);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_m(2, 5);
  std::uniform_int_distribution<value_t> pick_n(1, n_max);

  auto choose = [&](std::size_t k) {
    return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
  };

  for (std::uint64_t g = 0; g < games; ++g) {
    ++r.instances;
    const int m = pick_m(rng);
    const value_t n = pick_n(rng);
    const value_t fm = fibonacci_weight(m);
    auto bad = [&](const std::string& at, const std::string& why) {
      r.mismatches.push_back({"m=" + std::to_string(m) + ",n=" + std::to_string(n) + " at " + at,
                              why, n});
    };

    FullState fs = FullState::start(m, n);
    while (fs.placing()) {
      auto options = legal_placements(fs);
      fs = apply_placement(fs, options[choose(options.size())]);
    }
    if (board_value(fs.board) != n) {
      bad(to_string(fs), "placement phase ended off the target total");
      continue;
    }

    GameState s = fs.board;
    bool ok = true;
    while (ok && !is_terminal(s)) {
      auto moves = legal_moves(s);
      const Move mv = moves[choose(moves.size())];
      GameState next = apply_move(s, mv);
      auto before = progress_measure(s);
      auto after = progress_measure(next);
      bool pair_tie = after[0] == before[0] && after[1] == before[1];
      if (!(after < before)) {
        bad(to_string(s), to_string(mv) + " did not lower the progress measure");
        ok = false;
      } else if (pair_tie && mv != Move::split(2)) {
        bad(to_string(s), to_string(mv) + " left (pieces, index sum) unchanged");
        ok = false;
      } else if (board_value(next) % fm != board_value(s) % fm) {
        bad(to_string(s), to_string(mv) + " changed the value mod F_m");
        ok = false;
      }
      s = std::move(next);
    }
    if (ok && s != zeckendorf_decomposition(n % fm, m))
      bad(to_string(s), "terminal board is not the decomposition of n mod F_m");
  }
  return r;
}

std::vector<ClaimReport> run_suite(Solver& solver, bool extended)
{
  std::vector<ClaimReport> out;
  out.push_back(crosscheck_range(solver, 2, {1000, 0, 0}));
  out.push_back(crosscheck_range(solver, 3, {60, 60, 0}));
  out.push_back(crosscheck_range(solver, 4, {45, 0, 60}, {0}));
  out.push_back(crosscheck_range(solver, 4, {45, 0, 60}, {1}));
  out.push_back(check_rule_agreement({45, 0, 60}, {0, 1}));
  out.push_back(check_empty_board(solver, 2, 120));
  out.push_back(check_empty_board(solver, 3, 200));
  out.push_back(check_empty_board(solver, 4, 120));
  out.push_back(check_constructive(solver, 2, {1000, 0, 0}));
  out.push_back(check_constructive(solver, 3, {60, 60, 0}));
  out.push_back(check_constructive(solver, 4, {45, 0, 60}, {0, 1}));
  const value_t n_max = extended ? 120 : 60;
  out.push_back(simulate_strategies(solver, 3, n_max));
  out.push_back(simulate_strategies(solver, 4, n_max));
  out.push_back(random_playouts(10000, 20240607));
  out.push_back(verify_fixtures(solver));
  return out;
}

std::string format_text(const std::vector<ClaimReport>& reports)
{
  std::ostringstream out;
  for (const auto& r : reports) {
    out << (r.passed() ? "PASS " : "FAIL ") << r.claim << "  instances=" << r.instances
        << "  mismatches=" << r.mismatches.size();
    if (r.solver_fallbacks)
      out << "  solver-fallbacks=" << r.solver_fallbacks;
    out << "  time=" << r.seconds << "s\n";
    if (const auto* m = r.minimal_counterexample())
      out << "    smallest counterexample: " << m->state << ": " << m->detail << '\n';
  }
  return out.str();
}

std::string format_json(const std::vector<ClaimReport>& reports)
{
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json mm = nlohmann::json::array();
    for (const auto& m : r.mismatches)
      mm.push_back({{"state", m.state}, {"detail", m.detail}});
    arr.push_back({{"claim", r.claim},
                   {"instances", r.instances},
                   {"mismatches", mm},
                   {"status", r.passed() ? "pass" : "fail"},
                   {"solver_fallbacks", r.solver_fallbacks},
                   {"seconds", r.seconds}});
  }
  return arr.dump(2);
}

}  // namespace bhz
