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

#include "bhz/cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bhz/api.hpp"
#include "bhz/server.hpp"
#include "bhz/verify.hpp"

namespace bhz::cli {

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

std::string join(const std::vector<std::string>& parts, const char* sep)
{
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    out += (i ? sep : "") + parts[i];
  return out;
}

template <typename T>
std::vector<std::string> strings(const std::vector<T>& xs)
{
  std::vector<std::string> out;
  for (const auto& x : xs)
    out.push_back(to_string(x));
  return out;
}

void check_m(int m)
{
  // Builds a board only to reuse its validation and error messages.
  GameState probe(m);
  (void)probe;
}

int do_classify(std::ostream& out, int m, const std::string& text, bool as_json)
{
  auto state = parse_columns(m, text);
  Solver solver(options_from_env());
  if (as_json) {
    out << classify_json(solver, state).dump(2) << '\n';
    return kOk;
  }
  auto verdict = classify_for_play(solver, state);
  auto wins = strings(solver.winning_moves(state));
  out << to_char(verdict.outcome);
  if (is_terminal(state))
    out << "; terminal";
  else if (wins.size() == 1)
    out << "; winning move: " << wins.front();
  else if (!wins.empty())
    out << "; winning moves: " << join(wins, ", ");
  else
    out << "; no winning move";
  out << '\n' << "rule: " << verdict.rule << '\n';
  std::string rule;
  if (auto move = prescribed_decomposition_move(state, &rule))
    out << "prescribed: " << to_string(*move) << '\n';
  return kOk;
}

int do_solve_full(std::ostream& out, int m, value_t n, const std::string& text)
{
  GameState board = text.empty() ? GameState(m) : parse_columns(m, text);
  const auto value = board_value(board);
  if (value > n)
    throw InvalidStateError("board value " + std::to_string(value) + " exceeds n=" +
                            std::to_string(n));
  FullState fs(board, n - value);
  Solver solver(options_from_env());
  auto outcome = solver.outcome(fs);
  out << to_char(outcome) << "; " << to_string(fs) << '\n';
  if (fs.placing()) {
    auto wins = strings(solver.winning_placements(fs));
    out << "winning placements: " << (wins.empty() ? "none" : join(wins, ", ")) << '\n';
  } else if (!is_terminal(fs.board)) {
    auto wins = strings(solver.winning_moves(fs.board));
    out << "winning moves: " << (wins.empty() ? "none" : join(wins, ", ")) << '\n';
  }
  if (piece_count(board) == 0)
    out << "empty-board winner: Player " << (outcome == Outcome::P ? 2 : 1) << '\n';
  return kOk;
}

int do_winner(std::ostream& out, int m, value_t n)
{
  if (n < 1)
    throw InvalidStateError("n must be at least 1");
  if (m >= 2 && m <= 4) {
    auto w = empty_board_winner(n, m);
    out << "Player " << to_int(w.player) << " (" << w.reason << ")\n"
        << "rule: " << w.rule << '\n';
    return kOk;
  }
  check_m(m);
  Solver solver(options_from_env());
  auto outcome = solver.outcome(FullState::start(m, n));
  out << "Player " << (outcome == Outcome::P ? 2 : 1) << " (exhaustive search)\n"
      << "rule: solver\n";
  return kOk;
}

struct TableArgs {
  int m = 4;
  count_t a_max = 45;
  count_t b_max = 0;
  count_t c_max = 60;
  std::vector<count_t> b_values{0};
  std::string format = "csv";
};

int do_table(std::ostream& out, const TableArgs& t)
{
  if (t.m < 2 || t.m > 4)
    throw InvalidStateError("table supports m in {2, 3, 4}");
  Solver solver(options_from_env());

  // One block per b slice (a single block for m = 2, 3).
  std::vector<std::pair<std::vector<count_t>, std::vector<count_t>>> blocks;
  if (t.m == 2)
    blocks.push_back({{0}, {t.a_max}});
  else if (t.m == 3)
    blocks.push_back({{0, 0}, {t.a_max, t.b_max}});
  else
    for (auto b : t.b_values)
      blocks.push_back({{0, b, 0}, {t.a_max, b, t.c_max}});

  if (t.format == "csv") {
    out << csv_header() << '\n';
    for (const auto& [lo, hi] : blocks)
      solver.for_each_in_box(t.m, lo, hi, [&](const TableRow& row) { out << csv_row(row) << '\n'; });
    return kOk;
  }

  // Grid: one line per outer coordinate, F_1 count along the line.
  for (const auto& [lo, hi] : blocks) {
    if (t.m == 4)
      out << "b=" << lo[1] << "  rows c=0.." << t.c_max << ", columns a=0.." << t.a_max << '\n';
    else if (t.m == 3)
      out << "rows b=0.." << t.b_max << ", columns a=0.." << t.a_max << '\n';
    std::string line;
    solver.for_each_in_box(t.m, lo, hi, [&](const TableRow& row) {
      line += to_char(row.outcome);
      if (row.state.count(1) == t.a_max) {
        out << line << '\n';
        line.clear();
      }
    });
  }
  return kOk;
}

int do_verify(std::ostream& out, bool extended, bool as_json)
{
  Solver solver(options_from_env());
  auto reports = run_suite(solver, extended);
  out << (as_json ? format_json(reports) + "\n" : format_text(reports));
  bool ok = std::all_of(reports.begin(), reports.end(),
                        [](const ClaimReport& r) { return r.passed(); });
  return ok ? kOk : kFailed;
}

void show(std::ostream& out, const SessionView& v)
{
  out << "board " << columns_string(v.state.board) << "  black hole F" << v.m;
  if (v.state.placing())
    out << "  left to place " << v.state.remaining;
  out << '\n';
}

int do_play(std::ostream& out, std::istream& in, int m, value_t n, int human)
{
  if (human != 1 && human != 2)
    throw InvalidStateError("--human must be 1 or 2");
  SessionManager sessions(options_from_env());
  auto v = sessions.create(m, n, human == 1 ? Player::One : Player::Two);
  for (const auto& w : v.warnings)
    out << "warning: " << w << '\n';
  std::size_t seen = 0;

  while (true) {
    for (; seen < v.history.size(); ++seen) {
      const auto& h = v.history[seen];
      if (h.actor != v.human)
        out << "engine plays " << h.action << " (" << h.rule << ")\n";
    }
    show(out, v);
    if (v.status == SessionStatus::Finished) {
      out << "Player " << to_int(*v.winner) << (*v.winner == v.human ? " (you)" : " (engine)")
          << " wins\n";
      return kOk;
    }
    out << "your move [" << join(v.legal_actions, " ") << "], 'hint' or 'quit': " << std::flush;
    std::string line;
    if (!std::getline(in, line) || line == "quit") {
      out << "\ngame abandoned\n";
      return kOk;
    }
    line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
    if (line.empty())
      continue;
    if (line == "hint") {
      auto h = sessions.hint(v.id);
      out << "hint: " << h.action << " (" << h.action_rule << "); position is "
          << to_char(*h.outcome) << " (" << h.outcome_rule << ")\n";
      continue;
    }
    try {
      v = sessions.submit(v.id, line);
    } catch (const RejectedActionError& e) {
      out << e.what() << "; legal: " << join(e.legal(), " ") << '\n';
    }
  }
}

int do_serve(std::ostream& out, const std::string& host, int port)
{
  SessionManager sessions(options_from_env());
  Server server(sessions);
  out << "listening on http://" << host << ':' << port << std::endl;
  if (!server.listen(host, port))
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in)
{
  CLI::App app{"Black hole Zeckendorf game solver", "bhz"};
  app.require_subcommand(1);

  int m = 4;
  value_t n = 0;
  std::string state;
  std::string format = "text";
  bool extended = false;
  int human = 1;
  std::string host = "127.0.0.1";
  int port = 8080;
  TableArgs table;

  auto* classify = app.add_subcommand("classify", "P/N status, deciding rule and winning moves");
  classify->add_option("--m", m, "black hole index")->required();
  classify->add_option("--state", state, "column counts a,b,c from F_1 outward")->required();
  classify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* solve_full = app.add_subcommand("solve-full", "exact result including the placement phase");
  solve_full->add_option("--m", m)->required();
  solve_full->add_option("--n", n, "starting total")->required();
  solve_full->add_option("--state", state, "board so far (default empty)");

  auto* winner = app.add_subcommand("winner", "empty-board winner");
  winner->add_option("--m", m)->required();
  winner->add_option("--n", n)->required();

  auto* tbl = app.add_subcommand("table", "outcome table over a box of states");
  tbl->add_option("--m", table.m)->capture_default_str();
  tbl->add_option("--a-max", table.a_max)->capture_default_str();
  tbl->add_option("--b-max", table.b_max, "F_2 bound for m=3")->capture_default_str();
  tbl->add_option("--c-max", table.c_max)->capture_default_str();
  tbl->add_option("--b", table.b_values, "F_2 counts for m=4")->capture_default_str();
  tbl->add_option("--format", table.format)->check(CLI::IsMember({"csv", "grid"}));

  auto* ver = app.add_subcommand("verify", "check every closed form against the solver");
  ver->add_flag("--extended", extended, "strategy simulation up to n=120");
  ver->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* play = app.add_subcommand("play", "play against the engine");
  play->add_option("--m", m)->required();
  play->add_option("--n", n)->required();
  play->add_option("--human", human, "your seat, 1 or 2")->capture_default_str();

  auto* serve = app.add_subcommand("serve", "start the HTTP service");
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*classify)
      return do_classify(out, m, state, format == "json");
    if (*solve_full)
      return do_solve_full(out, m, n, state);
    if (*winner)
      return do_winner(out, m, n);
    if (*tbl)
      return do_table(out, table);
    if (*ver)
      return do_verify(out, extended, format == "json");
    if (*play)
      return do_play(out, in, m, n, human);
    if (*serve)
      return do_serve(out, host, port);
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << " (raise BHZ_NODE_BUDGET to allow more)\n";
    return kBudget;
  } catch (const GameError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace bhz::cli
