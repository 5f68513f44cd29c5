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

#include "bhz/server.hpp"

#include <httplib.h>

namespace bhz {

using nlohmann::json;

json to_json(const FullState& state)
{
  json counts = json::array();
  for (auto c : state.board.counts())
    counts.push_back(c);
  return {{"m", state.board.black_hole()},
          {"counts", counts},
          {"remaining", state.remaining},
          {"value", board_value(state.board)},
          {"canonical", to_string(state)}};
}

json to_json(const SessionView& v)
{
  json history = json::array();
  for (const auto& h : v.history)
    history.push_back(
        {{"actor", to_int(h.actor)}, {"action", h.action}, {"state", h.state}, {"rule", h.rule}});
  return {{"id", v.id},
          {"m", v.m},
          {"n", v.n},
          {"state", to_json(v.state)},
          {"turn", to_int(v.turn)},
          {"human_role", to_int(v.human)},
          {"status", to_string(v.status)},
          {"winner", v.winner ? json(to_int(*v.winner)) : json(nullptr)},
          {"history", history},
          {"legal_actions", v.legal_actions},
          {"warnings", v.warnings}};
}

json to_json(const Hint& h)
{
  json out{{"status", to_string(h.status)}};
  if (h.action.empty()) {
    out["action"] = nullptr;
    return out;
  }
  out["action"] = h.action;
  out["action_rule"] = h.action_rule;
  out["outcome"] = std::string(1, to_char(*h.outcome));
  out["outcome_rule"] = h.outcome_rule;
  return out;
}

json classify_json(Solver& solver, const GameState& state)
{
  auto verdict = classify_for_play(solver, state);
  json moves = json::array();
  for (const auto& m : solver.winning_moves(state))
    moves.push_back(to_string(m));
  json out{{"m", state.black_hole()},
           {"columns", columns_string(state)},
           {"outcome", std::string(1, to_char(verdict.outcome))},
           {"rule", verdict.rule},
           {"terminal", is_terminal(state)},
           {"winning_moves", moves}};
  std::string rule;
  auto prescribed = prescribed_decomposition_move(state, &rule);
  out["prescribed"] = prescribed ? json{{"action", to_string(*prescribed)}, {"rule", rule}}
                                 : json(nullptr);
  return out;
}

json winner_json(Solver& solver, int black_hole, value_t n)
{
  if (n < 1)
    throw InvalidStateError("n must be at least 1");
  if (black_hole >= 2 && black_hole <= 4) {
    auto w = empty_board_winner(n, black_hole);
    return {{"m", black_hole}, {"n", n}, {"winner", to_int(w.player)}, {"rule", w.rule},
            {"reason", w.reason}};
  }
  auto outcome = solver.outcome(FullState::start(black_hole, n));
  return {{"m", black_hole},
          {"n", n},
          {"winner", outcome == Outcome::P ? 2 : 1},
          {"rule", "solver"},
          {"reason", "exhaustive search"}};
}

struct Server::Impl {
  SessionManager& sessions;
  httplib::Server http;

  explicit Impl(SessionManager& s) : sessions(s) {}
};

namespace {

void send(httplib::Response& res, int status, const json& body)
{
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename F>
void guarded(httplib::Response& res, F&& f)
{
  try {
    f();
  } catch (const RejectedActionError& e) {
    send(res, 400, {{"error", e.what()}, {"legal", e.legal()}});
  } catch (const UnknownSessionError& e) {
    send(res, 404, {{"error", e.what()}});
  } catch (const NotYourTurnError& e) {
    send(res, 409, {{"error", e.what()}});
  } catch (const BudgetExceededError& e) {
    send(res, 503, {{"error", e.what()}});
  } catch (const GameError& e) {
    send(res, 400, {{"error", e.what()}});
  } catch (const json::exception& e) {
    send(res, 400, {{"error", std::string("bad request body: ") + e.what()}});
  } catch (const std::invalid_argument& e) {
    send(res, 400, {{"error", e.what()}});
  } catch (const std::out_of_range& e) {
    send(res, 400, {{"error", e.what()}});
  }
}

int int_param(const httplib::Request& req, const char* key)
{
  if (!req.has_param(key))
    throw std::invalid_argument(std::string("missing query parameter '") + key + "'");
  return std::stoi(req.get_param_value(key));
}

Player parse_role(const json& v)
{
  int role = v.get<int>();
  if (role != 1 && role != 2)
    throw std::invalid_argument("human_role must be 1 or 2");
  return role == 1 ? Player::One : Player::Two;
}

}  // namespace

Server::Server(SessionManager& sessions) : impl_(std::make_unique<Impl>(sessions))
{
  auto& http = impl_->http;
  auto& mgr = impl_->sessions;

  http.Post("/api/sessions", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = json::parse(req.body);
      auto view = mgr.create(body.at("m").get<int>(), body.at("n").get<value_t>(),
                             parse_role(body.value("human_role", json(1))));
      send(res, 201, to_json(view));
    });
  });

  http.Get(R"(/api/sessions/([0-9a-f]+))",
           [&mgr](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] { send(res, 200, to_json(mgr.get(req.matches[1]))); });
           });

  http.Post(R"(/api/sessions/([0-9a-f]+)/actions)",
            [&mgr](const httplib::Request& req, httplib::Response& res) {
              guarded(res, [&] {
                auto body = json::parse(req.body);
                send(res, 200,
                     to_json(mgr.submit(req.matches[1], body.at("action").get<std::string>())));
              });
            });

  http.Get(R"(/api/sessions/([0-9a-f]+)/hint)",
           [&mgr](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] { send(res, 200, to_json(mgr.hint(req.matches[1]))); });
           });

  http.Get("/api/classify", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!req.has_param("columns"))
        throw std::invalid_argument("missing query parameter 'columns'");
      auto state = parse_columns(int_param(req, "m"), req.get_param_value("columns"));
      send(res, 200, classify_json(mgr.solver(), state));
    });
  });

  http.Get("/api/winner", [&mgr](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      send(res, 200,
           winner_json(mgr.solver(), int_param(req, "m"),
                       std::stoull(req.get_param_value("n"))));
    });
  });

  http.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    send(res, 200, {{"ok", true}});
  });
}

Server::~Server() = default;

bool Server::listen(const std::string& host, int port)
{
  return impl_->http.listen(host, port);
}

int Server::bind_to_any_port(const std::string& host)
{
  return impl_->http.bind_to_any_port(host);
}

bool Server::listen_after_bind()
{
  return impl_->http.listen_after_bind();
}

void Server::wait_until_ready() const
{
  impl_->http.wait_until_ready();
}

void Server::stop()
{
  impl_->http.stop();
}

}  // namespace bhz
