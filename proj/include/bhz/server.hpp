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

// JSON over HTTP for the session manager.
//
//   POST /api/sessions                 {"m":4,"n":20,"human_role":1}
//   GET  /api/sessions/<id>
//   POST /api/sessions/<id>/actions    {"action":"P1"} or {"action":"A2"}
//   GET  /api/sessions/<id>/hint
//   GET  /api/classify?m=4&columns=2,0,0
//   GET  /api/winner?m=4&n=47
//
// Errors come back as {"error": "...", ...} with 400 (bad request or illegal
// action, which also lists "legal"), 404 (unknown session), 409 (not your
// turn / finished) or 503 (solver budget exceeded).

#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "bhz/api.hpp"

namespace bhz {

nlohmann::json to_json(const FullState& state);
nlohmann::json to_json(const SessionView& view);
nlohmann::json to_json(const Hint& hint);

// Stateless helpers behind /api/classify and /api/winner.
nlohmann::json classify_json(Solver& solver, const GameState& state);
nlohmann::json winner_json(Solver& solver, int black_hole, value_t n);

class Server {
public:
  explicit Server(SessionManager& sessions);
  ~Server();

  // Blocks until stop().
  bool listen(const std::string& host, int port);
  // Returns the bound port, or -1.
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bhz
