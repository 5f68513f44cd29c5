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

// A second, deliberately plain implementation of the rules for tests.
// Shares no code with the library: boards are vectors indexed from 0 with
// the black hole at index m-1, moves are written out by their arithmetic.

#pragma once

#include <map>
#include <utility>
#include <vector>

namespace oracle {

inline long long fib(int i)
{
  long long a = 1, b = 2;  // F_1, F_2
  if (i == 1)
    return 1;
  for (int k = 2; k < i; ++k) {
    long long c = a + b;
    a = b;
    b = c;
  }
  return b;
}

using Board = std::vector<int>;  // size m - 1, index 0 is F_1

// Every board reachable in one decomposition move, in no particular order.
inline std::vector<Board> moves(const Board& x)
{
  const int k = static_cast<int>(x.size());
  std::vector<Board> out;
  auto put = [&](Board& y, int col) {  // col is 1-based
    if (col <= k)
      y[col - 1] += 1;
  };
  // 1 + 1 = 2
  if (x[0] >= 2) {
    Board y = x;
    y[0] -= 2;
    put(y, 2);
    out.push_back(y);
  }
  // F_i + F_{i+1} = F_{i+2}
  for (int i = 1; i + 1 <= k; ++i)
    if (x[i - 1] >= 1 && x[i] >= 1) {
      Board y = x;
      y[i - 1] -= 1;
      y[i] -= 1;
      put(y, i + 2);
      out.push_back(y);
    }
  // 2 F_2 = F_1 + F_3, 2 F_i = F_{i-2} + F_{i+1}
  for (int i = 2; i <= k; ++i)
    if (x[i - 1] >= 2) {
      Board y = x;
      y[i - 1] -= 2;
      put(y, i == 2 ? 1 : i - 2);
      put(y, i + 1);
      out.push_back(y);
    }
  return out;
}

class Game {
public:
  explicit Game(int m) : m_(m) {}

  // True when the player to move wins. `left` pieces of value still to place.
  bool mover_wins(const Board& x, long long left)
  {
    auto key = std::make_pair(x, left);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    bool win = false;
    for (auto& [y, l] : children(x, left))
      if (!mover_wins(y, l)) {
        win = true;
        break;
      }
    memo_[key] = win;
    return win;
  }

  std::vector<std::pair<Board, long long>> children(const Board& x, long long left) const
  {
    std::vector<std::pair<Board, long long>> out;
    if (left > 0) {
      const int outer = m_ - 1;
      Board y = x;
      y[0] += 1;
      out.push_back({y, left - 1});
      if (outer > 1 && fib(outer) <= left) {
        Board z = x;
        z[outer - 1] += 1;
        out.push_back({z, left - fib(outer)});
      }
      return out;
    }
    for (auto& y : moves(x))
      out.push_back({y, 0});
    return out;
  }

private:
  int m_;
  std::map<std::pair<Board, long long>, bool> memo_;
};

}  // namespace oracle
