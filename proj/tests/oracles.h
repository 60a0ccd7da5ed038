// Copyright 2026 The peerinc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PEERINC_TESTS_ORACLES_H_
#define PEERINC_TESTS_ORACLES_H_

// Slow, direct reference implementations used to check the library.
// Nothing here calls the routine it is checking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "peerinc/game.h"
#include "peerinc/rng.h"

namespace peerinc::oracle {

// Random T > R > P > S with integer-free spacing.
inline PayoffMatrix RandomStrictPd(Rng& rng) {
  double v[4];
  v[0] = rng.Uniform(-10, 10);
  for (int k = 1; k < 4; ++k) v[k] = v[k - 1] - rng.Uniform(0.01, 5);
  return PayoffMatrix::Trps(v[0], v[1], v[2], v[3]);
}

// Row payoff table indexed [own][other] with 0 = C, 1 = D.
inline void Table(const PayoffMatrix& m, double t[2][2]) {
  t[0][0] = m.reward;
  t[0][1] = m.sucker;
  t[1][0] = m.temptation;
  t[1][1] = m.punishment;
}

// Pure Nash of the symmetric game by checking all four cells.
inline std::set<std::pair<int, int>> Nash2x2(const PayoffMatrix& m) {
  double t[2][2];
  Table(m, t);
  std::set<std::pair<int, int>> out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const bool row_ok = t[a][b] >= t[1 - a][b];
      const bool col_ok = t[b][a] >= t[1 - b][a];
      if (row_ok && col_ok) out.insert({a, b});
    }
  }
  return out;
}

using Adjacency = std::vector<std::vector<int>>;

// Each node plays its action against every neighbour; under pairwise DRIVE
// shaping the temptation and sucker entries trade places.
inline double NodePayoff(const Adjacency& adj, const PayoffMatrix& m,
                         const std::vector<int>& profile, int i, bool shaped) {
  double t[2][2];
  Table(m, t);
  if (shaped) std::swap(t[0][1], t[1][0]);
  double total = 0;
  for (int j : adj[i]) total += t[profile[i]][profile[j]];
  return total;
}

// All pure Nash profiles as bitmasks (bit i set = node i defects).
inline std::vector<std::uint32_t> GraphNash(const Adjacency& adj,
                                            const PayoffMatrix& m,
                                            bool shaped) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = (mask >> i) & 1;
    bool stable = true;
    for (int i = 0; i < n && stable; ++i) {
      const double now = NodePayoff(adj, m, p, i, shaped);
      std::vector<int> q = p;
      q[i] = 1 - q[i];
      if (NodePayoff(adj, m, q, i, shaped) > now) stable = false;
    }
    if (stable) out.push_back(mask);
  }
  return out;
}

// Smallest set C with a member of C adjacent to every node (total = true)
// or to every node outside C (total = false); -1 if none exists.
inline int DominationNumber(const Adjacency& adj, bool total) {
  const int n = static_cast<int>(adj.size());
  int best = -1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!total && ((mask >> i) & 1)) continue;
      bool covered = false;
      for (int j : adj[i]) covered = covered || ((mask >> j) & 1);
      ok = covered;
    }
    const int size = __builtin_popcount(mask);
    if (ok && (best < 0 || size < best)) best = size;
  }
  return best;
}

// Every connected simple graph on n labelled nodes.
inline std::vector<Adjacency> ConnectedGraphs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  std::vector<Adjacency> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    Adjacency adj(n);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((mask >> k) & 1) {
        adj[pairs[k].first].push_back(pairs[k].second);
        adj[pairs[k].second].push_back(pairs[k].first);
      }
    }
    std::vector<int> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    if (std::count(seen.begin(), seen.end(), 1) == n) out.push_back(adj);
  }
  return out;
}

// G_t = sum_k gamma^k r_{t+k}, summed term by term.
inline std::vector<double> Returns(const std::vector<double>& r, double gamma) {
  std::vector<double> g(r.size(), 0.0);
  for (std::size_t t = 0; t < r.size(); ++t) {
    for (std::size_t k = t; k < r.size(); ++k) {
      g[t] += std::pow(gamma, static_cast<double>(k - t)) * r[k];
    }
  }
  return g;
}

// Equality with the time sum inside the absolute value, as in the
// definition: rewards[t][i].
inline double Equality(const std::vector<std::vector<double>>& rewards) {
  const std::size_t n = rewards.empty() ? 0 : rewards[0].size();
  double num = 0;
  double den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double d = 0;
      for (const auto& row : rewards) d += row[i] - row[j];
      num += std::abs(d);
    }
    for (const auto& row : rewards) den += row[i];
  }
  return 1.0 - num / (2.0 * n * den);
}

}  // namespace peerinc::oracle

#endif  // PEERINC_TESTS_ORACLES_H_
