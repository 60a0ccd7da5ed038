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

#include "peerinc/graph.h"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace peerinc {

Graph::Graph(int num_nodes) {
  if (num_nodes < 0) throw std::invalid_argument("Graph: negative node count");
  adjacency_.resize(num_nodes);
}

Graph Graph::Complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.AddEdge(u, v);
  }
  return g;
}

Graph Graph::Path(int n) {
  Graph g(n);
  for (int u = 0; u + 1 < n; ++u) g.AddEdge(u, u + 1);
  return g;
}

Graph Graph::Star(int n) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.AddEdge(0, v);
  return g;
}

Graph Graph::Cycle(int n) {
  Graph g = Path(n);
  if (n > 2) g.AddEdge(n - 1, 0);
  return g;
}

Graph Graph::FromEdgeList(std::istream& in, std::optional<int> num_nodes) {
  std::vector<std::pair<int, int>> edges;
  int max_index = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    int u, v;
    if (!(fields >> u)) continue;  // blank line
    if (!(fields >> v) || u < 0 || v < 0) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected two non-negative node ids");
    }
    std::string rest;
    if (fields >> rest) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": trailing tokens");
    }
    edges.emplace_back(u, v);
    max_index = std::max({max_index, u, v});
  }
  const int n = num_nodes.value_or(max_index + 1);
  if (max_index >= n) {
    throw std::invalid_argument("edge list references node " +
                                std::to_string(max_index) + " but graph has " +
                                std::to_string(n) + " nodes");
  }
  Graph g(n);
  for (auto [u, v] : edges) g.AddEdge(u, v);
  return g;
}

Graph Graph::FromEdgeListFile(const std::string& path,
                              std::optional<int> num_nodes) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list " + path);
  return FromEdgeList(in, num_nodes);
}

void Graph::AddEdge(int u, int v) {
  if (u < 0 || v < 0 || u >= num_nodes() || v >= num_nodes()) {
    throw std::out_of_range("Graph::AddEdge: node out of range");
  }
  if (u == v) throw std::invalid_argument("Graph::AddEdge: self-loop");
  if (HasEdge(u, v)) return;
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  std::sort(adjacency_[u].begin(), adjacency_[u].end());
  std::sort(adjacency_[v].begin(), adjacency_[v].end());
}

bool Graph::HasEdge(int u, int v) const {
  const auto& nbrs = adjacency_.at(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<int, int>> Graph::Edges() const {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < num_nodes(); ++u) {
    for (int v : adjacency_[u]) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

bool Graph::IsConnected() const {
  if (num_nodes() == 0) return true;
  std::vector<bool> seen(num_nodes(), false);
  std::vector<int> stack = {0};
  seen[0] = true;
  int visited = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == num_nodes();
}

ActionProfile ProfileFromMask(std::uint32_t mask, int n) {
  ActionProfile a(n);
  for (int i = 0; i < n; ++i) {
    a[i] = (mask >> i) & 1u ? Action::kDefect : Action::kCooperate;
  }
  return a;
}

std::string ProfileString(const ActionProfile& a) {
  std::string s;
  for (Action x : a) s.push_back(ActionChar(x));
  return s;
}

std::vector<double> GraphicalPayoff(const Graph& g, const PayoffMatrix& m,
                                    const ActionProfile& a, bool shaped) {
  if (static_cast<int>(a.size()) != g.num_nodes()) {
    throw std::invalid_argument("GraphicalPayoff: profile length mismatch");
  }
  const PayoffMatrix edge_game = shaped ? ShapeDrive(m) : m;
  std::vector<double> payoff(a.size(), 0.0);
  for (int i = 0; i < g.num_nodes(); ++i) {
    for (int j : g.Neighbors(i)) payoff[i] += edge_game.Payoff(a[i], a[j]);
  }
  return payoff;
}

namespace {

void CheckExhaustiveSize(const Graph& g, const char* what) {
  if (g.num_nodes() > kMaxExhaustiveNodes) {
    throw std::invalid_argument(std::string(what) + ": N=" +
                                std::to_string(g.num_nodes()) +
                                " exceeds exhaustive limit " +
                                std::to_string(kMaxExhaustiveNodes));
  }
}

std::vector<std::uint32_t> NeighborMasks(const Graph& g) {
  std::vector<std::uint32_t> masks(g.num_nodes(), 0);
  for (int i = 0; i < g.num_nodes(); ++i) {
    for (int j : g.Neighbors(i)) masks[i] |= 1u << j;
  }
  return masks;
}

}  // namespace

std::vector<ActionProfile> EnumeratePureNash(const Graph& g,
                                             const PayoffMatrix& m,
                                             bool shaped) {
  CheckExhaustiveSize(g, "EnumeratePureNash");
  const int n = g.num_nodes();
  const PayoffMatrix e = shaped ? ShapeDrive(m) : m;
  const std::vector<std::uint32_t> nbr = NeighborMasks(g);
  const std::int64_t total = std::int64_t{1} << n;

  // Payoff of agent i from its neighbourhood, given how many neighbours
  // defect and its own action.
  auto payoff = [&](int i, bool defect, int defecting) {
    const int cooperating = std::popcount(nbr[i]) - defecting;
    return defect ? cooperating * e.temptation + defecting * e.punishment
                  : cooperating * e.reward + defecting * e.sucker;
  };

  std::vector<std::vector<std::uint32_t>> found(omp_get_max_threads());
#pragma omp parallel
  {
    auto& local = found[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (std::int64_t m64 = 0; m64 < total; ++m64) {
      const auto mask = static_cast<std::uint32_t>(m64);
      bool stable = true;
      for (int i = 0; i < n && stable; ++i) {
        const bool defect = (mask >> i) & 1u;
        const int defecting = std::popcount(nbr[i] & mask);
        stable = payoff(i, !defect, defecting) <= payoff(i, defect, defecting);
      }
      if (stable) local.push_back(mask);
    }
  }
  std::vector<std::uint32_t> masks;
  for (const auto& local : found) {
    masks.insert(masks.end(), local.begin(), local.end());
  }
  std::sort(masks.begin(), masks.end());
  std::vector<ActionProfile> out;
  out.reserve(masks.size());
  for (std::uint32_t mask : masks) out.push_back(ProfileFromMask(mask, n));
  return out;
}

std::vector<ActionProfile> EnumeratePureNashSerial(const Graph& g,
                                                   const PayoffMatrix& m,
                                                   bool shaped) {
  CheckExhaustiveSize(g, "EnumeratePureNashSerial");
  const int n = g.num_nodes();
  std::vector<ActionProfile> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    ActionProfile a = ProfileFromMask(mask, n);
    const std::vector<double> base = GraphicalPayoff(g, m, a, shaped);
    bool stable = true;
    for (int i = 0; i < n && stable; ++i) {
      ActionProfile deviated = a;
      deviated[i] = Other(a[i]);
      stable = GraphicalPayoff(g, m, deviated, shaped)[i] <= base[i];
    }
    if (stable) out.push_back(std::move(a));
  }
  return out;
}

bool IsDominatingSet(const Graph& g, const std::vector<bool>& compliant,
                     Domination mode) {
  if (static_cast<int>(compliant.size()) != g.num_nodes()) {
    throw std::invalid_argument("IsDominatingSet: set size mismatch");
  }
  for (int i = 0; i < g.num_nodes(); ++i) {
    if (mode == Domination::kRequesterOnly && compliant[i]) continue;
    const auto& nbrs = g.Neighbors(i);
    if (std::none_of(nbrs.begin(), nbrs.end(),
                     [&](int j) { return compliant[j]; })) {
      return false;
    }
  }
  return true;
}

std::optional<int> DominationNumber(const Graph& g, Domination mode) {
  if (g.num_nodes() == 0) {
    throw std::invalid_argument("DominationNumber: empty graph");
  }
  CheckExhaustiveSize(g, "DominationNumber");
  const int n = g.num_nodes();
  const std::vector<std::uint32_t> nbr = NeighborMasks(g);
  const std::int64_t total = std::int64_t{1} << n;
  int best = std::numeric_limits<int>::max();
#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::int64_t m64 = 0; m64 < total; ++m64) {
    const auto set = static_cast<std::uint32_t>(m64);
    const int size = std::popcount(set);
    if (size >= best) continue;
    bool dominating = true;
    for (int i = 0; i < n && dominating; ++i) {
      const bool self = (set >> i) & 1u;
      if (mode == Domination::kRequesterOnly && self) continue;
      dominating = (nbr[i] & set) != 0;
    }
    if (dominating) best = size;
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

std::optional<int> DominationNumberSerial(const Graph& g, Domination mode) {
  if (g.num_nodes() == 0) {
    throw std::invalid_argument("DominationNumberSerial: empty graph");
  }
  CheckExhaustiveSize(g, "DominationNumberSerial");
  const int n = g.num_nodes();
  // Subsets in order of increasing size; the first hit is minimal.
  for (int k = 0; k <= n; ++k) {
    std::vector<bool> chosen(n, false);
    std::fill(chosen.end() - k, chosen.end(), true);
    do {
      if (IsDominatingSet(g, chosen, mode)) return k;
    } while (std::next_permutation(chosen.begin(), chosen.end()));
  }
  return std::nullopt;
}

}  // namespace peerinc
