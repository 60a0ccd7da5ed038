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

#ifndef PEERINC_GRAPH_H_
#define PEERINC_GRAPH_H_

// Graphical prisoner's dilemma on an undirected communication graph, plus
// the dominating-set checks that bound how much protocol non-compliance a
// topology tolerates.
//
// The exhaustive searches (pure equilibria over 2^N profiles, domination
// number over 2^N subsets) come in two flavours: an OpenMP kernel and a
// plain serial reference that tests and benchmarks compare against.

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "peerinc/game.h"

namespace peerinc {

class Graph {
 public:
  explicit Graph(int num_nodes);

  static Graph Complete(int n);
  static Graph Path(int n);
  static Graph Star(int n);  // node 0 is the centre
  static Graph Cycle(int n);
  // One "u v" pair per line, 0-indexed; '#' starts a comment. The node
  // count is max index + 1 unless `num_nodes` is given.
  static Graph FromEdgeList(std::istream& in,
                            std::optional<int> num_nodes = std::nullopt);
  static Graph FromEdgeListFile(const std::string& path,
                                std::optional<int> num_nodes = std::nullopt);

  // Self-loops are rejected; duplicate edges are ignored.
  void AddEdge(int u, int v);

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  const std::vector<int>& Neighbors(int i) const { return adjacency_.at(i); }
  bool HasEdge(int u, int v) const;
  std::vector<std::pair<int, int>> Edges() const;
  bool IsConnected() const;

 private:
  std::vector<std::vector<int>> adjacency_;
};

using ActionProfile = std::vector<Action>;

// Largest N accepted by the exhaustive 2^N searches.
inline constexpr int kMaxExhaustiveNodes = 20;

// Bit i of `mask` set means agent i defects.
ActionProfile ProfileFromMask(std::uint32_t mask, int n);
std::string ProfileString(const ActionProfile& a);

// u_i(a) = sum over neighbours j of the pairwise payoff u_ij(a_i, a_j);
// with `shaped` every edge uses ShapeDrive(m).
std::vector<double> GraphicalPayoff(const Graph& g, const PayoffMatrix& m,
                                    const ActionProfile& a, bool shaped);

// All pure Nash equilibria, sorted by defection mask. Throws for N > 20.
std::vector<ActionProfile> EnumeratePureNash(const Graph& g,
                                             const PayoffMatrix& m,
                                             bool shaped);
std::vector<ActionProfile> EnumeratePureNashSerial(const Graph& g,
                                                   const PayoffMatrix& m,
                                                   bool shaped);

enum class Domination {
  kTotal,          // every node, compliant or not, needs a compliant neighbour
  kRequesterOnly,  // only non-compliant nodes need a compliant neighbour
};

bool IsDominatingSet(const Graph& g, const std::vector<bool>& compliant,
                     Domination mode = Domination::kTotal);

// Minimum size of a dominating set; nullopt when none exists (an isolated
// node under kTotal). Throws for an empty graph or N > 20.
std::optional<int> DominationNumber(const Graph& g,
                                    Domination mode = Domination::kTotal);
std::optional<int> DominationNumberSerial(
    const Graph& g, Domination mode = Domination::kTotal);

}  // namespace peerinc

#endif  // PEERINC_GRAPH_H_
