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

#include <algorithm>
#include <stdexcept>

#include "peerinc/environment.h"

namespace peerinc {
namespace {

constexpr int kDx[4] = {0, 0, -1, 1};  // N, S, W, E
constexpr int kDy[4] = {-1, 1, 0, 0};

}  // namespace

std::vector<double> ResolveCoinPickup(std::span<const int> collectors,
                                      int coin_color, int num_agents,
                                      CoinPickup rule) {
  std::vector<double> rewards(num_agents, 0.0);
  const std::size_t takers =
      rule == CoinPickup::kSimultaneous ? collectors.size()
                                        : std::min<std::size_t>(1, collectors.size());
  for (std::size_t k = 0; k < takers; ++k) {
    const int agent = collectors[k];
    rewards[agent] += 1.0;
    if (agent != coin_color) rewards[coin_color] -= 2.0;
  }
  return rewards;
}

CoinEnvironment::CoinEnvironment(EnvDescriptor desc)
    : Environment(std::move(desc)) {}

int CoinEnvironment::observation_size() const {
  const auto& d = descriptor();
  return (d.num_agents + 2) * d.grid_width * d.grid_height;
}

void CoinEnvironment::SpawnCoin(Rng& rng) {
  const auto& d = descriptor();
  std::vector<Cell> free;
  for (int y = 0; y < d.grid_height; ++y) {
    for (int x = 0; x < d.grid_width; ++x) {
      const Cell c{x, y};
      if (std::find(agents_.begin(), agents_.end(), c) == agents_.end()) {
        free.push_back(c);
      }
    }
  }
  coin_ = free[rng.Below(free.size())];
  coin_color_ = static_cast<int>(rng.Below(d.num_agents));
}

void CoinEnvironment::ResetState(Rng& rng) {
  const auto& d = descriptor();
  agents_.resize(d.num_agents);
  for (Cell& c : agents_) {
    c = Cell{static_cast<int>(rng.Below(d.grid_width)),
             static_cast<int>(rng.Below(d.grid_height))};
  }
  SpawnCoin(rng);
}

void CoinEnvironment::SetState(std::vector<Cell> agents, Cell coin,
                               int coin_color) {
  const auto& d = descriptor();
  auto inside = [&](Cell c) {
    return c.x >= 0 && c.y >= 0 && c.x < d.grid_width && c.y < d.grid_height;
  };
  if (static_cast<int>(agents.size()) != d.num_agents ||
      !std::all_of(agents.begin(), agents.end(), inside) || !inside(coin) ||
      coin_color < 0 || coin_color >= d.num_agents) {
    throw std::invalid_argument("CoinEnvironment::SetState: invalid state");
  }
  agents_ = std::move(agents);
  coin_ = coin;
  coin_color_ = coin_color;
}

// Planes: self, each other agent by index, coin of own colour, coin of any
// other colour.
std::vector<Observation> CoinEnvironment::Observe() const {
  const auto& d = descriptor();
  const int plane = d.grid_width * d.grid_height;
  std::vector<Observation> obs(d.num_agents,
                               Observation(observation_size(), 0.0));
  for (int i = 0; i < d.num_agents; ++i) {
    Observation& o = obs[i];
    o[Index(agents_[i])] = 1.0;
    int slot = 1;
    for (int j = 0; j < d.num_agents; ++j) {
      if (j == i) continue;
      o[slot * plane + Index(agents_[j])] = 1.0;
      ++slot;
    }
    const int coin_plane = coin_color_ == i ? d.num_agents : d.num_agents + 1;
    o[coin_plane * plane + Index(coin_)] = 1.0;
  }
  return obs;
}

void CoinEnvironment::Transition(std::span<const int> actions, Rng& rng,
                                 std::vector<double>& rewards,
                                 std::vector<AgentEvents>& events) {
  const auto& d = descriptor();
  const std::vector<int> order = rng.Permutation(d.num_agents);
  std::vector<int> on_coin;
  for (int i : order) {
    Cell& c = agents_[i];
    const int nx = c.x + kDx[actions[i]];
    const int ny = c.y + kDy[actions[i]];
    if (nx >= 0 && ny >= 0 && nx < d.grid_width && ny < d.grid_height) {
      c = Cell{nx, ny};
    }
  }
  for (int i : order) {
    if (agents_[i] == coin_) on_coin.push_back(i);
  }
  if (on_coin.empty()) return;
  if (d.coin_pickup == CoinPickup::kFirstInRandomOrder) on_coin.resize(1);
  rewards = ResolveCoinPickup(on_coin, coin_color_, d.num_agents,
                              d.coin_pickup);
  for (int i : on_coin) {
    events[i].picked_coin = true;
    events[i].own_coin = i == coin_color_;
  }
  SpawnCoin(rng);
}

}  // namespace peerinc
