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

#include <deque>
#include <functional>
#include <stdexcept>

#include "peerinc/environment.h"

namespace peerinc {
namespace {

constexpr long kMinCoinSamples = 10000;
constexpr long kMinHarvestEpisodes = 10;
// Cooperative harvesters only pick apples with at least this many apples
// around them, so every cluster keeps regrowing.
constexpr int kSustainableNeighbours = 3;

PayoffMatrix EstimateCoin(long samples, Rng& rng, CoinPickup rule) {
  // Sums of per-agent rewards for CC, DD and DC (agent 0 defects).
  double cc = 0, dd = 0, dc_defector = 0, dc_cooperator = 0;
  for (long s = 0; s < samples; ++s) {
    auto event = [&](bool defect0, bool defect1) {
      const int color = static_cast<int>(rng.Below(2));
      std::vector<int> takers;
      for (int agent : rng.Permutation(2)) {
        const bool defects = agent == 0 ? defect0 : defect1;
        if (defects || agent == color) takers.push_back(agent);
      }
      return ResolveCoinPickup(takers, color, 2, rule);
    };
    const auto both_c = event(false, false);
    cc += both_c[0] + both_c[1];
    const auto both_d = event(true, true);
    dd += both_d[0] + both_d[1];
    const auto mixed = event(true, false);
    dc_defector += mixed[0];
    dc_cooperator += mixed[1];
  }
  const double n = static_cast<double>(samples);
  return PayoffMatrix{cc / (2 * n), dd / (2 * n), dc_defector / n,
                      dc_cooperator / n};
}

// First move (action 1..4) of a shortest path to the nearest cell matching
// `target`, or noop when none is reachable.
int StepToward(const HarvestEnvironment& env, Cell from,
               const std::function<bool(Cell)>& target) {
  static constexpr int kDx[4] = {0, 0, -1, 1};
  static constexpr int kDy[4] = {-1, 1, 0, 0};
  const HarvestMap& map = env.map();
  std::vector<int> first_move(map.width * map.height, -1);
  std::deque<Cell> frontier = {from};
  first_move[from.y * map.width + from.x] = 0;
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop_front();
    const int move = first_move[c.y * map.width + c.x];
    if (!(c == from) && target(c)) return move;
    for (int d = 0; d < 4; ++d) {
      const int x = c.x + kDx[d], y = c.y + kDy[d];
      if (!map.InBounds(x, y) || map.At(x, y) == MapTile::kWall) continue;
      int& seen = first_move[y * map.width + x];
      if (seen != -1) continue;
      seen = c == from ? d + 1 : move;
      frontier.push_back({x, y});
    }
  }
  return HarvestEnvironment::kNoop;
}

int ScriptedHarvestAction(const HarvestEnvironment& env, int agent,
                          bool defect) {
  const Cell me = env.agent_positions()[agent];
  if (defect) {
    for (int j = 0; j < env.num_agents(); ++j) {
      if (j == agent || env.frozen_steps_left(j) > 0) continue;
      for (int dir = 0; dir < 4; ++dir) {
        if (env.InBeam(me, dir, env.agent_positions()[j])) {
          return HarvestEnvironment::kTagNorth + dir;
        }
      }
    }
    return StepToward(env, me, [&](Cell c) { return env.HasApple(c); });
  }
  return StepToward(env, me, [&](Cell c) {
    return env.HasApple(c) && env.NearbyApples(c) >= kSustainableNeighbours;
  });
}

PayoffMatrix EstimateHarvest(long episodes, Rng& rng, EnvDescriptor desc) {
  desc.kind = EnvKind::kHarvest;
  desc.num_agents = 2;
  HarvestEnvironment env(desc);
  auto play = [&](bool defect0, bool defect1) {
    std::array<double, 2> totals{0, 0};
    for (long e = 0; e < episodes; ++e) {
      env.Reset(rng);
      while (!env.done()) {
        const std::array<int, 2> actions = {
            ScriptedHarvestAction(env, 0, defect0),
            ScriptedHarvestAction(env, 1, defect1)};
        const EnvStep step = env.Step(actions, rng);
        totals[0] += step.rewards[0];
        totals[1] += step.rewards[1];
      }
    }
    const double steps = static_cast<double>(episodes) * desc.horizon;
    return std::array<double, 2>{totals[0] / steps, totals[1] / steps};
  };
  const auto cc = play(false, false);
  const auto dd = play(true, true);
  const auto dc = play(true, false);
  return PayoffMatrix{(cc[0] + cc[1]) / 2, (dd[0] + dd[1]) / 2, dc[0], dc[1]};
}

}  // namespace

PayoffMatrix ExpectedMatrix(DilemmaKind kind, long samples, Rng& rng,
                            const EnvDescriptor& desc) {
  switch (kind) {
    case DilemmaKind::kCoin2:
      if (samples < kMinCoinSamples) {
        throw std::invalid_argument("ExpectedMatrix: need at least " +
                                    std::to_string(kMinCoinSamples) +
                                    " coin events");
      }
      return EstimateCoin(samples, rng, desc.coin_pickup);
    case DilemmaKind::kHarvest2:
      if (samples < kMinHarvestEpisodes) {
        throw std::invalid_argument("ExpectedMatrix: need at least " +
                                    std::to_string(kMinHarvestEpisodes) +
                                    " harvest episodes");
      }
      return EstimateHarvest(samples, rng, desc);
  }
  throw std::invalid_argument("ExpectedMatrix: unknown kind");
}

}  // namespace peerinc
