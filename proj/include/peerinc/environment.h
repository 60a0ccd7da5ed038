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

#ifndef PEERINC_ENVIRONMENT_H_
#define PEERINC_ENVIRONMENT_H_

// Sequential social dilemmas behind one stepping interface. Every source of
// randomness (spawn positions, action order, coin colours, apple regrowth)
// is drawn from the caller's Rng so a run replays exactly from its seed.

#include <array>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "peerinc/game.h"
#include "peerinc/rng.h"

namespace peerinc {

enum class EnvKind { kIpd, kCoin, kHarvest };

EnvKind ParseEnvKind(const std::string& name);
std::string EnvKindName(EnvKind kind);

enum class CoinPickup {
  kSimultaneous,        // every agent on the coin cell collects it
  kFirstInRandomOrder,  // only the first agent of this step's order collects
};

CoinPickup ParseCoinPickup(const std::string& name);
std::string CoinPickupName(CoinPickup rule);

// Apple regrowth probability for an empty apple cell with `min_apples` or
// more apples within Chebyshev radius 2; the largest matching row wins and
// zero surrounding apples never regrow.
struct RegrowthRow {
  int min_apples;
  double probability;
};

struct EnvDescriptor {
  EnvKind kind = EnvKind::kIpd;
  int num_agents = 2;
  int horizon = 150;
  double gamma = 0.95;

  // Coin.
  int grid_width = 3;
  int grid_height = 3;
  CoinPickup coin_pickup = CoinPickup::kSimultaneous;

  // Harvest. An empty map_path selects the bundled default map.
  std::string map_path;
  std::vector<RegrowthRow> regrowth = {{1, 0.01}, {3, 0.05}, {6, 0.1}};
  int freeze_steps = 25;
  int beam_length = 5;
  int beam_width = 5;
  int view_radius = 3;  // 7x7 window
  double time_penalty = 0.01;

  // Sensible defaults per environment (grid size, horizon, discount).
  static EnvDescriptor Ipd();
  static EnvDescriptor Coin(int num_agents);
  static EnvDescriptor Harvest(int num_agents);

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

using Observation = std::vector<double>;

struct AgentEvents {
  bool picked_coin = false;
  bool own_coin = false;  // meaningful only when picked_coin
  bool frozen = false;    // timed out by a tag during this step
  bool tagged = false;    // hit by a beam during this step
  int apples = 0;
};

struct EnvStep {
  std::vector<double> rewards;
  std::vector<Observation> observations;
  std::vector<std::vector<int>> neighborhoods;
  std::vector<AgentEvents> events;
  bool terminal = false;
};

class Environment {
 public:
  explicit Environment(EnvDescriptor desc);
  virtual ~Environment() = default;

  const EnvDescriptor& descriptor() const { return desc_; }
  int num_agents() const { return desc_.num_agents; }
  int horizon() const { return desc_.horizon; }
  int time() const { return t_; }
  bool done() const { return t_ >= desc_.horizon; }

  virtual int num_actions() const = 0;
  virtual int observation_size() const = 0;

  std::vector<Observation> Reset(Rng& rng);
  // Throws std::logic_error after the horizon and std::out_of_range for
  // action indices outside [0, num_actions()).
  EnvStep Step(std::span<const int> actions, Rng& rng);

  virtual std::vector<Observation> Observe() const = 0;
  // Agents each agent can exchange incentives with; never contains self.
  virtual std::vector<std::vector<int>> Neighborhoods() const;

 protected:
  virtual void ResetState(Rng& rng) = 0;
  virtual void Transition(std::span<const int> actions, Rng& rng,
                          std::vector<double>& rewards,
                          std::vector<AgentEvents>& events) = 0;

 private:
  EnvDescriptor desc_;
  int t_ = 0;
};

std::unique_ptr<Environment> MakeEnvironment(const EnvDescriptor& desc);

// ---------------------------------------------------------------------------

// Two-player iterated prisoner's dilemma. Action 0 cooperates, 1 defects.
class IpdEnvironment : public Environment {
 public:
  static PayoffMatrix Payoffs() { return PayoffMatrix::Trps(0, -1, -2, -3); }

  explicit IpdEnvironment(EnvDescriptor desc);

  int num_actions() const override { return 2; }
  int observation_size() const override { return 4; }
  std::vector<Observation> Observe() const override;

 protected:
  void ResetState(Rng& rng) override;
  void Transition(std::span<const int> actions, Rng& rng,
                  std::vector<double>& rewards,
                  std::vector<AgentEvents>& events) override;

 private:
  bool has_previous_ = false;
  std::array<int, 2> previous_{};
};

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Rewards for one coin collection. `collectors` are the agents standing on
// the coin in this step's random order; agent i has colour i.
std::vector<double> ResolveCoinPickup(std::span<const int> collectors,
                                      int coin_color, int num_agents,
                                      CoinPickup rule);

// Coin-N: agent i has colour i; one coin at a time. Actions 0..3 move
// north, south, west, east; moves off the grid are no-ops.
class CoinEnvironment : public Environment {
 public:
  explicit CoinEnvironment(EnvDescriptor desc);

  int num_actions() const override { return 4; }
  int observation_size() const override;
  std::vector<Observation> Observe() const override;

  const std::vector<Cell>& agent_positions() const { return agents_; }
  Cell coin_position() const { return coin_; }
  int coin_color() const { return coin_color_; }
  // Test hook: places agents and the coin explicitly.
  void SetState(std::vector<Cell> agents, Cell coin, int coin_color);

 protected:
  void ResetState(Rng& rng) override;
  void Transition(std::span<const int> actions, Rng& rng,
                  std::vector<double>& rewards,
                  std::vector<AgentEvents>& events) override;

 private:
  void SpawnCoin(Rng& rng);
  int Index(Cell c) const { return c.y * descriptor().grid_width + c.x; }

  std::vector<Cell> agents_;
  Cell coin_;
  int coin_color_ = 0;
};

enum class MapTile : char { kEmpty = '.', kApple = '@', kWall = '#' };

// ASCII map: '@' apple cell, '.' empty, '#' wall. Rows must share a width.
struct HarvestMap {
  int width = 0;
  int height = 0;
  std::vector<MapTile> tiles;  // row-major

  static HarvestMap Parse(const std::string& text);
  static HarvestMap Load(const std::string& path);
  static HarvestMap Default();
  static const char* DefaultText();

  MapTile At(int x, int y) const { return tiles[y * width + x]; }
  bool InBounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
};

// Harvest-N. Actions: 0 noop, 1..4 move N/S/W/E, 5..8 tag N/S/W/E.
class HarvestEnvironment : public Environment {
 public:
  static constexpr int kNoop = 0;
  static constexpr int kTagNorth = 5;

  explicit HarvestEnvironment(EnvDescriptor desc);

  int num_actions() const override { return 9; }
  int observation_size() const override;
  std::vector<Observation> Observe() const override;
  std::vector<std::vector<int>> Neighborhoods() const override;

  const HarvestMap& map() const { return map_; }
  const std::vector<Cell>& agent_positions() const { return agents_; }
  int apple_count() const;
  bool HasApple(Cell c) const { return apples_[Index(c)]; }
  int frozen_steps_left(int agent) const { return freeze_[agent]; }
  // Test hooks.
  void SetAgents(std::vector<Cell> agents);
  void SetApples(const std::vector<Cell>& apples);

  // Apples within Chebyshev radius 2 of c, excluding c itself.
  int NearbyApples(Cell c) const;
  double RegrowthProbability(int nearby) const;
  // Cells hit by a beam fired by an agent at `from` in direction 0..3.
  bool InBeam(Cell from, int direction, Cell target) const;

 protected:
  void ResetState(Rng& rng) override;
  void Transition(std::span<const int> actions, Rng& rng,
                  std::vector<double>& rewards,
                  std::vector<AgentEvents>& events) override;

 private:
  int Index(Cell c) const { return c.y * map_.width + c.x; }
  bool Walkable(int x, int y) const {
    return map_.InBounds(x, y) && map_.At(x, y) != MapTile::kWall;
  }

  HarvestMap map_;
  std::vector<bool> apples_;
  std::vector<Cell> agents_;
  std::vector<int> freeze_;
};

// ---------------------------------------------------------------------------

enum class DilemmaKind { kCoin2, kHarvest2 };

// Monte-Carlo estimate of the per-step payoff matrix induced by scripted
// cooperate/defect policies.
//
// Coin-2: each sample is one step in which a coin of random colour appears
// and every agent willing to take it reaches it (cooperators take their own
// colour only, defectors take any); rewards follow ResolveCoinPickup.
// `samples` counts coin events per profile.
//
// Harvest-2: two scripted agents play full episodes on the given map;
// cooperators never tag and leave sparse apples to regrow, defectors tag
// whenever possible and harvest everything. `samples` counts episodes per
// profile.
//
// Throws std::invalid_argument when `samples` is below the minimum (10^4
// coin events, 10 Harvest episodes).
PayoffMatrix ExpectedMatrix(DilemmaKind kind, long samples, Rng& rng,
                            const EnvDescriptor& desc);

}  // namespace peerinc

#endif  // PEERINC_ENVIRONMENT_H_
