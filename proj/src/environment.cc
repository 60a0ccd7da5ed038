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

#include <stdexcept>
#include <string>

#include "peerinc/environment.h"

namespace peerinc {

EnvKind ParseEnvKind(const std::string& name) {
  if (name == "ipd") return EnvKind::kIpd;
  if (name == "coin") return EnvKind::kCoin;
  if (name == "harvest") return EnvKind::kHarvest;
  throw std::invalid_argument("unknown env.kind '" + name +
                              "' (ipd|coin|harvest)");
}

std::string EnvKindName(EnvKind kind) {
  switch (kind) {
    case EnvKind::kIpd:
      return "ipd";
    case EnvKind::kCoin:
      return "coin";
    case EnvKind::kHarvest:
      return "harvest";
  }
  return "?";
}

CoinPickup ParseCoinPickup(const std::string& name) {
  if (name == "simultaneous") return CoinPickup::kSimultaneous;
  if (name == "first") return CoinPickup::kFirstInRandomOrder;
  throw std::invalid_argument("env.coin_pickup: expected simultaneous or first, got '" +
                              name + "'");
}

std::string CoinPickupName(CoinPickup rule) {
  return rule == CoinPickup::kSimultaneous ? "simultaneous" : "first";
}

EnvDescriptor EnvDescriptor::Ipd() { return EnvDescriptor{}; }

EnvDescriptor EnvDescriptor::Coin(int num_agents) {
  EnvDescriptor d;
  d.kind = EnvKind::kCoin;
  d.num_agents = num_agents;
  d.grid_width = d.grid_height = num_agents <= 2 ? 3 : 5;
  return d;
}

EnvDescriptor EnvDescriptor::Harvest(int num_agents) {
  EnvDescriptor d;
  d.kind = EnvKind::kHarvest;
  d.num_agents = num_agents;
  d.horizon = 250;
  d.gamma = 0.99;
  return d;
}

void EnvDescriptor::Validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("env." + what);
  };
  if (horizon < 1) fail("horizon must be >= 1");
  if (!(gamma >= 0 && gamma < 1)) fail("gamma must lie in [0, 1)");
  if (num_agents < 1) fail("num_agents must be >= 1");
  switch (kind) {
    case EnvKind::kIpd:
      if (num_agents != 2) fail("num_agents must be 2 for ipd");
      break;
    case EnvKind::kCoin:
      if (num_agents < 2) fail("num_agents must be >= 2 for coin");
      if (grid_width < 1 || grid_height < 1) fail("grid size must be >= 1");
      if (grid_width * grid_height <= num_agents) {
        fail("grid must have more cells than agents");
      }
      break;
    case EnvKind::kHarvest:
      if (freeze_steps < 0) fail("freeze_steps must be >= 0");
      if (beam_length < 1 || beam_width < 1) fail("beam size must be >= 1");
      if (view_radius < 0) fail("view_radius must be >= 0");
      for (const auto& row : regrowth) {
        if (row.min_apples < 1) fail("regrowth thresholds must be >= 1");
        if (!(row.probability >= 0 && row.probability <= 1)) {
          fail("regrowth probabilities must lie in [0, 1]");
        }
      }
      break;
  }
}

Environment::Environment(EnvDescriptor desc) : desc_(std::move(desc)) {
  desc_.Validate();
}

std::vector<Observation> Environment::Reset(Rng& rng) {
  t_ = 0;
  ResetState(rng);
  return Observe();
}

EnvStep Environment::Step(std::span<const int> actions, Rng& rng) {
  if (done()) throw std::logic_error("Environment::Step after horizon");
  if (static_cast<int>(actions.size()) != num_agents()) {
    throw std::invalid_argument("Environment::Step: expected " +
                                std::to_string(num_agents()) + " actions");
  }
  for (int a : actions) {
    if (a < 0 || a >= num_actions()) {
      throw std::out_of_range("Environment::Step: action " +
                              std::to_string(a) + " outside [0, " +
                              std::to_string(num_actions()) + ")");
    }
  }
  EnvStep step;
  step.rewards.assign(num_agents(), 0.0);
  step.events.assign(num_agents(), AgentEvents{});
  Transition(actions, rng, step.rewards, step.events);
  ++t_;
  step.observations = Observe();
  step.neighborhoods = Neighborhoods();
  step.terminal = done();
  return step;
}

std::vector<std::vector<int>> Environment::Neighborhoods() const {
  std::vector<std::vector<int>> out(num_agents());
  for (int i = 0; i < num_agents(); ++i) {
    for (int j = 0; j < num_agents(); ++j) {
      if (j != i) out[i].push_back(j);
    }
  }
  return out;
}

std::unique_ptr<Environment> MakeEnvironment(const EnvDescriptor& desc) {
  switch (desc.kind) {
    case EnvKind::kIpd:
      return std::make_unique<IpdEnvironment>(desc);
    case EnvKind::kCoin:
      return std::make_unique<CoinEnvironment>(desc);
    case EnvKind::kHarvest:
      return std::make_unique<HarvestEnvironment>(desc);
  }
  throw std::invalid_argument("MakeEnvironment: unknown kind");
}

}  // namespace peerinc
