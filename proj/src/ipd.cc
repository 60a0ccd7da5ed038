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

#include "peerinc/environment.h"

namespace peerinc {

IpdEnvironment::IpdEnvironment(EnvDescriptor desc)
    : Environment(std::move(desc)) {}

void IpdEnvironment::ResetState(Rng&) { has_previous_ = false; }

// Own previous action one-hot followed by the other's; zero before the
// first move.
std::vector<Observation> IpdEnvironment::Observe() const {
  std::vector<Observation> obs(2, Observation(4, 0.0));
  if (!has_previous_) return obs;
  for (int i = 0; i < 2; ++i) {
    obs[i][previous_[i]] = 1.0;
    obs[i][2 + previous_[1 - i]] = 1.0;
  }
  return obs;
}

void IpdEnvironment::Transition(std::span<const int> actions, Rng&,
                                std::vector<double>& rewards,
                                std::vector<AgentEvents>&) {
  const PayoffMatrix m = Payoffs();
  const auto a0 = static_cast<Action>(actions[0]);
  const auto a1 = static_cast<Action>(actions[1]);
  rewards[0] = m.Payoff(a0, a1);
  rewards[1] = m.Payoff(a1, a0);
  previous_ = {actions[0], actions[1]};
  has_previous_ = true;
}

}  // namespace peerinc
