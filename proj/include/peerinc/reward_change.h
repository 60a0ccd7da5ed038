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

#ifndef PEERINC_REWARD_CHANGE_H_
#define PEERINC_REWARD_CHANGE_H_

#include <string>

#include "peerinc/game.h"

namespace peerinc {

enum class RewardChangeKind {
  kIdentity,
  kLinearIncrease,    // u * (eta*m + 1)
  kExponentialDecay,  // u * exp(-eta*m)
  kStepwiseIncrease,  // u * (floor(eta*m) + chi)
  kDampedCosine,      // eta + u * (1 - m/E) * cos^2(2*eta*m)
};

RewardChangeKind ParseRewardChangeKind(const std::string& name);
std::string RewardChangeKindName(RewardChangeKind kind);

// External per-epoch reward change applied to every environmental reward.
struct RewardChange {
  RewardChangeKind kind = RewardChangeKind::kIdentity;
  double eta = 0.001;
  double chi = 10;
  int epoch_budget = 4000;  // E in the damped-cosine decay factor

  // Throws std::invalid_argument on eta <= 0 (non-identity) or E < 1.
  void Validate() const;

  double Apply(double u, int epoch) const;
  AffineChange AsAffine(int epoch) const;
};

}  // namespace peerinc

#endif  // PEERINC_REWARD_CHANGE_H_
