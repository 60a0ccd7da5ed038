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

#include "peerinc/reward_change.h"

#include <cmath>
#include <stdexcept>

namespace peerinc {

RewardChangeKind ParseRewardChangeKind(const std::string& name) {
  if (name == "identity") return RewardChangeKind::kIdentity;
  if (name == "linear") return RewardChangeKind::kLinearIncrease;
  if (name == "exponential") return RewardChangeKind::kExponentialDecay;
  if (name == "stepwise") return RewardChangeKind::kStepwiseIncrease;
  if (name == "damped_cosine") return RewardChangeKind::kDampedCosine;
  throw std::invalid_argument("unknown reward_change.kind '" + name +
                              "' (identity|linear|exponential|stepwise|"
                              "damped_cosine)");
}

std::string RewardChangeKindName(RewardChangeKind kind) {
  switch (kind) {
    case RewardChangeKind::kIdentity:
      return "identity";
    case RewardChangeKind::kLinearIncrease:
      return "linear";
    case RewardChangeKind::kExponentialDecay:
      return "exponential";
    case RewardChangeKind::kStepwiseIncrease:
      return "stepwise";
    case RewardChangeKind::kDampedCosine:
      return "damped_cosine";
  }
  return "?";
}

void RewardChange::Validate() const {
  if (kind != RewardChangeKind::kIdentity && !(eta > 0)) {
    throw std::invalid_argument("reward_change.eta must be positive");
  }
  if (kind == RewardChangeKind::kDampedCosine && epoch_budget < 1) {
    throw std::invalid_argument("reward_change epoch budget must be >= 1");
  }
}

AffineChange RewardChange::AsAffine(int epoch) const {
  if (epoch < 0) throw std::invalid_argument("RewardChange: negative epoch");
  const double m = epoch;
  AffineChange f{1.0, 0.0, epoch};
  switch (kind) {
    case RewardChangeKind::kIdentity:
      break;
    case RewardChangeKind::kLinearIncrease:
      f.scale = eta * m + 1;
      break;
    case RewardChangeKind::kExponentialDecay:
      f.scale = std::exp(-eta * m);
      break;
    case RewardChangeKind::kStepwiseIncrease:
      f.scale = std::floor(eta * m) + chi;
      break;
    case RewardChangeKind::kDampedCosine: {
      const double c = std::cos(2 * eta * m);
      f.scale = (1 - m / epoch_budget) * c * c;
      f.shift = eta;
      break;
    }
  }
  return f;
}

double RewardChange::Apply(double u, int epoch) const {
  if (epoch < 0) throw std::invalid_argument("RewardChange: negative epoch");
  const double m = epoch;
  switch (kind) {
    case RewardChangeKind::kIdentity:
      return u;
    case RewardChangeKind::kLinearIncrease:
      return u * (eta * m + 1);
    case RewardChangeKind::kExponentialDecay:
      return u * std::exp(-eta * m);
    case RewardChangeKind::kStepwiseIncrease:
      return u * (std::floor(eta * m) + chi);
    case RewardChangeKind::kDampedCosine: {
      const double c = std::cos(2 * eta * m);
      return eta + u * (1 - m / epoch_budget) * c * c;
    }
  }
  return u;
}

}  // namespace peerinc
