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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "peerinc/game.h"
#include "peerinc/reward_change.h"

namespace peerinc {
namespace {

RewardChange Make(RewardChangeKind kind) {
  RewardChange rc;
  rc.kind = kind;
  return rc;
}

TEST_CASE("reward change examples") {
  CHECK(Make(RewardChangeKind::kLinearIncrease).Apply(2, 0) == 2);
  CHECK(Make(RewardChangeKind::kStepwiseIncrease).Apply(1, 0) == 10);
  CHECK(Make(RewardChangeKind::kDampedCosine).Apply(1, 0) ==
        doctest::Approx(1.001).epsilon(1e-12));
  CHECK(Make(RewardChangeKind::kIdentity).Apply(-3.5, 123) == -3.5);
  const AffineChange id = Make(RewardChangeKind::kIdentity).AsAffine(17);
  CHECK(id.scale == 1);
  CHECK(id.shift == 0);
  const AffineChange exp_decay =
      Make(RewardChangeKind::kExponentialDecay).AsAffine(500);
  CHECK(exp_decay.scale == doctest::Approx(std::exp(-0.5)));
  CHECK(exp_decay.shift == 0);
  CHECK(Make(RewardChangeKind::kStepwiseIncrease).Apply(1, 2500) == 12);
}

TEST_CASE("apply equals the affine form for every kind") {
  for (RewardChangeKind kind :
       {RewardChangeKind::kIdentity, RewardChangeKind::kLinearIncrease,
        RewardChangeKind::kExponentialDecay,
        RewardChangeKind::kStepwiseIncrease, RewardChangeKind::kDampedCosine}) {
    RewardChange rc = Make(kind);
    rc.eta = 0.0037;
    rc.chi = 3;
    for (int m = 0; m < 4000; m += 37) {
      const AffineChange f = rc.AsAffine(m);
      for (double u : {-3.0, -0.25, 0.0, 1.0, 7.5}) {
        CHECK(rc.Apply(u, m) == doctest::Approx(f.Apply(u)).epsilon(1e-12));
      }
      if (kind != RewardChangeKind::kDampedCosine) CHECK(f.scale > 0);
    }
  }
}

TEST_CASE("monotone schedules") {
  const RewardChange lin = Make(RewardChangeKind::kLinearIncrease);
  const RewardChange dec = Make(RewardChangeKind::kExponentialDecay);
  for (int m = 0; m < 4000; ++m) {
    CHECK(lin.AsAffine(m + 1).scale > lin.AsAffine(m).scale);
    CHECK(dec.AsAffine(m + 1).scale < dec.AsAffine(m).scale);
    CHECK(dec.AsAffine(m).scale > 0);
  }
}

TEST_CASE("damped cosine zero crossings are degenerate") {
  const RewardChange rc = Make(RewardChangeKind::kDampedCosine);
  // cos(2 * eta * m) = 0 near m = pi / (4 * eta) ~ 785.4.
  CHECK(rc.AsAffine(785).IsDegenerate());
  CHECK_FALSE(rc.AsAffine(700).IsDegenerate());
  CHECK(rc.AsAffine(785).shift == 0.001);
}

TEST_CASE("reward change validation") {
  RewardChange rc = Make(RewardChangeKind::kLinearIncrease);
  rc.eta = 0;
  CHECK_THROWS_AS(rc.Validate(), std::invalid_argument);
  rc.kind = RewardChangeKind::kIdentity;
  CHECK_NOTHROW(rc.Validate());
  rc = Make(RewardChangeKind::kDampedCosine);
  rc.epoch_budget = 0;
  CHECK_THROWS_AS(rc.Validate(), std::invalid_argument);
  CHECK_THROWS(Make(RewardChangeKind::kIdentity).Apply(1, -1));
  CHECK_THROWS(ParseRewardChangeKind("quadratic"));
  CHECK(ParseRewardChangeKind("damped_cosine") ==
        RewardChangeKind::kDampedCosine);
}

}  // namespace
}  // namespace peerinc
