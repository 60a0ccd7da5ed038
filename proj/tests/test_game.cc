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
#include <limits>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "oracles.h"
#include "peerinc/game.h"

namespace peerinc {
namespace {

using enum Action;

const PayoffMatrix kIpd = PayoffMatrix::Trps(0, -1, -2, -3);
const PayoffMatrix kCanonical = PayoffMatrix::Trps(5, 3, 1, 0);

std::set<std::pair<int, int>> AsSet(const std::vector<ActionPair>& eq) {
  std::set<std::pair<int, int>> out;
  for (const ActionPair& p : eq) {
    out.insert({static_cast<int>(p[0]), static_cast<int>(p[1])});
  }
  return out;
}

TEST_CASE("classify") {
  CHECK(Classify(kIpd) == GameClass::kIteratedPD);
  CHECK(Classify(kCanonical) == GameClass::kIteratedPD);
  // T + S >= 2R: one-shot dilemma only.
  CHECK(Classify(PayoffMatrix::Trps(10, 3, 1, 0)) == GameClass::kStrictPD);
  CHECK(Classify(PayoffMatrix::Trps(3, 3, 1, 0)) == GameClass::kNotPD);
  CHECK(Classify(PayoffMatrix::Trps(1, 3, 2, 0)) == GameClass::kNotPD);
  CHECK_THROWS_AS(
      Classify(PayoffMatrix::Trps(std::numeric_limits<double>::quiet_NaN(), 3,
                                  1, 0)),
      std::invalid_argument);
}

TEST_CASE("drive shaping swaps temptation and sucker") {
  const PayoffMatrix d = ShapeDrive(kCanonical);
  CHECK(d == PayoffMatrix::Trps(0, 3, 1, 5));
  CHECK(DominantAction(d) == kCooperate);
  CHECK(AsSet(PureNash(d)) == std::set<std::pair<int, int>>{{0, 0}});
  const PayoffMatrix i = ShapeDrive(kIpd);
  CHECK(i == PayoffMatrix::Trps(-3, -1, -2, 0));
  CHECK(DominantAction(i) == kCooperate);
  CHECK(AsSet(PureNash(kIpd)) == std::set<std::pair<int, int>>{{1, 1}});
  CHECK(DominantAction(kIpd) == kDefect);
}

TEST_CASE("mate token threshold") {
  CHECK(MateMinToken(kIpd) == 1.0);
  const PayoffMatrix scaled = ApplyAffine(kIpd, {10.0, 0.0, 0});
  CHECK(MateMinToken(scaled) == 10.0);
  CHECK(DominantAction(ShapeMate(kIpd, 1.0), Dominance::kWeak) == kCooperate);
  CHECK(DominantAction(ShapeMate(scaled, 1.0), Dominance::kWeak) !=
        kCooperate);
  CHECK(DominantAction(ShapeMate(kIpd, 0.99), Dominance::kWeak) != kCooperate);
  CHECK_THROWS_AS(ShapeMate(kIpd, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(MateMinToken(PayoffMatrix::Trps(1, 3, 2, 0)),
                  std::invalid_argument);
}

TEST_CASE("inequity aversion cells") {
  const Bimatrix g = ShapeInequityAversion(kCanonical, 5, 0.05);
  CHECK(g.At(kDefect, kCooperate).first == doctest::Approx(4.75));
  CHECK(g.At(kDefect, kCooperate).second == doctest::Approx(-25));
  CHECK(g.At(kCooperate, kCooperate).first == 3);
  CHECK_THROWS_AS(ShapeInequityAversion(kCanonical, -1, 0),
                  std::invalid_argument);
}

TEST_CASE("pure nash matches the four-cell oracle") {
  Rng rng(7);
  for (int k = 0; k < 2000; ++k) {
    // Mix random dilemmas and arbitrary games, with occasional ties.
    PayoffMatrix m;
    if (k % 2 == 0) {
      m = oracle::RandomStrictPd(rng);
    } else {
      auto draw = [&] { return std::round(rng.Uniform(-3, 3)); };
      m = PayoffMatrix::Trps(draw(), draw(), draw(), draw());
    }
    CHECK(AsSet(PureNash(m)) == oracle::Nash2x2(m));
  }
}

TEST_CASE("drive makes cooperation dominant in every dilemma") {
  Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    const PayoffMatrix m = oracle::RandomStrictPd(rng);
    REQUIRE(Classify(m) != GameClass::kNotPD);
    const PayoffMatrix d = ShapeDrive(m);
    CHECK(DominantAction(d) == kCooperate);
    CHECK(AsSet(PureNash(d)) == std::set<std::pair<int, int>>{{0, 0}});
  }
}

TEST_CASE("positive affine maps preserve class and shaped dominance") {
  Rng rng(13);
  for (int k = 0; k < 1000; ++k) {
    const PayoffMatrix m = oracle::RandomStrictPd(rng);
    const AffineChange f{rng.Uniform(1e-3, 100), rng.Uniform(-50, 50), k};
    const PayoffMatrix changed = ApplyAffine(m, f);
    CHECK(Classify(changed) == Classify(m));
    CHECK(DominantAction(ShapeDrive(changed)) == kCooperate);
    CHECK(DominantAction(changed) == kDefect);
  }
}

TEST_CASE("affine change degeneracy") {
  CHECK(AffineChange{1e-7, 0.001, 0}.IsDegenerate());
  CHECK_FALSE(AffineChange{1e-5, 0.0, 0}.IsDegenerate());
  CHECK(AffineChange{2, 5, 0}.Apply(1) == 7);
}

}  // namespace
}  // namespace peerinc
