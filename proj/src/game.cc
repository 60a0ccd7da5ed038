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

#include "peerinc/game.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace peerinc {

char ActionChar(Action a) { return a == Action::kCooperate ? 'C' : 'D'; }

double PayoffMatrix::Payoff(Action own, Action other) const {
  if (own == Action::kCooperate) {
    return other == Action::kCooperate ? reward : sucker;
  }
  return other == Action::kCooperate ? temptation : punishment;
}

bool PayoffMatrix::IsFinite() const {
  return std::isfinite(reward) && std::isfinite(punishment) &&
         std::isfinite(temptation) && std::isfinite(sucker);
}

std::string PayoffMatrix::ToString() const {
  std::ostringstream out;
  out << "T=" << temptation << " R=" << reward << " P=" << punishment
      << " S=" << sucker;
  return out.str();
}

std::string GameClassName(GameClass c) {
  switch (c) {
    case GameClass::kStrictPD:
      return "StrictPD";
    case GameClass::kIteratedPD:
      return "IteratedPD";
    case GameClass::kNotPD:
      return "NotPD";
  }
  return "?";
}

Bimatrix Bimatrix::FromSymmetric(const PayoffMatrix& m) {
  Bimatrix g;
  for (Action row : {Action::kCooperate, Action::kDefect}) {
    for (Action col : {Action::kCooperate, Action::kDefect}) {
      g.cells[static_cast<int>(row)][static_cast<int>(col)] = {
          m.Payoff(row, col), m.Payoff(col, row)};
    }
  }
  return g;
}

GameClass Classify(const PayoffMatrix& m) {
  if (!m.IsFinite()) {
    throw std::invalid_argument("Classify: non-finite payoff " + m.ToString());
  }
  const bool dilemma = m.temptation > m.reward && m.reward > m.punishment &&
                       m.punishment > m.sucker;
  if (!dilemma) return GameClass::kNotPD;
  return 2 * m.reward > m.temptation + m.sucker ? GameClass::kIteratedPD
                                                : GameClass::kStrictPD;
}

PayoffMatrix ApplyAffine(const PayoffMatrix& m, const AffineChange& f) {
  return PayoffMatrix{f.Apply(m.reward), f.Apply(m.punishment),
                      f.Apply(m.temptation), f.Apply(m.sucker)};
}

PayoffMatrix ShapeDrive(const PayoffMatrix& m) {
  PayoffMatrix shaped = m;
  std::swap(shaped.temptation, shaped.sucker);
  return shaped;
}

Bimatrix ShapeInequityAversion(const PayoffMatrix& m, double alpha,
                               double beta) {
  if (alpha < 0 || beta < 0) {
    throw std::invalid_argument("ShapeInequityAversion: negative coefficient");
  }
  Bimatrix g = Bimatrix::FromSymmetric(m);
  auto shape = [&](double own, double other) {
    return own - alpha * std::max(other - own, 0.0) -
           beta * std::max(own - other, 0.0);
  };
  for (auto& row : g.cells) {
    for (auto& [a, b] : row) {
      const double a0 = a;
      a = shape(a0, b);
      b = shape(b, a0);
    }
  }
  return g;
}

PayoffMatrix ShapeMate(const PayoffMatrix& m, double token) {
  if (!(token > 0)) {
    throw std::invalid_argument("ShapeMate: token must be positive");
  }
  return PayoffMatrix{m.reward + 2 * token, m.punishment,
                      m.temptation - token, m.sucker + token};
}

double MateMinToken(const PayoffMatrix& m) {
  if (Classify(m) == GameClass::kNotPD) {
    throw std::invalid_argument("MateMinToken: not a prisoner's dilemma: " +
                                m.ToString());
  }
  return std::max(m.punishment - m.sucker, (m.temptation - m.reward) / 3.0);
}

namespace {

// True if `a` dominates `b` for the row player under `mode`.
bool Dominates(const PayoffMatrix& m, Action a, Action b, Dominance mode) {
  bool any_strict = false;
  for (Action other : {Action::kCooperate, Action::kDefect}) {
    const double ua = m.Payoff(a, other);
    const double ub = m.Payoff(b, other);
    if (mode == Dominance::kStrict && !(ua > ub)) return false;
    if (ua < ub) return false;
    any_strict = any_strict || ua > ub;
  }
  return any_strict;
}

}  // namespace

std::optional<Action> DominantAction(const PayoffMatrix& m, Dominance mode) {
  if (Dominates(m, Action::kCooperate, Action::kDefect, mode)) {
    return Action::kCooperate;
  }
  if (Dominates(m, Action::kDefect, Action::kCooperate, mode)) {
    return Action::kDefect;
  }
  return std::nullopt;
}

std::vector<ActionPair> PureNash(const Bimatrix& g) {
  std::vector<ActionPair> equilibria;
  for (Action row : {Action::kCooperate, Action::kDefect}) {
    for (Action col : {Action::kCooperate, Action::kDefect}) {
      const bool row_stays = g.At(Other(row), col).first <= g.At(row, col).first;
      const bool col_stays =
          g.At(row, Other(col)).second <= g.At(row, col).second;
      if (row_stays && col_stays) equilibria.push_back({row, col});
    }
  }
  return equilibria;
}

std::vector<ActionPair> PureNash(const PayoffMatrix& m) {
  return PureNash(Bimatrix::FromSymmetric(m));
}

}  // namespace peerinc
