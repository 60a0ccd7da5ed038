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

#ifndef PEERINC_GAME_H_
#define PEERINC_GAME_H_

// Closed-form analysis of symmetric 2x2 social dilemmas: classification,
// protocol-shaped payoff matrices, affine reward changes and pure Nash
// equilibria.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace peerinc {

enum class Action : int { kCooperate = 0, kDefect = 1 };

inline Action Other(Action a) {
  return a == Action::kCooperate ? Action::kDefect : Action::kCooperate;
}
char ActionChar(Action a);

// Symmetric 2x2 game. The row player receives `reward` for (C,C),
// `sucker` for (C,D), `temptation` for (D,C) and `punishment` for (D,D).
struct PayoffMatrix {
  double reward = 0;
  double punishment = 0;
  double temptation = 0;
  double sucker = 0;

  // Argument order follows the usual T > R > P > S chain.
  static PayoffMatrix Trps(double t, double r, double p, double s) {
    return PayoffMatrix{r, p, t, s};
  }

  double Payoff(Action own, Action other) const;
  bool IsFinite() const;
  std::string ToString() const;

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

enum class GameClass { kStrictPD, kIteratedPD, kNotPD };
std::string GameClassName(GameClass c);

// Epoch-level reward change r' = scale * r + shift.
struct AffineChange {
  double scale = 1;
  double shift = 0;
  int epoch = 0;

  double Apply(double r) const { return scale * r + shift; }
  // Epochs whose scale is (numerically) zero collapse every payoff onto
  // `shift`; the dilemma analysis skips them.
  bool IsDegenerate(double eps = 1e-6) const { return scale < eps; }
};

// General two-player 2x2 game: cells[row][col] = (row payoff, col payoff),
// indexed by the Action values.
struct Bimatrix {
  std::array<std::array<std::pair<double, double>, 2>, 2> cells{};

  static Bimatrix FromSymmetric(const PayoffMatrix& m);
  const std::pair<double, double>& At(Action row, Action col) const {
    return cells[static_cast<int>(row)][static_cast<int>(col)];
  }
};

using ActionPair = std::array<Action, 2>;

// Throws std::invalid_argument for non-finite entries. Ties are NotPD.
GameClass Classify(const PayoffMatrix& m);

PayoffMatrix ApplyAffine(const PayoffMatrix& m, const AffineChange& f);

// DRIVE under full compliance at steady state: temptation and sucker swap.
PayoffMatrix ShapeDrive(const PayoffMatrix& m);

// Inequity-aversion shaping of every cell:
// u_i - alpha*max(u_j-u_i, 0) - beta*max(u_i-u_j, 0).
Bimatrix ShapeInequityAversion(const PayoffMatrix& m, double alpha,
                               double beta);

// Steady-state matrix of a fixed-token exchange with token x > 0:
// CC -> R+2x, CD -> S+x, DC -> T-x, DD -> P.
PayoffMatrix ShapeMate(const PayoffMatrix& m, double token);

// Smallest token making cooperation (weakly) dominant in ShapeMate:
// max{P - S, (T - R) / 3}. Requires a prisoner's dilemma.
double MateMinToken(const PayoffMatrix& m);

enum class Dominance {
  kStrict,  // strictly better against every opponent action
  kWeak,    // never worse, strictly better against at least one
};

std::optional<Action> DominantAction(const PayoffMatrix& m,
                                     Dominance mode = Dominance::kStrict);

// Pure profiles where no player gains strictly by deviating alone.
std::vector<ActionPair> PureNash(const Bimatrix& g);
std::vector<ActionPair> PureNash(const PayoffMatrix& m);

}  // namespace peerinc

#endif  // PEERINC_GAME_H_
