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

#ifndef PEERINC_PROTOCOL_H_
#define PEERINC_PROTOCOL_H_

// Per-step reward-shaping protocols over communication neighbourhoods.

#include <array>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "peerinc/game.h"

namespace peerinc {

enum class ProtocolKind { kNaive, kDrive, kMate, kInequityAversion };

ProtocolKind ParseProtocolKind(const std::string& name);
std::string ProtocolKindName(ProtocolKind kind);

struct Protocol {
  ProtocolKind kind = ProtocolKind::kNaive;
  double token = 1.0;   // MATE token x
  double alpha = 5.0;   // inequity aversion, envy
  double beta = 0.05;   // inequity aversion, guilt

  void Validate() const;
};

// Distortion applied to the values an agent sends back as responses.
struct Misreport {
  enum class Mode { kNone, kOffset, kOverride };
  Mode mode = Mode::kNone;
  double value = 0;

  double Apply(double truthful) const;
};

struct ComplianceProfile {
  bool sends_requests = true;
  bool sends_responses = true;
  Misreport misreport;

  bool IsFull() const {
    return sends_requests && sends_responses &&
           misreport.mode == Misreport::Mode::kNone;
  }
};

struct ExchangeInput {
  std::vector<double> reward;   // modified reward of this step
  std::vector<double> average;  // epoch running mean of the modified reward
  std::vector<double> td;       // TD residual of `reward`; >= 0 opens the gate
  std::vector<std::vector<int>> neighborhoods;
  std::vector<ComplianceProfile> compliance;  // empty means fully compliant

  int num_agents() const { return static_cast<int>(reward.size()); }
  // Throws std::invalid_argument on inconsistent sizes or bad neighbours.
  void Validate() const;
};

struct Message {
  int sender = 0;
  int receiver = 0;
  double value = 0;
};

struct ExchangeTrace {
  std::vector<Message> requests;
  std::vector<Message> responses;
  std::vector<double> shaped;
  // Agents that sent at least one request and got no response back.
  std::vector<int> unanswered;
};

double TdResidual(double reward, double value_now, double value_next,
                  double gamma);

// Running mean after observing `reward` as the step-th sample (step >= 0).
double UpdateEpochAverage(double average, double reward, long step);

ExchangeTrace DriveExchange(const ExchangeInput& in);

// Token exchange: an agent whose gate is open sends token x to every
// neighbour. A receiver adds x once if it got any request and answers each
// requester with +x if its residual including x is >= 0, otherwise -x. The
// requester adds the smallest answer it received.
ExchangeTrace MateExchange(const ExchangeInput& in, double token);

std::vector<double> IaShape(std::span<const double> reward, double alpha,
                            double beta);

// Dispatches on the protocol kind. Naive passes rewards through.
ExchangeTrace Exchange(const Protocol& protocol, const ExchangeInput& in);

// One exchange round of a two-agent PD at steady state: each agent's epoch
// average equals its payoff in `profile`. Gate pattern: in (C,C) and a
// defector in (D,C) have residual 0, an exploited cooperator has residual
// -(x + 1) with x the MATE token (0 otherwise), and (D,D) has -1 for both.
std::array<double, 2> SimulatePdExchange(
    const Protocol& protocol, const PayoffMatrix& m, const ActionPair& profile,
    const std::array<ComplianceProfile, 2>& compliance = {});

// Symmetric matrix read off SimulatePdExchange for the four profiles.
PayoffMatrix ShapedMatrixFromExchange(const Protocol& protocol,
                                      const PayoffMatrix& m);

}  // namespace peerinc

#endif  // PEERINC_PROTOCOL_H_
