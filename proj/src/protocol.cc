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

#include "peerinc/protocol.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace peerinc {
namespace {

constexpr double kNone = std::numeric_limits<double>::infinity();

const ComplianceProfile& ProfileOf(const ExchangeInput& in, int agent) {
  static const ComplianceProfile kFull;
  return in.compliance.empty() ? kFull : in.compliance[agent];
}

}  // namespace

ProtocolKind ParseProtocolKind(const std::string& name) {
  if (name == "naive") return ProtocolKind::kNaive;
  if (name == "drive") return ProtocolKind::kDrive;
  if (name == "mate") return ProtocolKind::kMate;
  if (name == "ia") return ProtocolKind::kInequityAversion;
  throw std::invalid_argument("unknown protocol kind '" + name +
                              "' (expected naive, drive, mate or ia)");
}

std::string ProtocolKindName(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kNaive: return "naive";
    case ProtocolKind::kDrive: return "drive";
    case ProtocolKind::kMate: return "mate";
    case ProtocolKind::kInequityAversion: return "ia";
  }
  return "?";
}

void Protocol::Validate() const {
  if (kind == ProtocolKind::kMate && !(token > 0 && std::isfinite(token))) {
    throw std::invalid_argument("protocol.token_x: must be positive");
  }
  if (kind == ProtocolKind::kInequityAversion) {
    if (!(alpha >= 0 && std::isfinite(alpha))) {
      throw std::invalid_argument("protocol.alpha: must be >= 0");
    }
    if (!(beta >= 0 && std::isfinite(beta))) {
      throw std::invalid_argument("protocol.beta: must be >= 0");
    }
  }
}

double Misreport::Apply(double truthful) const {
  switch (mode) {
    case Mode::kNone: return truthful;
    case Mode::kOffset: return truthful + value;
    case Mode::kOverride: return value;
  }
  return truthful;
}

void ExchangeInput::Validate() const {
  const std::size_t n = reward.size();
  if (average.size() != n || td.size() != n || neighborhoods.size() != n) {
    throw std::invalid_argument("ExchangeInput: per-agent size mismatch");
  }
  if (!compliance.empty() && compliance.size() != n) {
    throw std::invalid_argument("ExchangeInput: compliance size mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (int j : neighborhoods[i]) {
      if (j < 0 || static_cast<std::size_t>(j) >= n) {
        throw std::invalid_argument("ExchangeInput: neighbour out of range");
      }
      if (static_cast<std::size_t>(j) == i) {
        throw std::invalid_argument("ExchangeInput: agent lists itself");
      }
    }
  }
}

double TdResidual(double reward, double value_now, double value_next,
                  double gamma) {
  return reward + gamma * value_next - value_now;
}

double UpdateEpochAverage(double average, double reward, long step) {
  const double t = static_cast<double>(step);
  return (t * average + reward) / (t + 1.0);
}

ExchangeTrace DriveExchange(const ExchangeInput& in) {
  in.Validate();
  const int n = in.num_agents();
  ExchangeTrace trace;
  std::vector<bool> requested(n, false);
  std::vector<double> req_min(n, kNone);
  std::vector<double> res_min(n, kNone);

  for (int i = 0; i < n; ++i) {
    if (in.td[i] < 0 || !ProfileOf(in, i).sends_requests) continue;
    for (int j : in.neighborhoods[i]) {
      trace.requests.push_back({i, j, in.reward[i]});
      requested[i] = true;
    }
  }
  for (const Message& req : trace.requests) {
    const int j = req.receiver;
    const ComplianceProfile& c = ProfileOf(in, j);
    if (!c.sends_responses) continue;
    const double delta = c.misreport.Apply(in.average[j] - req.value);
    trace.responses.push_back({j, req.sender, delta});
    req_min[j] = std::min(req_min[j], delta);
    res_min[req.sender] = std::min(res_min[req.sender], delta);
  }

  trace.shaped.resize(n);
  for (int i = 0; i < n; ++i) {
    double shaped = in.reward[i];
    if (req_min[i] != kNone) shaped -= req_min[i];
    if (requested[i]) {
      if (res_min[i] != kNone) {
        shaped += res_min[i];
      } else {
        trace.unanswered.push_back(i);
      }
    }
    trace.shaped[i] = shaped;
  }
  return trace;
}

ExchangeTrace MateExchange(const ExchangeInput& in, double token) {
  in.Validate();
  if (!(token > 0)) throw std::invalid_argument("MateExchange: token <= 0");
  const int n = in.num_agents();
  ExchangeTrace trace;
  std::vector<bool> requested(n, false);
  std::vector<bool> received(n, false);
  std::vector<double> res_min(n, kNone);

  for (int i = 0; i < n; ++i) {
    if (in.td[i] < 0 || !ProfileOf(in, i).sends_requests) continue;
    for (int j : in.neighborhoods[i]) {
      trace.requests.push_back({i, j, token});
      requested[i] = true;
      received[j] = true;
    }
  }
  for (const Message& req : trace.requests) {
    const int j = req.receiver;
    const ComplianceProfile& c = ProfileOf(in, j);
    if (!c.sends_responses) continue;
    // The residual is affine in the reward, so adding x shifts it by x.
    const double answer = c.misreport.Apply(in.td[j] + token >= 0 ? token
                                                                  : -token);
    trace.responses.push_back({j, req.sender, answer});
    res_min[req.sender] = std::min(res_min[req.sender], answer);
  }

  trace.shaped.resize(n);
  for (int i = 0; i < n; ++i) {
    double shaped = in.reward[i];
    if (received[i]) shaped += token;
    if (requested[i]) {
      if (res_min[i] != kNone) {
        shaped += res_min[i];
      } else {
        trace.unanswered.push_back(i);
      }
    }
    trace.shaped[i] = shaped;
  }
  return trace;
}

std::vector<double> IaShape(std::span<const double> reward, double alpha,
                            double beta) {
  const std::size_t n = reward.size();
  if (n < 2) throw std::invalid_argument("IaShape: need at least 2 agents");
  std::vector<double> shaped(n);
  const double scale = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    double envy = 0;
    double guilt = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      envy += std::max(reward[j] - reward[i], 0.0);
      guilt += std::max(reward[i] - reward[j], 0.0);
    }
    shaped[i] = reward[i] - alpha * scale * envy - beta * scale * guilt;
  }
  return shaped;
}

ExchangeTrace Exchange(const Protocol& protocol, const ExchangeInput& in) {
  switch (protocol.kind) {
    case ProtocolKind::kDrive:
      return DriveExchange(in);
    case ProtocolKind::kMate:
      return MateExchange(in, protocol.token);
    case ProtocolKind::kInequityAversion: {
      ExchangeTrace trace;
      trace.shaped = IaShape(in.reward, protocol.alpha, protocol.beta);
      return trace;
    }
    case ProtocolKind::kNaive:
      break;
  }
  ExchangeTrace trace;
  trace.shaped = in.reward;
  return trace;
}

std::array<double, 2> SimulatePdExchange(
    const Protocol& protocol, const PayoffMatrix& m, const ActionPair& profile,
    const std::array<ComplianceProfile, 2>& compliance) {
  const double x = protocol.kind == ProtocolKind::kMate ? protocol.token : 0.0;
  ExchangeInput in;
  in.neighborhoods = {{1}, {0}};
  in.compliance = {compliance[0], compliance[1]};
  for (int i = 0; i < 2; ++i) {
    const Action own = profile[i];
    const Action other = profile[1 - i];
    const double u = m.Payoff(own, other);
    in.reward.push_back(u);
    in.average.push_back(u);
    double td = -1.0;
    if (own == other && own == Action::kCooperate) td = 0.0;
    if (own == Action::kDefect && other == Action::kCooperate) td = 0.0;
    if (own == Action::kCooperate && other == Action::kDefect) td = -(x + 1.0);
    in.td.push_back(td);
  }
  const ExchangeTrace trace = Exchange(protocol, in);
  return {trace.shaped[0], trace.shaped[1]};
}

PayoffMatrix ShapedMatrixFromExchange(const Protocol& protocol,
                                      const PayoffMatrix& m) {
  using enum Action;
  PayoffMatrix out;
  out.reward = SimulatePdExchange(protocol, m, {kCooperate, kCooperate})[0];
  out.punishment = SimulatePdExchange(protocol, m, {kDefect, kDefect})[0];
  out.temptation = SimulatePdExchange(protocol, m, {kDefect, kCooperate})[0];
  out.sucker = SimulatePdExchange(protocol, m, {kCooperate, kDefect})[0];
  return out;
}

}  // namespace peerinc
