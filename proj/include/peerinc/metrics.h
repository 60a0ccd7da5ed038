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

#ifndef PEERINC_METRICS_H_
#define PEERINC_METRICS_H_

// Cooperation measures over original (unmodified) environment rewards.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peerinc/environment.h"

namespace peerinc {

struct EpisodeLog {
  int num_agents = 0;
  std::vector<std::vector<double>> rewards;        // [t][agent]
  std::vector<std::vector<int>> actions;           // [t][agent]
  std::vector<std::vector<AgentEvents>> events;    // [t][agent]

  explicit EpisodeLog(int n = 0) : num_agents(n) {}
  void Append(std::span<const int> joint_action, const EnvStep& step);
  int horizon() const { return static_cast<int>(rewards.size()); }
  std::vector<double> AgentTotals() const;
};

double SocialWelfare(const EpisodeLog& log);

// 1 - sum_ij |T_i - T_j| / (2 n sum_i T_i); nullopt when the total is <= 0.
std::optional<double> Equality(const EpisodeLog& log);
std::optional<double> EqualityFromTotals(std::span<const double> totals);

// Mean over agents of the mean step index with positive reward; agents with
// no positive reward contribute 0.
double Sustainability(const EpisodeLog& log);

// n minus the number of frozen agent-steps divided by the horizon.
double Peace(const EpisodeLog& log);

// Fraction of steps where every agent played action 0 (cooperate).
double CooperationRate(const EpisodeLog& log);

// Own-colour pickups over all pickups; nullopt without pickups.
std::optional<double> OwnCoinRate(const EpisodeLog& log);

struct MetricValue {
  std::string name;
  std::optional<double> value;
};

// Metric subset reported for an environment: IPD {U, coop_rate},
// Coin {U, E, own_coin_rate}, Harvest {U, E, S, P}.
std::vector<std::string> MetricNames(EnvKind kind);
std::vector<MetricValue> EpisodeMetrics(EnvKind kind, const EpisodeLog& log);

}  // namespace peerinc

#endif  // PEERINC_METRICS_H_
