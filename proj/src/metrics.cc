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

#include "peerinc/metrics.h"

#include <cmath>
#include <stdexcept>

namespace peerinc {

void EpisodeLog::Append(std::span<const int> joint_action,
                        const EnvStep& step) {
  if (static_cast<int>(joint_action.size()) != num_agents ||
      static_cast<int>(step.rewards.size()) != num_agents) {
    throw std::invalid_argument("EpisodeLog::Append: agent count mismatch");
  }
  rewards.push_back(step.rewards);
  actions.emplace_back(joint_action.begin(), joint_action.end());
  if (step.events.empty()) {
    events.emplace_back(num_agents);
  } else {
    events.push_back(step.events);
  }
}

std::vector<double> EpisodeLog::AgentTotals() const {
  std::vector<double> totals(num_agents, 0.0);
  for (const auto& row : rewards) {
    for (int i = 0; i < num_agents; ++i) totals[i] += row[i];
  }
  return totals;
}

double SocialWelfare(const EpisodeLog& log) {
  double total = 0;
  for (double t : log.AgentTotals()) total += t;
  return total;
}

std::optional<double> EqualityFromTotals(std::span<const double> totals) {
  const std::size_t n = totals.size();
  double sum = 0;
  for (double t : totals) sum += t;
  if (n == 0 || !(sum > 0)) return std::nullopt;
  double diff = 0;
  for (double a : totals) {
    for (double b : totals) diff += std::abs(a - b);
  }
  return 1.0 - diff / (2.0 * static_cast<double>(n) * sum);
}

std::optional<double> Equality(const EpisodeLog& log) {
  const std::vector<double> totals = log.AgentTotals();
  return EqualityFromTotals(totals);
}

double Sustainability(const EpisodeLog& log) {
  if (log.num_agents == 0) return 0;
  double acc = 0;
  for (int i = 0; i < log.num_agents; ++i) {
    double sum_t = 0;
    int count = 0;
    for (int t = 0; t < log.horizon(); ++t) {
      if (log.rewards[t][i] > 0) {
        sum_t += t;
        ++count;
      }
    }
    if (count > 0) acc += sum_t / count;
  }
  return acc / log.num_agents;
}

double Peace(const EpisodeLog& log) {
  if (log.horizon() == 0) return log.num_agents;
  int frozen = 0;
  for (const auto& row : log.events) {
    for (const AgentEvents& e : row) frozen += e.frozen ? 1 : 0;
  }
  return log.num_agents - static_cast<double>(frozen) / log.horizon();
}

double CooperationRate(const EpisodeLog& log) {
  if (log.horizon() == 0) return 0;
  int coop = 0;
  for (const auto& a : log.actions) {
    bool all = true;
    for (int x : a) all = all && x == 0;
    coop += all ? 1 : 0;
  }
  return static_cast<double>(coop) / log.horizon();
}

std::optional<double> OwnCoinRate(const EpisodeLog& log) {
  int own = 0;
  int all = 0;
  for (const auto& row : log.events) {
    for (const AgentEvents& e : row) {
      if (!e.picked_coin) continue;
      ++all;
      own += e.own_coin ? 1 : 0;
    }
  }
  if (all == 0) return std::nullopt;
  return static_cast<double>(own) / all;
}

std::vector<std::string> MetricNames(EnvKind kind) {
  switch (kind) {
    case EnvKind::kIpd: return {"U", "coop_rate"};
    case EnvKind::kCoin: return {"U", "E", "own_coin_rate"};
    case EnvKind::kHarvest: return {"U", "E", "S", "P"};
  }
  return {};
}

std::vector<MetricValue> EpisodeMetrics(EnvKind kind, const EpisodeLog& log) {
  std::vector<MetricValue> out;
  for (const std::string& name : MetricNames(kind)) {
    std::optional<double> v;
    if (name == "U") v = SocialWelfare(log);
    if (name == "E") v = Equality(log);
    if (name == "S") v = Sustainability(log);
    if (name == "P") v = Peace(log);
    if (name == "coop_rate") v = CooperationRate(log);
    if (name == "own_coin_rate") v = OwnCoinRate(log);
    out.push_back({name, v});
  }
  return out;
}

}  // namespace peerinc
