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

#include "peerinc/learner.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace peerinc {
namespace {

bool AllFinite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

void TrainConfig::Validate() const {
  auto fail = [](const std::string& key, const std::string& what) {
    throw std::invalid_argument("train." + key + ": " + what);
  };
  if (!(learning_rate > 0)) fail("learning_rate", "must be positive");
  if (!(clip_norm > 0)) fail("clip_norm", "must be positive");
  if (!(trace_lambda >= 0 && trace_lambda <= 1)) {
    fail("trace_lambda", "must lie in [0, 1]");
  }
  if (trace_lambda != 1.0) {
    fail("trace_lambda", "only Monte-Carlo targets (1) are implemented");
  }
  if (episodes_per_epoch < 1) fail("episodes_per_epoch", "must be >= 1");
  if (epochs < 1) fail("epochs", "must be >= 1");
  if (history_length != 1) fail("history_length", "only 1 is supported");
  if (hidden_layers < 1) fail("hidden_layers", "must be >= 1");
  if (hidden_units < 1) fail("hidden_units", "must be >= 1");
}

Adam::Adam(std::size_t size, double learning_rate, double beta1, double beta2,
           double epsilon)
    : lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(epsilon),
      m_(size, 0.0),
      v_(size, 0.0) {}

void Adam::Step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw std::invalid_argument("Adam::Step: size mismatch");
  }
  ++steps_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
  for (std::size_t k = 0; k < params.size(); ++k) {
    m_[k] = beta1_ * m_[k] + (1 - beta1_) * grad[k];
    v_[k] = beta2_ * v_[k] + (1 - beta2_) * grad[k] * grad[k];
    const double m_hat = m_[k] / c1;
    const double v_hat = v_[k] / c2;
    params[k] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
  }
}

double ClipGradientNorm(std::span<double> grad, double max_norm) {
  double sq = 0;
  for (double g : grad) sq += g * g;
  const double norm = std::sqrt(sq);
  if (norm > max_norm) {
    const double s = max_norm / norm;
    for (double& g : grad) g *= s;
  }
  return norm;
}

std::vector<double> ComputeReturns(std::span<const double> rewards,
                                   double gamma) {
  std::vector<double> g(rewards.size());
  double acc = 0;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    acc = rewards[t] + gamma * acc;
    g[t] = acc;
  }
  return g;
}

std::vector<double> NormalizeReturns(std::span<const double> returns,
                                     ReturnStats* stats) {
  const std::size_t n = returns.size();
  if (n < 2) {
    throw std::invalid_argument("NormalizeReturns: need at least 2 values");
  }
  double mean = 0;
  for (double g : returns) mean += g;
  mean /= static_cast<double>(n);
  double ss = 0;
  for (double g : returns) ss += (g - mean) * (g - mean);
  double sd = std::sqrt(ss / static_cast<double>(n - 1));
  // A constant batch leaves rounding noise in ss; do not amplify it.
  if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) sd = 0;
  if (stats != nullptr) *stats = {mean, sd};
  std::vector<double> out(n, 0.0);
  if (sd > 0) {
    for (std::size_t k = 0; k < n; ++k) out[k] = (returns[k] - mean) / sd;
  }
  return out;
}

std::size_t EpochData::num_samples() const {
  std::size_t n = 0;
  for (const auto& e : episodes) n += e.size();
  return n;
}

std::vector<double> Softmax(std::span<const double> logits) {
  const double mx = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double z = 0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    p[k] = std::exp(logits[k] - mx);
    z += p[k];
  }
  for (double& v : p) v /= z;
  return p;
}

PolicyGradientLearner::PolicyGradientLearner(int observation_size,
                                             int num_actions,
                                             const TrainConfig& config,
                                             Rng& init_rng)
    : config_(config),
      policy_(Mlp::Create(observation_size, config.hidden_layers,
                          config.hidden_units, num_actions, init_rng)),
      value_(Mlp::Create(observation_size, config.hidden_layers,
                         config.hidden_units, 1, init_rng)),
      policy_opt_(policy_.num_parameters(), config.learning_rate),
      value_opt_(value_.num_parameters(), config.learning_rate) {
  config_.Validate();
}

std::vector<double> PolicyGradientLearner::ActionProbabilities(
    std::span<const double> obs) const {
  const std::vector<double> logits = policy_.Forward(obs);
  if (!AllFinite(logits)) {
    throw std::runtime_error("policy produced non-finite logits");
  }
  return Softmax(logits);
}

PolicyGradientLearner::Sample PolicyGradientLearner::SelectAction(
    std::span<const double> obs, Rng& rng) const {
  const std::vector<double> p = ActionProbabilities(obs);
  const double u = rng.Uniform();
  double acc = 0;
  int a = static_cast<int>(p.size()) - 1;
  for (std::size_t k = 0; k < p.size(); ++k) {
    acc += p[k];
    if (u < acc) {
      a = static_cast<int>(k);
      break;
    }
  }
  return {a, std::log(p[a])};
}

int PolicyGradientLearner::GreedyAction(std::span<const double> obs) const {
  const std::vector<double> p = ActionProbabilities(obs);
  return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

double PolicyGradientLearner::Value(std::span<const double> obs) const {
  double v = 0;
  value_.Forward(obs, std::span<double>(&v, 1));
  return v;
}

double PolicyGradientLearner::ReturnScaleValue(
    std::span<const double> obs) const {
  const double v = Value(obs);
  if (last_stats_.stddev == 0) return last_stats_.mean;
  return last_stats_.mean + last_stats_.stddev * v;
}

UpdateStats PolicyGradientLearner::Update(const EpochData& data, double gamma) {
  std::vector<std::vector<double>> inputs;
  std::vector<int> actions;
  std::vector<double> returns;
  inputs.reserve(data.num_samples());
  for (const auto& episode : data.episodes) {
    std::vector<double> rewards;
    rewards.reserve(episode.size());
    for (const Experience& e : episode) {
      inputs.push_back(e.observation);
      actions.push_back(e.action);
      rewards.push_back(e.reward);
    }
    const std::vector<double> g = ComputeReturns(rewards, gamma);
    returns.insert(returns.end(), g.begin(), g.end());
  }
  if (!AllFinite(returns)) {
    throw std::runtime_error("non-finite return in epoch data (samples=" +
                             std::to_string(returns.size()) + ")");
  }
  UpdateStats stats;
  const std::vector<double> g_norm = NormalizeReturns(returns, &stats.returns);
  const std::size_t n = inputs.size();

  // The critic pass also records the baseline used by the actor.
  std::vector<double> baseline(n);
  const OutputLoss squared = SquaredErrorLoss(g_norm);
  const OutputLoss recording = [&](std::size_t s, std::span<const double> out,
                                   std::span<double> g) {
    baseline[s] = out[0];
    return squared(s, out, g);
  };
  std::vector<double> value_grad;
  stats.value_loss = BatchLoss(value_, inputs, recording, &value_grad);

  std::vector<double> weights(n);
  for (std::size_t s = 0; s < n; ++s) {
    weights[s] = (g_norm[s] - baseline[s]) / static_cast<double>(n);
  }
  std::vector<double> policy_grad;
  stats.policy_loss =
      BatchLoss(policy_, inputs, SoftmaxNllLoss(actions, weights), &policy_grad);

  if (!AllFinite(policy_grad) || !AllFinite(value_grad)) {
    std::ostringstream msg;
    msg << "non-finite gradient: samples=" << n
        << " return_mean=" << stats.returns.mean
        << " return_sd=" << stats.returns.stddev
        << " policy_loss=" << stats.policy_loss
        << " value_loss=" << stats.value_loss;
    throw std::runtime_error(msg.str());
  }
  stats.policy_grad_norm = ClipGradientNorm(policy_grad, config_.clip_norm);
  stats.value_grad_norm = ClipGradientNorm(value_grad, config_.clip_norm);
  policy_opt_.Step(policy_.parameters(), policy_grad);
  value_opt_.Step(value_.parameters(), value_grad);
  last_stats_ = stats.returns;
  return stats;
}

}  // namespace peerinc
