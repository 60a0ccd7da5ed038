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

#ifndef PEERINC_LEARNER_H_
#define PEERINC_LEARNER_H_

// Independent actor-critic learner: softmax policy, value baseline,
// per-epoch return normalization and one Adam step per epoch.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "peerinc/mlp.h"
#include "peerinc/rng.h"

namespace peerinc {

struct TrainConfig {
  double learning_rate = 0.001;
  double clip_norm = 1.0;
  double trace_lambda = 1.0;
  int episodes_per_epoch = 10;
  int epochs = 4000;
  int history_length = 1;
  int hidden_layers = 2;
  int hidden_units = 64;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

class Adam {
 public:
  Adam(std::size_t size, double learning_rate, double beta1 = 0.9,
       double beta2 = 0.999, double epsilon = 1e-8);
  void Step(std::span<double> params, std::span<const double> grad);
  long steps() const { return steps_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  long steps_ = 0;
  std::vector<double> m_, v_;
};

// Scales grad in place so its L2 norm is at most max_norm; returns the norm
// before clipping.
double ClipGradientNorm(std::span<double> grad, double max_norm);

struct ReturnStats {
  double mean = 0;
  double stddev = 0;  // sample standard deviation (n - 1 denominator)
};

// Discounted suffix sums of one episode.
std::vector<double> ComputeReturns(std::span<const double> rewards,
                                   double gamma);

// (G - mean) / stddev; all zeros when stddev is 0. Needs >= 2 values.
std::vector<double> NormalizeReturns(std::span<const double> returns,
                                     ReturnStats* stats = nullptr);

struct Experience {
  std::vector<double> observation;
  int action = 0;
  double reward = 0;  // shaped reward used for learning
};

// All experience of one agent in one epoch, split by episode.
struct EpochData {
  std::vector<std::vector<Experience>> episodes;
  std::size_t num_samples() const;
};

struct UpdateStats {
  ReturnStats returns;
  double policy_loss = 0;
  double value_loss = 0;
  double policy_grad_norm = 0;  // before clipping
  double value_grad_norm = 0;
};

class PolicyGradientLearner {
 public:
  PolicyGradientLearner(int observation_size, int num_actions,
                        const TrainConfig& config, Rng& init_rng);

  std::vector<double> ActionProbabilities(std::span<const double> obs) const;
  struct Sample {
    int action = 0;
    double log_prob = 0;
  };
  // Draws from the policy; throws on non-finite network output.
  Sample SelectAction(std::span<const double> obs, Rng& rng) const;
  int GreedyAction(std::span<const double> obs) const;
  // Critic output, which estimates the normalized return.
  double Value(std::span<const double> obs) const;
  // Critic mapped back to the return scale with the statistics of the last
  // update: mean + stddev * Value(obs). Before the first update this is
  // Value(obs).
  double ReturnScaleValue(std::span<const double> obs) const;
  const ReturnStats& last_return_stats() const { return last_stats_; }

  // Normalizes returns, then takes one Adam step on the actor loss
  // -mean[(G_norm - V) log pi(a|s)] and the critic loss mean[(V - G_norm)^2].
  // Both gradients are taken at the current parameters. Throws
  // std::runtime_error on non-finite gradients.
  UpdateStats Update(const EpochData& data, double gamma);

  const Mlp& policy() const { return policy_; }
  const Mlp& value() const { return value_; }
  Mlp& mutable_policy() { return policy_; }
  Mlp& mutable_value() { return value_; }

 private:
  TrainConfig config_;
  Mlp policy_;
  Mlp value_;
  Adam policy_opt_;
  Adam value_opt_;
  ReturnStats last_stats_{0.0, 1.0};
};

// Softmax of logits, shifted by the max for stability.
std::vector<double> Softmax(std::span<const double> logits);

}  // namespace peerinc

#endif  // PEERINC_LEARNER_H_
