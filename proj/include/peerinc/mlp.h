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

#ifndef PEERINC_MLP_H_
#define PEERINC_MLP_H_

// Fully connected network with ELU hidden layers and a linear output,
// differentiated by hand.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "peerinc/rng.h"

namespace peerinc {

class Mlp {
 public:
  // Activations recorded by a forward pass for the matching backward pass.
  struct Tape {
    std::vector<std::vector<double>> inputs;  // per layer: its input vector
    std::vector<std::vector<double>> pre;     // per layer: pre-activation
  };

  // layer_sizes = {input, hidden..., output}; parameters start at zero.
  explicit Mlp(std::vector<int> layer_sizes);

  // Hidden layers drawn from U(-1/sqrt(fan_in), 1/sqrt(fan_in)); the output
  // layer starts at zero so a softmax head begins uniform.
  static Mlp Create(int input, int hidden_layers, int hidden_units, int output,
                    Rng& rng);

  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  const std::vector<int>& layer_sizes() const { return sizes_; }
  std::size_t num_parameters() const { return params_.size(); }
  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }

  void Forward(std::span<const double> x, std::span<double> out) const;
  std::vector<double> Forward(std::span<const double> x) const;
  void Forward(std::span<const double> x, std::span<double> out,
               Tape& tape) const;
  // Accumulates d(loss)/d(params) into grad given d(loss)/d(output).
  void Backward(const Tape& tape, std::span<const double> grad_out,
                std::span<double> grad) const;

  // Every parameter from U(-scale, scale); used by gradient checks.
  void Randomize(Rng& rng, double scale);

 private:
  // Layer l stores W as [in][out] followed by b[out].
  std::size_t WeightOffset(int layer) const { return offsets_[layer]; }
  std::size_t BiasOffset(int layer) const {
    return offsets_[layer] + static_cast<std::size_t>(sizes_[layer]) *
                                 sizes_[layer + 1];
  }
  int num_layers() const { return static_cast<int>(sizes_.size()) - 1; }

  std::vector<int> sizes_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

// Per-sample loss on the network output. Returns the loss contribution and
// writes d(loss)/d(output) into grad_out.
using OutputLoss = std::function<double(std::size_t sample,
                                        std::span<const double> output,
                                        std::span<double> grad_out)>;

// Weighted negative log-likelihood of `targets` under softmax(output):
// sum_s -weights[s] * log softmax(output_s)[targets[s]].
OutputLoss SoftmaxNllLoss(std::vector<int> targets, std::vector<double> weights);
// mean_s (output_s[0] - targets[s])^2.
OutputLoss SquaredErrorLoss(std::vector<double> targets);

// Total loss over a batch; accumulates the parameter gradient when `grad`
// is non-null (it is resized and zeroed first).
double BatchLoss(const Mlp& net, const std::vector<std::vector<double>>& inputs,
                 const OutputLoss& loss, std::vector<double>* grad);

struct GradientCheck {
  double max_relative_error = 0;
  std::size_t worst_parameter = 0;
};

// Compares the analytic gradient with central differences of step `h`.
// Relative error is |a - n| / max(|a|, |n|, 1e-6).
GradientCheck FiniteDifferenceCheck(const Mlp& net,
                                    const std::vector<std::vector<double>>& inputs,
                                    const OutputLoss& loss, double h = 1e-5);

// Flat little-endian float32 checkpoint: "PINC", u32 version, u32 layer
// count, u32 sizes..., then the parameters in Mlp order.
void SaveCheckpoint(const Mlp& net, const std::string& path);
Mlp LoadCheckpoint(const std::string& path);

}  // namespace peerinc

#endif  // PEERINC_MLP_H_
