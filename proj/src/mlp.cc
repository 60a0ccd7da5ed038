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

#include "peerinc/mlp.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace peerinc {
namespace {

double Elu(double z) { return z > 0 ? z : std::expm1(z); }
double EluGrad(double z) { return z > 0 ? 1.0 : std::exp(z); }

constexpr char kMagic[4] = {'P', 'I', 'N', 'C'};
constexpr std::uint32_t kCheckpointVersion = 1;

void WriteU32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t ReadU32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw std::runtime_error("checkpoint: truncated header");
  }
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

Mlp::Mlp(std::vector<int> layer_sizes) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) {
    throw std::invalid_argument("Mlp: need at least input and output sizes");
  }
  for (int s : sizes_) {
    if (s <= 0) throw std::invalid_argument("Mlp: layer sizes must be positive");
  }
  std::size_t total = 0;
  for (int l = 0; l < num_layers(); ++l) {
    offsets_.push_back(total);
    total += static_cast<std::size_t>(sizes_[l] + 1) * sizes_[l + 1];
  }
  params_.assign(total, 0.0);
}

Mlp Mlp::Create(int input, int hidden_layers, int hidden_units, int output,
                Rng& rng) {
  if (hidden_layers < 1) {
    throw std::invalid_argument("Mlp: need at least one hidden layer");
  }
  std::vector<int> sizes = {input};
  for (int i = 0; i < hidden_layers; ++i) sizes.push_back(hidden_units);
  sizes.push_back(output);
  Mlp net(sizes);
  for (int l = 0; l + 1 < net.num_layers(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(sizes[l]));
    const std::size_t begin = net.offsets_[l];
    const std::size_t end = net.offsets_[l + 1];
    for (std::size_t k = begin; k < end; ++k) {
      net.params_[k] = rng.Uniform(-bound, bound);
    }
  }
  return net;
}

void Mlp::Randomize(Rng& rng, double scale) {
  for (double& p : params_) p = rng.Uniform(-scale, scale);
}

void Mlp::Forward(std::span<const double> x, std::span<double> out) const {
  if (static_cast<int>(x.size()) != input_size() ||
      static_cast<int>(out.size()) != output_size()) {
    throw std::invalid_argument("Mlp::Forward: size mismatch");
  }
  thread_local std::vector<double> a, z;
  a.assign(x.begin(), x.end());
  const int layers = num_layers();
  for (int l = 0; l < layers; ++l) {
    const int in = sizes_[l];
    const int n_out = sizes_[l + 1];
    const double* w = params_.data() + WeightOffset(l);
    const double* b = params_.data() + BiasOffset(l);
    z.assign(b, b + n_out);
    for (int i = 0; i < in; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      const double* row = w + static_cast<std::size_t>(i) * n_out;
      for (int o = 0; o < n_out; ++o) z[o] += ai * row[o];
    }
    if (l + 1 < layers) {
      for (double& v : z) v = Elu(v);
      a.swap(z);
    }
  }
  std::copy(z.begin(), z.end(), out.begin());
}

std::vector<double> Mlp::Forward(std::span<const double> x) const {
  std::vector<double> out(output_size());
  Forward(x, out);
  return out;
}

void Mlp::Forward(std::span<const double> x, std::span<double> out,
                  Tape& tape) const {
  if (static_cast<int>(x.size()) != input_size() ||
      static_cast<int>(out.size()) != output_size()) {
    throw std::invalid_argument("Mlp::Forward: size mismatch");
  }
  const int layers = num_layers();
  tape.inputs.resize(layers);
  tape.pre.resize(layers);
  tape.inputs[0].assign(x.begin(), x.end());
  for (int l = 0; l < layers; ++l) {
    const int in = sizes_[l];
    const int n_out = sizes_[l + 1];
    const double* w = params_.data() + WeightOffset(l);
    const double* b = params_.data() + BiasOffset(l);
    std::vector<double>& z = tape.pre[l];
    z.assign(b, b + n_out);
    const std::vector<double>& a = tape.inputs[l];
    for (int i = 0; i < in; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      const double* row = w + static_cast<std::size_t>(i) * n_out;
      for (int o = 0; o < n_out; ++o) z[o] += ai * row[o];
    }
    if (l + 1 < layers) {
      std::vector<double>& next = tape.inputs[l + 1];
      next.resize(n_out);
      for (int o = 0; o < n_out; ++o) next[o] = Elu(z[o]);
    }
  }
  std::copy(tape.pre.back().begin(), tape.pre.back().end(), out.begin());
}

void Mlp::Backward(const Tape& tape, std::span<const double> grad_out,
                   std::span<double> grad) const {
  if (grad.size() != params_.size() ||
      static_cast<int>(grad_out.size()) != output_size()) {
    throw std::invalid_argument("Mlp::Backward: size mismatch");
  }
  std::vector<double> delta(grad_out.begin(), grad_out.end());
  std::vector<double> prev;
  for (int l = num_layers() - 1; l >= 0; --l) {
    const int in = sizes_[l];
    const int n_out = sizes_[l + 1];
    const double* w = params_.data() + WeightOffset(l);
    double* gw = grad.data() + WeightOffset(l);
    double* gb = grad.data() + BiasOffset(l);
    const std::vector<double>& a = tape.inputs[l];
    for (int o = 0; o < n_out; ++o) gb[o] += delta[o];
    for (int i = 0; i < in; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      double* grow = gw + static_cast<std::size_t>(i) * n_out;
      for (int o = 0; o < n_out; ++o) grow[o] += ai * delta[o];
    }
    if (l == 0) break;
    prev.assign(in, 0.0);
    const std::vector<double>& z_prev = tape.pre[l - 1];
    for (int i = 0; i < in; ++i) {
      const double* row = w + static_cast<std::size_t>(i) * n_out;
      // Four partial sums so the loop vectorizes without reassociation.
      double s[4] = {0, 0, 0, 0};
      int o = 0;
      for (; o + 4 <= n_out; o += 4) {
        for (int k = 0; k < 4; ++k) s[k] += row[o + k] * delta[o + k];
      }
      for (; o < n_out; ++o) s[0] += row[o] * delta[o];
      prev[i] = ((s[0] + s[1]) + (s[2] + s[3])) * EluGrad(z_prev[i]);
    }
    delta.swap(prev);
  }
}

OutputLoss SoftmaxNllLoss(std::vector<int> targets,
                          std::vector<double> weights) {
  if (targets.size() != weights.size()) {
    throw std::invalid_argument("SoftmaxNllLoss: size mismatch");
  }
  return [targets = std::move(targets), weights = std::move(weights)](
             std::size_t s, std::span<const double> out,
             std::span<double> g) {
    const double mx = *std::max_element(out.begin(), out.end());
    double z = 0;
    for (double v : out) z += std::exp(v - mx);
    const double log_z = mx + std::log(z);
    const int target = targets.at(s);
    const double w = weights[s];
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double p = std::exp(out[k] - log_z);
      g[k] = w * (p - (static_cast<int>(k) == target ? 1.0 : 0.0));
    }
    return -w * (out[target] - log_z);
  };
}

OutputLoss SquaredErrorLoss(std::vector<double> targets) {
  const double inv_n = targets.empty() ? 0.0 : 1.0 / targets.size();
  return [targets = std::move(targets), inv_n](std::size_t s,
                                               std::span<const double> out,
                                               std::span<double> g) {
    const double d = out[0] - targets.at(s);
    g[0] = 2.0 * d * inv_n;
    for (std::size_t k = 1; k < g.size(); ++k) g[k] = 0;
    return d * d * inv_n;
  };
}

double BatchLoss(const Mlp& net, const std::vector<std::vector<double>>& inputs,
                 const OutputLoss& loss, std::vector<double>* grad) {
  if (grad != nullptr) grad->assign(net.num_parameters(), 0.0);
  std::vector<double> out(net.output_size());
  std::vector<double> g(net.output_size());
  Mlp::Tape tape;
  double total = 0;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    net.Forward(inputs[s], out, tape);
    total += loss(s, out, g);
    if (grad != nullptr) net.Backward(tape, g, *grad);
  }
  return total;
}

GradientCheck FiniteDifferenceCheck(
    const Mlp& net, const std::vector<std::vector<double>>& inputs,
    const OutputLoss& loss, double h) {
  std::vector<double> analytic;
  BatchLoss(net, inputs, loss, &analytic);
  Mlp probe = net;
  GradientCheck result;
  for (std::size_t k = 0; k < probe.num_parameters(); ++k) {
    const double saved = probe.parameters()[k];
    probe.parameters()[k] = saved + h;
    const double up = BatchLoss(probe, inputs, loss, nullptr);
    probe.parameters()[k] = saved - h;
    const double down = BatchLoss(probe, inputs, loss, nullptr);
    probe.parameters()[k] = saved;
    const double numeric = (up - down) / (2 * h);
    const double denom =
        std::max({std::abs(analytic[k]), std::abs(numeric), 1e-6});
    const double err = std::abs(analytic[k] - numeric) / denom;
    if (err > result.max_relative_error) {
      result.max_relative_error = err;
      result.worst_parameter = k;
    }
  }
  return result;
}

void SaveCheckpoint(const Mlp& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path);
  out.write(kMagic, 4);
  WriteU32(out, kCheckpointVersion);
  WriteU32(out, static_cast<std::uint32_t>(net.layer_sizes().size()));
  for (int s : net.layer_sizes()) WriteU32(out, static_cast<std::uint32_t>(s));
  for (double p : net.parameters()) {
    WriteU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(p)));
  }
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

Mlp LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("checkpoint: bad magic in " + path);
  }
  if (ReadU32(in) != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: unsupported version");
  }
  const std::uint32_t count = ReadU32(in);
  if (count < 2 || count > 64) {
    throw std::runtime_error("checkpoint: implausible layer count");
  }
  std::vector<int> sizes;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t s = ReadU32(in);
    if (s == 0 || s > (1u << 20)) {
      throw std::runtime_error("checkpoint: implausible layer size");
    }
    sizes.push_back(static_cast<int>(s));
  }
  Mlp net(sizes);
  for (double& p : net.parameters()) {
    p = std::bit_cast<float>(ReadU32(in));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("checkpoint: trailing bytes in " + path);
  }
  return net;
}

}  // namespace peerinc
