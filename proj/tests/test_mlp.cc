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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "peerinc/learner.h"
#include "peerinc/mlp.h"

namespace peerinc {
namespace {

std::vector<std::vector<double>> RandomInputs(Rng& rng, int count, int size) {
  std::vector<std::vector<double>> out(count, std::vector<double>(size));
  for (auto& row : out) {
    for (double& v : row) v = rng.Uniform(-1, 1);
  }
  return out;
}

TEST_CASE("layout and initialisation") {
  Rng rng(1);
  const Mlp net = Mlp::Create(4, 2, 64, 2, rng);
  CHECK(net.layer_sizes() == std::vector<int>{4, 64, 64, 2});
  CHECK(net.num_parameters() == (4 + 1) * 64 + (64 + 1) * 64 + (64 + 1) * 2);
  // The output layer starts at zero, so every input maps to zero logits.
  const std::vector<double> x = {0.3, -1, 2, 0.5};
  CHECK(net.Forward(x) == std::vector<double>{0, 0});
  const auto p = net.parameters();
  const double bound = 1.0 / std::sqrt(4.0);
  for (std::size_t k = 0; k < (4 + 1) * 64; ++k) {
    CHECK(std::abs(p[k]) <= bound);
  }
  CHECK_THROWS(Mlp::Create(4, 0, 64, 2, rng));
  CHECK_THROWS(Mlp(std::vector<int>{4}));
  std::vector<double> wrong(3);
  CHECK_THROWS(net.Forward(wrong));
}

TEST_CASE("gradient check: random network with softmax likelihood") {
  Rng rng(2);
  Mlp net = Mlp::Create(6, 2, 16, 3, rng);
  net.Randomize(rng, 0.5);
  const auto inputs = RandomInputs(rng, 12, 6);
  std::vector<int> targets;
  std::vector<double> weights;
  for (int s = 0; s < 12; ++s) {
    targets.push_back(static_cast<int>(rng.Below(3)));
    weights.push_back(rng.Uniform(-1, 1));
  }
  const GradientCheck gc =
      FiniteDifferenceCheck(net, inputs, SoftmaxNllLoss(targets, weights));
  CHECK(gc.max_relative_error < 1e-4);
}

TEST_CASE("gradient check: linear network with squared loss") {
  Rng rng(3);
  Mlp net(std::vector<int>{5, 1});
  net.Randomize(rng, 1.0);
  const auto inputs = RandomInputs(rng, 8, 5);
  std::vector<double> targets(8);
  for (double& t : targets) t = rng.Uniform(-2, 2);
  CHECK(FiniteDifferenceCheck(net, inputs, SquaredErrorLoss(targets))
            .max_relative_error < 1e-6);
}

TEST_CASE("gradient check: zero input and zero targets") {
  Rng rng(4);
  Mlp net = Mlp::Create(3, 1, 8, 1, rng);
  net.Randomize(rng, 0.3);
  const std::vector<std::vector<double>> inputs(4, std::vector<double>(3, 0.0));
  const std::vector<double> targets(4, 0.0);
  const OutputLoss loss = SquaredErrorLoss(targets);
  CHECK(FiniteDifferenceCheck(net, inputs, loss).max_relative_error < 1e-6);
  // Only biases (and output weights fed by hidden activations) can move.
  std::vector<double> grad;
  BatchLoss(net, inputs, loss, &grad);
  for (int k = 0; k < 3 * 8; ++k) CHECK(grad[k] == 0);
}

TEST_CASE("softmax likelihood value") {
  const std::vector<int> targets = {1};
  const std::vector<double> weights = {2.0};
  const OutputLoss loss = SoftmaxNllLoss(targets, weights);
  const std::vector<double> out = {0.0, std::log(3.0)};
  std::vector<double> g(2);
  // p = (1/4, 3/4): loss = -2 log(3/4); gradient = 2 (p - onehot).
  CHECK(loss(0, out, g) == doctest::Approx(-2 * std::log(0.75)));
  CHECK(g[0] == doctest::Approx(0.5));
  CHECK(g[1] == doctest::Approx(-0.5));
}

TEST_CASE("checkpoint round trip") {
  Rng rng(5);
  const Mlp net = Mlp::Create(7, 2, 9, 4, rng);
  const std::string path =
      (std::filesystem::temp_directory_path() / "peerinc_ckpt_test.bin")
          .string();
  SaveCheckpoint(net, path);
  CHECK(std::filesystem::file_size(path) ==
        4 + 4 + 4 + 4 * 4 + 4 * net.num_parameters());
  const Mlp back = LoadCheckpoint(path);
  CHECK(back.layer_sizes() == net.layer_sizes());
  for (std::size_t k = 0; k < net.num_parameters(); ++k) {
    CHECK(back.parameters()[k] ==
          static_cast<double>(static_cast<float>(net.parameters()[k])));
  }
  // First parameter is stored little-endian right after the header.
  std::ifstream in(path, std::ios::binary);
  in.seekg(4 + 4 + 4 + 4 * 4);
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  const std::uint32_t bits = b[0] | (b[1] << 8) | (b[2] << 16) |
                             (static_cast<std::uint32_t>(b[3]) << 24);
  CHECK(std::bit_cast<float>(bits) == static_cast<float>(net.parameters()[0]));

  {
    std::ofstream trunc(path, std::ios::binary | std::ios::trunc);
    trunc.write("PINC", 4);
  }
  CHECK_THROWS(LoadCheckpoint(path));
  {
    std::ofstream junk(path, std::ios::binary | std::ios::trunc);
    junk.write("NOPE1234", 8);
  }
  CHECK_THROWS(LoadCheckpoint(path));
  std::filesystem::remove(path);
  CHECK_THROWS(LoadCheckpoint(path));
}

TEST_CASE("adam first step has magnitude lr") {
  Adam adam(3, 0.001);
  std::vector<double> p = {1, 2, 3};
  const std::vector<double> g = {0.5, -4, 0};
  adam.Step(p, g);
  CHECK(p[0] == doctest::Approx(1 - 0.001));
  CHECK(p[1] == doctest::Approx(2 + 0.001));
  CHECK(p[2] == 3);
  CHECK(adam.steps() == 1);
}

TEST_CASE("gradient clipping") {
  Rng rng(6);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> g(50);
    const double scale = rng.Uniform(0, 10);
    for (double& v : g) v = rng.Uniform(-scale, scale);
    std::vector<double> copy = g;
    const double before = ClipGradientNorm(copy, 1.0);
    double sq = 0;
    for (double v : copy) sq += v * v;
    CHECK(std::sqrt(sq) <= 1 + 1e-9);
    if (before <= 1.0) CHECK(copy == g);
  }
}

}  // namespace
}  // namespace peerinc
