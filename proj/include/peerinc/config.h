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

#ifndef PEERINC_CONFIG_H_
#define PEERINC_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "peerinc/environment.h"
#include "peerinc/learner.h"
#include "peerinc/protocol.h"
#include "peerinc/reward_change.h"

namespace peerinc {

struct RunConfig {
  EnvDescriptor env;
  Protocol protocol;
  RewardChange reward_change;
  TrainConfig train;
  std::map<int, ComplianceProfile> compliance;  // agents not listed comply
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  // Throws std::invalid_argument naming the offending key.
  void Validate() const;
  std::vector<ComplianceProfile> ComplianceVector() const;
};

// Parses the nested JSON layout (env, protocol, reward_change, compliance,
// train, seed, output_dir). Missing keys take defaults; unknown keys and
// type mismatches throw std::invalid_argument naming the dotted key path.
RunConfig ParseConfig(const nlohmann::json& j);
RunConfig LoadConfig(const std::string& path);
nlohmann::json ConfigToJson(const RunConfig& cfg);

}  // namespace peerinc

#endif  // PEERINC_CONFIG_H_
