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

#include "peerinc/config.h"

#include <fstream>
#include <set>
#include <stdexcept>

namespace peerinc {
namespace {

using nlohmann::json;

void RejectUnknown(const json& obj, const std::string& prefix,
                   const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    throw std::invalid_argument(prefix + ": expected an object");
  }
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      throw std::invalid_argument("unknown config key '" + prefix + "." +
                                  item.key() + "'");
    }
  }
}

template <typename T>
void Read(const json& obj, const std::string& prefix, const std::string& key,
          T& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  const std::string path = prefix + "." + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw std::invalid_argument(path + ": expected bool");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument(path + ": expected integer");
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw std::invalid_argument(path + ": expected number");
  } else {
    if (!v.is_string()) throw std::invalid_argument(path + ": expected string");
  }
  out = v.get<T>();
}

std::string ReadString(const json& obj, const std::string& prefix,
                       const std::string& key, std::string fallback) {
  Read(obj, prefix, key, fallback);
  return fallback;
}

EnvDescriptor ParseEnv(const json& j) {
  RejectUnknown(j, "env",
                {"kind", "num_agents", "horizon", "gamma", "grid_width",
                 "grid_height", "coin_pickup", "map", "regrowth",
                 "freeze_steps", "beam_length", "beam_width", "view_radius",
                 "time_penalty"});
  if (!j.contains("kind")) {
    throw std::invalid_argument("env.kind: required key is missing");
  }
  const EnvKind kind = ParseEnvKind(ReadString(j, "env", "kind", ""));
  int n = kind == EnvKind::kHarvest ? 12 : 2;
  Read(j, "env", "num_agents", n);
  EnvDescriptor d;
  switch (kind) {
    case EnvKind::kIpd: d = EnvDescriptor::Ipd(); d.num_agents = n; break;
    case EnvKind::kCoin: d = EnvDescriptor::Coin(n); break;
    case EnvKind::kHarvest: d = EnvDescriptor::Harvest(n); break;
  }
  Read(j, "env", "horizon", d.horizon);
  Read(j, "env", "gamma", d.gamma);
  Read(j, "env", "grid_width", d.grid_width);
  Read(j, "env", "grid_height", d.grid_height);
  if (j.contains("coin_pickup")) {
    d.coin_pickup = ParseCoinPickup(ReadString(j, "env", "coin_pickup", ""));
  }
  Read(j, "env", "map", d.map_path);
  if (j.contains("regrowth")) {
    const json& r = j.at("regrowth");
    if (!r.is_array()) {
      throw std::invalid_argument("env.regrowth: expected [[count, p], ...]");
    }
    d.regrowth.clear();
    for (const json& row : r) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_number_integer() ||
          !row[1].is_number()) {
        throw std::invalid_argument("env.regrowth: rows must be [count, p]");
      }
      d.regrowth.push_back({row[0].get<int>(), row[1].get<double>()});
    }
  }
  Read(j, "env", "freeze_steps", d.freeze_steps);
  Read(j, "env", "beam_length", d.beam_length);
  Read(j, "env", "beam_width", d.beam_width);
  Read(j, "env", "view_radius", d.view_radius);
  Read(j, "env", "time_penalty", d.time_penalty);
  return d;
}

Misreport ParseMisreport(const json& j, const std::string& prefix) {
  Misreport m;
  if (j.is_null()) return m;
  RejectUnknown(j, prefix, {"mode", "value"});
  const std::string mode = ReadString(j, prefix, "mode", "none");
  if (mode == "none") {
    m.mode = Misreport::Mode::kNone;
  } else if (mode == "offset") {
    m.mode = Misreport::Mode::kOffset;
  } else if (mode == "override") {
    m.mode = Misreport::Mode::kOverride;
  } else {
    throw std::invalid_argument(prefix +
                                ".mode: expected none, offset or override");
  }
  Read(j, prefix, "value", m.value);
  return m;
}

std::string MisreportModeName(Misreport::Mode mode) {
  switch (mode) {
    case Misreport::Mode::kNone: return "none";
    case Misreport::Mode::kOffset: return "offset";
    case Misreport::Mode::kOverride: return "override";
  }
  return "none";
}

}  // namespace

void RunConfig::Validate() const {
  env.Validate();
  protocol.Validate();
  reward_change.Validate();
  train.Validate();
  for (const auto& [id, profile] : compliance) {
    if (id < 0 || id >= env.num_agents) {
      throw std::invalid_argument("compliance." + std::to_string(id) +
                                  ": agent id outside [0, n)");
    }
  }
  if (protocol.kind == ProtocolKind::kInequityAversion && !compliance.empty()) {
    throw std::invalid_argument(
        "compliance: profiles only apply to message-based protocols");
  }
}

std::vector<ComplianceProfile> RunConfig::ComplianceVector() const {
  std::vector<ComplianceProfile> out(env.num_agents);
  for (const auto& [id, profile] : compliance) out.at(id) = profile;
  return out;
}

RunConfig ParseConfig(const json& j) {
  RejectUnknown(j, "config",
                {"env", "protocol", "reward_change", "compliance", "train",
                 "seed", "output_dir"});
  RunConfig cfg;
  if (!j.contains("env")) {
    throw std::invalid_argument("env.kind: required key is missing");
  }
  cfg.env = ParseEnv(j.at("env"));

  if (j.contains("protocol")) {
    const json& p = j.at("protocol");
    RejectUnknown(p, "protocol", {"kind", "token_x", "alpha", "beta"});
    cfg.protocol.kind =
        ParseProtocolKind(ReadString(p, "protocol", "kind", "naive"));
    Read(p, "protocol", "token_x", cfg.protocol.token);
    Read(p, "protocol", "alpha", cfg.protocol.alpha);
    Read(p, "protocol", "beta", cfg.protocol.beta);
  }

  if (j.contains("train")) {
    const json& t = j.at("train");
    RejectUnknown(t, "train",
                  {"learning_rate", "clip_norm", "trace_lambda",
                   "episodes_per_epoch", "epochs", "history_length",
                   "hidden_layers", "hidden_units"});
    Read(t, "train", "learning_rate", cfg.train.learning_rate);
    Read(t, "train", "clip_norm", cfg.train.clip_norm);
    Read(t, "train", "trace_lambda", cfg.train.trace_lambda);
    Read(t, "train", "episodes_per_epoch", cfg.train.episodes_per_epoch);
    Read(t, "train", "epochs", cfg.train.epochs);
    Read(t, "train", "history_length", cfg.train.history_length);
    Read(t, "train", "hidden_layers", cfg.train.hidden_layers);
    Read(t, "train", "hidden_units", cfg.train.hidden_units);
  }

  cfg.reward_change.epoch_budget = cfg.train.epochs;
  if (j.contains("reward_change")) {
    const json& r = j.at("reward_change");
    RejectUnknown(r, "reward_change", {"kind", "eta", "chi"});
    cfg.reward_change.kind =
        ParseRewardChangeKind(ReadString(r, "reward_change", "kind", "identity"));
    Read(r, "reward_change", "eta", cfg.reward_change.eta);
    Read(r, "reward_change", "chi", cfg.reward_change.chi);
  }

  if (j.contains("compliance")) {
    const json& c = j.at("compliance");
    if (!c.is_object()) {
      throw std::invalid_argument("compliance: expected an object");
    }
    for (const auto& item : c.items()) {
      const std::string prefix = "compliance." + item.key();
      int id = -1;
      try {
        std::size_t used = 0;
        id = std::stoi(item.key(), &used);
        if (used != item.key().size()) id = -1;
      } catch (const std::exception&) {
        id = -1;
      }
      if (id < 0) {
        throw std::invalid_argument(prefix + ": agent id must be an integer");
      }
      const json& v = item.value();
      RejectUnknown(v, prefix, {"sends_requests", "sends_responses", "misreport"});
      ComplianceProfile profile;
      Read(v, prefix, "sends_requests", profile.sends_requests);
      Read(v, prefix, "sends_responses", profile.sends_responses);
      if (v.contains("misreport")) {
        profile.misreport = ParseMisreport(v.at("misreport"), prefix + ".misreport");
      }
      cfg.compliance[id] = profile;
    }
  }

  if (j.contains("seed")) {
    const nlohmann::json& seed = j.at("seed");
    const bool ok = seed.is_number_unsigned() ||
                    (seed.is_number_integer() && seed.get<std::int64_t>() >= 0);
    if (!ok) {
      throw std::invalid_argument("seed: expected a non-negative integer");
    }
    cfg.seed = seed.get<std::uint64_t>();
  }
  Read(j, "config", "output_dir", cfg.output_dir);
  cfg.Validate();
  return cfg;
}

RunConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  return ParseConfig(j);
}

json ConfigToJson(const RunConfig& cfg) {
  json j;
  const EnvDescriptor& d = cfg.env;
  json regrowth = json::array();
  for (const RegrowthRow& r : d.regrowth) {
    regrowth.push_back({r.min_apples, r.probability});
  }
  j["env"] = {{"kind", EnvKindName(d.kind)},
              {"num_agents", d.num_agents},
              {"horizon", d.horizon},
              {"gamma", d.gamma},
              {"grid_width", d.grid_width},
              {"grid_height", d.grid_height},
              {"coin_pickup", CoinPickupName(d.coin_pickup)},
              {"map", d.map_path},
              {"regrowth", regrowth},
              {"freeze_steps", d.freeze_steps},
              {"beam_length", d.beam_length},
              {"beam_width", d.beam_width},
              {"view_radius", d.view_radius},
              {"time_penalty", d.time_penalty}};
  j["protocol"] = {{"kind", ProtocolKindName(cfg.protocol.kind)},
                   {"token_x", cfg.protocol.token},
                   {"alpha", cfg.protocol.alpha},
                   {"beta", cfg.protocol.beta}};
  j["reward_change"] = {{"kind", RewardChangeKindName(cfg.reward_change.kind)},
                        {"eta", cfg.reward_change.eta},
                        {"chi", cfg.reward_change.chi}};
  j["train"] = {{"learning_rate", cfg.train.learning_rate},
                {"clip_norm", cfg.train.clip_norm},
                {"trace_lambda", cfg.train.trace_lambda},
                {"episodes_per_epoch", cfg.train.episodes_per_epoch},
                {"epochs", cfg.train.epochs},
                {"history_length", cfg.train.history_length},
                {"hidden_layers", cfg.train.hidden_layers},
                {"hidden_units", cfg.train.hidden_units}};
  json compliance = json::object();
  for (const auto& [id, p] : cfg.compliance) {
    compliance[std::to_string(id)] = {
        {"sends_requests", p.sends_requests},
        {"sends_responses", p.sends_responses},
        {"misreport",
         {{"mode", MisreportModeName(p.misreport.mode)},
          {"value", p.misreport.value}}}};
  }
  j["compliance"] = compliance;
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  return j;
}

}  // namespace peerinc
