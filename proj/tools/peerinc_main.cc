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

// Command-line front end: training runs, seed batches, game analysis and
// brute-force oracles.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "peerinc/config.h"
#include "peerinc/environment.h"
#include "peerinc/game.h"
#include "peerinc/graph.h"
#include "peerinc/metrics.h"
#include "peerinc/protocol.h"
#include "peerinc/runner.h"

namespace {

using namespace peerinc;

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string NashList(const std::vector<ActionPair>& eq) {
  std::string out;
  for (const ActionPair& p : eq) {
    if (!out.empty()) out += " ";
    out += std::string("(") + ActionChar(p[0]) + "," + ActionChar(p[1]) + ")";
  }
  return out.empty() ? "none" : out;
}

std::string DominantString(const PayoffMatrix& m, Dominance mode) {
  const std::optional<Action> a = DominantAction(m, mode);
  return a.has_value() ? std::string(1, ActionChar(*a)) : "none";
}

void PrintMatrix(const std::string& label, const PayoffMatrix& m) {
  std::cout << label << ": " << m.ToString() << "  class=" << GameClassName(Classify(m))
            << "  dominant=" << DominantString(m, Dominance::kStrict)
            << "  nash=" << NashList(PureNash(m)) << "\n";
}

int Analyze(double t, double r, double p, double s, const std::string& graph,
            double token, double alpha, double beta, double scale,
            double shift) {
  const PayoffMatrix m = PayoffMatrix::Trps(t, r, p, s);
  PrintMatrix("original", m);
  const GameClass cls = Classify(m);
  if (cls == GameClass::kNotPD) {
    std::cout << "not a prisoner's dilemma; shaping analysis skipped\n";
    return 0;
  }
  PrintMatrix("drive", ShapeDrive(m));
  const double min_token = MateMinToken(m);
  const PayoffMatrix mate = ShapeMate(m, token);
  std::cout << "mate: min token " << Fmt(min_token) << "; with x=" << Fmt(token)
            << " " << mate.ToString()
            << "  dominant(weak)=" << DominantString(mate, Dominance::kWeak)
            << "\n";
  const Bimatrix ia = ShapeInequityAversion(m, alpha, beta);
  std::cout << "ia(alpha=" << Fmt(alpha) << ",beta=" << Fmt(beta)
            << "): nash=" << NashList(PureNash(ia)) << "\n";
  if (scale != 1.0 || shift != 0.0) {
    const AffineChange f{scale, shift, 0};
    const PayoffMatrix changed = ApplyAffine(m, f);
    PrintMatrix("affine", changed);
    PrintMatrix("affine+drive", ShapeDrive(changed));
    std::cout << "affine mate min token " << Fmt(MateMinToken(changed))
              << "; x=" << Fmt(token) << " dominant(weak)="
              << DominantString(ShapeMate(changed, token), Dominance::kWeak)
              << "\n";
  }
  if (!graph.empty()) {
    const Graph g = Graph::FromEdgeListFile(graph);
    std::cout << "graph: " << g.num_nodes() << " nodes, " << g.Edges().size()
              << " edges, connected=" << (g.IsConnected() ? "yes" : "no")
              << "\n";
    for (bool shaped : {false, true}) {
      std::cout << (shaped ? "drive" : "plain") << " nash:";
      for (const ActionProfile& a : EnumeratePureNash(g, m, shaped)) {
        std::cout << " " << ProfileString(a);
      }
      std::cout << "\n";
    }
    for (Domination mode : {Domination::kTotal, Domination::kRequesterOnly}) {
      const std::optional<int> d = DominationNumber(g, mode);
      std::cout << "domination number ("
                << (mode == Domination::kTotal ? "total" : "requester-only")
                << "): " << (d.has_value() ? std::to_string(*d) : "none")
                << "\n";
    }
  }
  return 0;
}

int RunOne(const std::string& config, std::optional<std::uint64_t> seed,
           const std::string& out) {
  RunConfig cfg = LoadConfig(config);
  if (seed.has_value()) cfg.seed = *seed;
  if (!out.empty()) cfg.output_dir = out;
  Trainer trainer(cfg);
  while (!trainer.finished()) {
    trainer.RunEpoch();
    const int e = trainer.epoch();
    if (e % 100 == 0 || trainer.finished()) {
      std::cerr << "epoch " << e;
      const RunResult& r = trainer.result();
      for (std::size_t k = 0; k < r.metric_names.size(); ++k) {
        std::cerr << " " << r.metric_names[k] << "="
                  << Fmt(r.epoch_metrics.back()[k]);
      }
      std::cerr << "\n";
    }
  }
  std::vector<RunResult> runs;
  runs.push_back(trainer.Finish());
  EmitOutputs(cfg.output_dir, runs);
  std::cout << "wrote " << cfg.output_dir << "/{metrics.csv,summary.csv,anomalies.log}\n";
  return 0;
}

int Batch(const std::string& config, const std::string& seeds, int jobs,
          const std::string& out) {
  RunConfig cfg = LoadConfig(config);
  if (!out.empty()) cfg.output_dir = out;
  const std::vector<std::uint64_t> list = ParseSeedList(seeds);
  const std::vector<RunResult> runs = RunBatch(cfg, list, jobs);
  EmitOutputs(cfg.output_dir, runs);
  std::cout << "wrote " << runs.size() << " runs to " << cfg.output_dir << "\n";
  return 0;
}

int OracleNash(double t, double r, double p, double s, const std::string& graph,
               bool shaped) {
  const PayoffMatrix m = PayoffMatrix::Trps(t, r, p, s);
  const Graph g = Graph::FromEdgeListFile(graph);
  for (const ActionProfile& a : EnumeratePureNashSerial(g, m, shaped)) {
    std::cout << ProfileString(a) << "\n";
  }
  return 0;
}

// Rows are steps, columns are agents.
int OracleMetrics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  EpisodeLog log;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (log.horizon() == 0) log = EpisodeLog(static_cast<int>(row.size()));
    EnvStep step;
    step.rewards = row;
    const std::vector<int> actions(row.size(), 0);
    log.Append(actions, step);
  }
  const std::optional<double> e = Equality(log);
  std::cout << "U=" << Fmt(SocialWelfare(log))
            << " E=" << (e.has_value() ? Fmt(*e) : std::string("undefined"))
            << " S=" << Fmt(Sustainability(log)) << "\n";
  return 0;
}

int OracleMatrix(const std::string& env, long samples, std::uint64_t seed) {
  Rng rng(seed);
  const bool coin = env == "coin";
  if (!coin && env != "harvest") {
    throw std::invalid_argument("--env must be coin or harvest");
  }
  const PayoffMatrix m =
      coin ? ExpectedMatrix(DilemmaKind::kCoin2, samples, rng,
                            EnvDescriptor::Coin(2))
           : ExpectedMatrix(DilemmaKind::kHarvest2, samples, rng,
                            EnvDescriptor::Harvest(2));
  PrintMatrix(env, m);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peer incentivization experiments"};
  app.require_subcommand(1);

  std::string config, out, seeds = "0..19", graph;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  double t = 0, r = 0, p = 0, s = 0;
  double token = 1, alpha = 5, beta = 0.05, scale = 1, shift = 0;

  CLI::App* run = app.add_subcommand("run", "Train one seeded run");
  run->add_option("--config", config, "JSON config")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out, "Output directory");

  CLI::App* batch = app.add_subcommand("batch", "Train one run per seed");
  batch->add_option("--config", config, "JSON config")->required()->check(CLI::ExistingFile);
  batch->add_option("--seeds", seeds, "a..b or a,b,c");
  batch->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  batch->add_option("--out", out, "Output directory");

  CLI::App* analyze = app.add_subcommand("analyze", "Analyse a 2x2 game");
  for (CLI::App* sub : {analyze}) {
    sub->add_option("--T", t, "Temptation")->required();
    sub->add_option("--R", r, "Reward")->required();
    sub->add_option("--P", p, "Punishment")->required();
    sub->add_option("--S", s, "Sucker")->required();
  }
  analyze->add_option("--graph", graph, "Edge list file")->check(CLI::ExistingFile);
  analyze->add_option("--token", token, "MATE token");
  analyze->add_option("--alpha", alpha, "Inequity aversion alpha");
  analyze->add_option("--beta", beta, "Inequity aversion beta");
  analyze->add_option("--scale", scale, "Affine scale c");
  analyze->add_option("--shift", shift, "Affine shift b");

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force oracles");
  oracle->require_subcommand(1);
  CLI::App* nash = oracle->add_subcommand("nash", "Pure Nash on a graph");
  nash->add_option("--T", t)->required();
  nash->add_option("--R", r)->required();
  nash->add_option("--P", p)->required();
  nash->add_option("--S", s)->required();
  nash->add_option("--graph", graph, "Edge list file")->required()->check(CLI::ExistingFile);
  bool shaped = false;
  nash->add_flag("--shaped", shaped, "Pairwise DRIVE shaping");
  std::string rewards;
  CLI::App* metrics = oracle->add_subcommand("metrics", "U, E, S from a reward CSV");
  metrics->add_option("--rewards", rewards, "Steps x agents CSV")->required()->check(CLI::ExistingFile);
  std::string env = "coin";
  long samples = 100000;
  std::uint64_t oracle_seed = 0;
  CLI::App* matrix = oracle->add_subcommand("matrix", "Scripted-policy payoff matrix");
  matrix->add_option("--env", env, "coin or harvest");
  matrix->add_option("--samples", samples, "Pickups (coin) or episodes (harvest)");
  matrix->add_option("--seed", oracle_seed);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return RunOne(config, seed, out);
    if (*batch) return Batch(config, seeds, jobs, out);
    if (*analyze) {
      return Analyze(t, r, p, s, graph, token, alpha, beta, scale, shift);
    }
    if (*nash) return OracleNash(t, r, p, s, graph, shaped);
    if (*metrics) return OracleMetrics(rewards);
    if (*matrix) return OracleMatrix(env, samples, oracle_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
