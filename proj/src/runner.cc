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

#include "peerinc/runner.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "peerinc/protocol.h"

namespace peerinc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string FormatValue(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double ParseValue(const std::string& s) {
  if (s == "nan") return kNaN;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

bool UsesGate(ProtocolKind kind) {
  return kind == ProtocolKind::kDrive || kind == ProtocolKind::kMate;
}

}  // namespace

std::vector<double> RunResult::Series(const std::string& metric) const {
  std::size_t k = 0;
  while (k < metric_names.size() && metric_names[k] != metric) ++k;
  if (k == metric_names.size()) {
    throw std::invalid_argument("run has no metric '" + metric + "'");
  }
  std::vector<double> out;
  out.reserve(epoch_metrics.size());
  for (const auto& row : epoch_metrics) out.push_back(row[k]);
  return out;
}

std::string RunId(const RunConfig& cfg) {
  return EnvKindName(cfg.env.kind) + std::to_string(cfg.env.num_agents) + "-" +
         ProtocolKindName(cfg.protocol.kind) + "-" +
         RewardChangeKindName(cfg.reward_change.kind) + "-s" +
         std::to_string(cfg.seed);
}

Trainer::Trainer(RunConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
  cfg_.Validate();
  env_ = MakeEnvironment(cfg_.env);
  learners_.reserve(cfg_.env.num_agents);
  for (int i = 0; i < cfg_.env.num_agents; ++i) {
    learners_.emplace_back(env_->observation_size(), env_->num_actions(),
                           cfg_.train, rng_);
  }
  compliance_ = cfg_.ComplianceVector();
  result_.run_id = RunId(cfg_);
  result_.seed = cfg_.seed;
  result_.metric_names = MetricNames(cfg_.env.kind);
}

void Trainer::RunEpisode(std::vector<EpochData>& data,
                         std::vector<double>& average, long& step_index,
                         std::vector<double>& metric_sums,
                         std::vector<int>& metric_counts, long& unanswered) {
  const int n = cfg_.env.num_agents;
  const double gamma = cfg_.env.gamma;
  const bool gated = UsesGate(cfg_.protocol.kind);
  std::vector<Observation> obs = env_->Reset(rng_);
  for (EpochData& d : data) d.episodes.emplace_back();
  EpisodeLog log(n);

  std::vector<double> value_now(n, 0.0);
  if (gated) {
    for (int i = 0; i < n; ++i) value_now[i] = learners_[i].ReturnScaleValue(obs[i]);
  }
  std::vector<int> actions(n);
  ExchangeInput in;
  in.compliance = compliance_;
  in.average.resize(n);
  in.td.assign(n, 0.0);
  in.reward.resize(n);

  while (!env_->done()) {
    in.neighborhoods = env_->Neighborhoods();
    for (int i = 0; i < n; ++i) {
      actions[i] = learners_[i].SelectAction(obs[i], rng_).action;
    }
    EnvStep step = env_->Step(actions, rng_);
    log.Append(actions, step);
    for (int i = 0; i < n; ++i) {
      in.reward[i] = cfg_.reward_change.Apply(step.rewards[i], epoch_);
      average[i] = UpdateEpochAverage(average[i], in.reward[i], step_index);
      in.average[i] = average[i];
    }
    ++step_index;
    if (gated) {
      for (int i = 0; i < n; ++i) {
        const double v_next =
            step.terminal ? 0.0
                          : learners_[i].ReturnScaleValue(step.observations[i]);
        in.td[i] = TdResidual(in.reward[i], value_now[i], v_next, gamma);
        value_now[i] = v_next;
      }
    }
    const ExchangeTrace trace = Exchange(cfg_.protocol, in);
    unanswered += static_cast<long>(trace.unanswered.size());
    for (int i = 0; i < n; ++i) {
      data[i].episodes.back().push_back(
          {std::move(obs[i]), actions[i], trace.shaped[i]});
    }
    if (observer_) observer_(*env_, step);
    obs = std::move(step.observations);
  }
  result_.total_steps += log.horizon();
  ++result_.total_episodes;

  const std::vector<MetricValue> metrics = EpisodeMetrics(cfg_.env.kind, log);
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    if (metrics[k].value.has_value() && std::isfinite(*metrics[k].value)) {
      metric_sums[k] += *metrics[k].value;
      ++metric_counts[k];
    }
  }
}

void Trainer::RunEpoch() {
  if (finished()) throw std::logic_error("Trainer: all epochs already run");
  const int n = cfg_.env.num_agents;
  const AffineChange change = cfg_.reward_change.AsAffine(epoch_);
  if (change.IsDegenerate()) {
    std::ostringstream msg;
    msg << "epoch " << epoch_ << ": degenerate reward change scale "
        << FormatValue(change.scale);
    result_.anomalies.push_back(msg.str());
  }

  std::vector<EpochData> data(n);
  std::vector<double> average(n, 0.0);
  long step_index = 0;
  const std::size_t num_metrics = result_.metric_names.size();
  std::vector<double> sums(num_metrics, 0.0);
  std::vector<int> counts(num_metrics, 0);
  long unanswered = 0;
  for (int k = 0; k < cfg_.train.episodes_per_epoch; ++k) {
    RunEpisode(data, average, step_index, sums, counts, unanswered);
  }
  if (unanswered > 0) {
    result_.anomalies.push_back("epoch " + std::to_string(epoch_) + ": " +
                                std::to_string(unanswered) +
                                " requester-steps received no response");
  }

  for (int i = 0; i < n; ++i) {
    try {
      learners_[i].Update(data[i], cfg_.env.gamma);
    } catch (const std::exception& e) {
      throw std::runtime_error("epoch " + std::to_string(epoch_) + ", agent " +
                               std::to_string(i) + ": " + e.what());
    }
  }

  std::vector<double> row(num_metrics);
  for (std::size_t k = 0; k < num_metrics; ++k) {
    row[k] = counts[k] > 0 ? sums[k] / counts[k] : kNaN;
  }
  result_.epoch_metrics.push_back(std::move(row));
  ++epoch_;
}

RunResult Trainer::Finish() {
  result_.policies.clear();
  result_.values.clear();
  for (const PolicyGradientLearner& l : learners_) {
    result_.policies.push_back(l.policy());
    result_.values.push_back(l.value());
  }
  return std::move(result_);
}

RunResult RunTraining(const RunConfig& cfg) {
  Trainer trainer(cfg);
  while (!trainer.finished()) trainer.RunEpoch();
  return trainer.Finish();
}

std::vector<RunResult> RunBatchSerial(const RunConfig& base,
                                      std::span<const std::uint64_t> seeds) {
  std::vector<RunResult> out;
  for (std::uint64_t s : seeds) {
    RunConfig cfg = base;
    cfg.seed = s;
    out.push_back(RunTraining(cfg));
  }
  return out;
}

std::vector<RunResult> RunBatch(const RunConfig& base,
                                std::span<const std::uint64_t> seeds,
                                int jobs) {
  if (seeds.empty()) throw std::invalid_argument("RunBatch: no seeds");
  if (jobs < 1) throw std::invalid_argument("RunBatch: jobs must be >= 1");
  const int count = static_cast<int>(seeds.size());
  std::vector<RunResult> out(count);
  std::vector<std::string> errors(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (int k = 0; k < count; ++k) {
    try {
      RunConfig cfg = base;
      cfg.seed = seeds[k];
      out[k] = RunTraining(cfg);
    } catch (const std::exception& e) {
      errors[k] = "seed " + std::to_string(seeds[k]) + ": " + e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  return out;
}

std::vector<std::uint64_t> ParseSeedList(const std::string& text) {
  auto parse = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size() || s[0] == '-') {
      throw std::invalid_argument("bad seed list '" + text + "'");
    }
    return static_cast<std::uint64_t>(v);
  };
  std::vector<std::uint64_t> out;
  const std::size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = parse(text.substr(0, dots));
    const std::uint64_t hi = parse(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty seed range '" + text + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse(item));
  if (out.empty()) throw std::invalid_argument("empty seed list");
  return out;
}

SummaryRow MeanAndHalfWidth(std::span<const double> values) {
  SummaryRow row;
  double sum = 0;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    sum += v;
    ++row.count;
  }
  if (row.count == 0) {
    row.mean = kNaN;
    row.ci95 = kNaN;
    return row;
  }
  row.mean = sum / row.count;
  if (row.count > 1) {
    double ss = 0;
    for (double v : values) {
      if (std::isfinite(v)) ss += (v - row.mean) * (v - row.mean);
    }
    const double sd = std::sqrt(ss / (row.count - 1));
    row.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(row.count));
  }
  return row;
}

std::vector<SummaryRow> Summarize(const std::vector<RunResult>& runs) {
  std::vector<SummaryRow> rows;
  if (runs.empty()) return rows;
  const RunResult& first = runs.front();
  for (const RunResult& r : runs) {
    if (r.metric_names != first.metric_names ||
        r.epoch_metrics.size() != first.epoch_metrics.size()) {
      throw std::invalid_argument("Summarize: runs have different shapes");
    }
  }
  std::vector<double> column(runs.size());
  for (std::size_t e = 0; e < first.epoch_metrics.size(); ++e) {
    for (std::size_t k = 0; k < first.metric_names.size(); ++k) {
      for (std::size_t r = 0; r < runs.size(); ++r) {
        column[r] = runs[r].epoch_metrics[e][k];
      }
      SummaryRow row = MeanAndHalfWidth(column);
      row.epoch = static_cast<int>(e);
      row.metric = first.metric_names[k];
      rows.push_back(row);
    }
  }
  return rows;
}

void WriteMetricsCsv(std::ostream& out, const std::vector<RunResult>& runs) {
  out << "run_id,seed,epoch,metric,value\n";
  for (const RunResult& r : runs) {
    for (std::size_t e = 0; e < r.epoch_metrics.size(); ++e) {
      for (std::size_t k = 0; k < r.metric_names.size(); ++k) {
        out << r.run_id << ',' << r.seed << ',' << e << ','
            << r.metric_names[k] << ',' << FormatValue(r.epoch_metrics[e][k])
            << '\n';
      }
    }
  }
}

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "epoch,metric,mean,ci95,n\n";
  for (const SummaryRow& r : rows) {
    out << r.epoch << ',' << r.metric << ',' << FormatValue(r.mean) << ','
        << FormatValue(r.ci95) << ',' << r.count << '\n';
  }
}

std::vector<SummaryRow> ReadSummaryCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "epoch,metric,mean,ci95,n") {
    throw std::invalid_argument("summary.csv: unexpected header");
  }
  std::vector<SummaryRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 5) {
      throw std::invalid_argument("summary.csv line " +
                                  std::to_string(line_no) + ": need 5 fields");
    }
    SummaryRow r;
    r.epoch = std::stoi(f[0]);
    r.metric = f[1];
    r.mean = ParseValue(f[2]);
    r.ci95 = ParseValue(f[3]);
    r.count = std::stoi(f[4]);
    rows.push_back(r);
  }
  return rows;
}

void WriteAnomalies(std::ostream& out, const std::vector<RunResult>& runs) {
  for (const RunResult& r : runs) {
    for (const std::string& a : r.anomalies) {
      out << r.run_id << ": " << a << '\n';
    }
  }
}

void EmitOutputs(const std::string& dir, const std::vector<RunResult>& runs) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream f(std::filesystem::path(dir) / name);
    if (!f) throw std::runtime_error("cannot write " + dir + "/" + name);
    return f;
  };
  {
    std::ofstream f = open("metrics.csv");
    WriteMetricsCsv(f, runs);
  }
  {
    std::ofstream f = open("summary.csv");
    WriteSummaryCsv(f, Summarize(runs));
  }
  {
    std::ofstream f = open("anomalies.log");
    WriteAnomalies(f, runs);
  }
}

}  // namespace peerinc
