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

#ifndef PEERINC_RUNNER_H_
#define PEERINC_RUNNER_H_

// Seeded training runs, batches over seeds and CSV emission.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "peerinc/config.h"
#include "peerinc/environment.h"
#include "peerinc/learner.h"
#include "peerinc/metrics.h"
#include "peerinc/rng.h"

namespace peerinc {

struct RunResult {
  std::string run_id;
  std::uint64_t seed = 0;
  std::vector<std::string> metric_names;
  // [epoch][metric]: mean over the epoch's episodes where the metric is
  // defined; NaN when it is undefined in every episode.
  std::vector<std::vector<double>> epoch_metrics;
  std::vector<std::string> anomalies;
  std::vector<Mlp> policies;
  std::vector<Mlp> values;
  long total_steps = 0;
  long total_episodes = 0;

  std::vector<double> Series(const std::string& metric) const;
};

std::string RunId(const RunConfig& cfg);

class Trainer {
 public:
  // Called after every environment step with the post-step state.
  using StepObserver =
      std::function<void(const Environment&, const EnvStep&)>;

  explicit Trainer(RunConfig cfg);

  void set_step_observer(StepObserver observer) {
    observer_ = std::move(observer);
  }
  int epoch() const { return epoch_; }
  bool finished() const { return epoch_ >= cfg_.train.epochs; }
  void RunEpoch();
  const RunResult& result() const { return result_; }
  // Copies final network parameters into the result and hands it over.
  RunResult Finish();

  const std::vector<PolicyGradientLearner>& learners() const {
    return learners_;
  }

 private:
  void RunEpisode(std::vector<EpochData>& data, std::vector<double>& average,
                  long& step_index, std::vector<double>& metric_sums,
                  std::vector<int>& metric_counts, long& unanswered);

  RunConfig cfg_;
  Rng rng_;
  std::unique_ptr<Environment> env_;
  std::vector<PolicyGradientLearner> learners_;
  std::vector<ComplianceProfile> compliance_;
  RunResult result_;
  StepObserver observer_;
  int epoch_ = 0;
};

RunResult RunTraining(const RunConfig& cfg);

// Runs are independent; results come back in seed order. The OpenMP
// version uses up to `jobs` threads.
std::vector<RunResult> RunBatch(const RunConfig& base,
                                std::span<const std::uint64_t> seeds, int jobs);
std::vector<RunResult> RunBatchSerial(const RunConfig& base,
                                      std::span<const std::uint64_t> seeds);

// "a..b" (inclusive), "a,b,c" or a single integer.
std::vector<std::uint64_t> ParseSeedList(const std::string& text);

struct SummaryRow {
  int epoch = 0;
  std::string metric;
  double mean = 0;
  double ci95 = 0;  // 1.96 * sample sd / sqrt(k); 0 when k == 1
  int count = 0;    // runs where the metric is defined
};

// Sample mean and 1.96*sd/sqrt(k) half-width of finite values.
SummaryRow MeanAndHalfWidth(std::span<const double> values);
std::vector<SummaryRow> Summarize(const std::vector<RunResult>& runs);

void WriteMetricsCsv(std::ostream& out, const std::vector<RunResult>& runs);
void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> ReadSummaryCsv(std::istream& in);
void WriteAnomalies(std::ostream& out, const std::vector<RunResult>& runs);

// Writes metrics.csv, summary.csv and anomalies.log under `dir`.
void EmitOutputs(const std::string& dir, const std::vector<RunResult>& runs);

}  // namespace peerinc

#endif  // PEERINC_RUNNER_H_
