#pragma once

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

#include "lprl/ppo.hpp"
#include "lprl/stats.hpp"

namespace lprl::analytics {

/// Per-generation learning curve: episodes binned into n_generations
/// contiguous windows of near-equal size (counts differ by at most one).
struct GenerationSeries {
  std::vector<double> mean_objective;    // mean of episode means per window
  std::vector<double> max_objective;     // running max of design objectives
  std::vector<int> episode_counts;
  std::vector<long long> sample_counts;  // evaluator calls per window

  int generations() const { return static_cast<int>(mean_objective.size()); }
};

GenerationSeries bin_generations(const RunRecord& record, int n_generations);

/// IR = samples to reach the best design / total samples.
double improvement_ratio(const RunRecord& record);
/// IR for the mean measure: samples consumed through the episode with the
/// best episode-mean reward.
double improvement_ratio_mean(const RunRecord& record);

/// Max episode-mean reward over a run (the "best mean objective" measure).
double best_episode_mean(const RunRecord& record);

struct SampleEfficiency {
  double mean_se = 0.0;   // grand mean of last-generation episode rewards
  double sigma_se = 0.0;  // stdev (population) of those rewards
};

/// Pools the final-generation episode rewards of all runs.
SampleEfficiency sample_efficiency(std::span<const RunRecord> runs,
                                   int n_generations);

/// Fitness per evaluator call (Eq.-2-style performance measure).
double otp(double fitness, long long n_calls);

/// Summary row for one treatment over its seeds: the Avg/Best/sigma/IR table
/// schema for both the max-objective and mean-objective measures, plus the
/// sample-efficiency pair.
struct TreatmentSummary {
  std::string treatment;
  int experiments = 0;
  double avg_max_objective = 0.0;
  double best_max_objective = 0.0;
  double sigma_max_objective = 0.0;
  double avg_ir_max = 0.0;
  double avg_mean_objective = 0.0;   // average over seeds of best episode mean
  double best_mean_objective = 0.0;
  double sigma_mean_objective = 0.0;
  double avg_ir_mean = 0.0;
  double mean_se = 0.0;
  double sigma_se = 0.0;

  nlohmann::json to_json() const;
};

TreatmentSummary summarize_treatment(const std::string& name,
                                     std::span<const RunRecord> runs,
                                     int n_generations);

/// RFC-4180-style CSV with a header row; one line per generation.
void write_generation_csv(const std::string& path,
                          const GenerationSeries& series);

/// Multi-seed, multi-treatment result set; complete matrices of the two
/// measures feed the Friedman/Nemenyi tests.
struct ExperimentSet {
  std::vector<std::string> treatments;
  std::vector<std::vector<RunRecord>> runs;  // [treatment][seed]

  /// Measurement matrices: rows = seeds, columns = treatments. Throws unless
  /// every treatment has the same number of seeds.
  stats::Matrix max_objective_matrix() const;
  stats::Matrix mean_objective_matrix() const;
};

}  // namespace lprl::analytics
