#include "lprl/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "lprl/errors.hpp"

namespace lprl::analytics {

GenerationSeries bin_generations(const RunRecord& record, int n_generations) {
  const int episodes = static_cast<int>(record.episodes.size());
  if (n_generations < 1) throw ConfigError("n_generations must be >= 1");
  if (episodes < n_generations)
    throw ConfigError("fewer episodes (" + std::to_string(episodes) +
                      ") than generations (" + std::to_string(n_generations) +
                      ")");
  GenerationSeries out;
  out.mean_objective.reserve(static_cast<std::size_t>(n_generations));
  double running_max = -std::numeric_limits<double>::infinity();
  for (int g = 0; g < n_generations; ++g) {
    const int begin = static_cast<int>(
        static_cast<long long>(g) * episodes / n_generations);
    const int end = static_cast<int>(
        static_cast<long long>(g + 1) * episodes / n_generations);
    double mean_sum = 0.0;
    long long samples = 0;
    for (int e = begin; e < end; ++e) {
      const auto& ep = record.episodes[static_cast<std::size_t>(e)];
      mean_sum += ep.mean_reward;
      samples += ep.length;
      running_max = std::max(running_max, ep.max_reward);
    }
    out.mean_objective.push_back(mean_sum / (end - begin));
    out.max_objective.push_back(running_max);
    out.episode_counts.push_back(end - begin);
    out.sample_counts.push_back(samples);
  }
  return out;
}

double improvement_ratio(const RunRecord& record) {
  if (record.total_samples <= 0)
    throw ConfigError("improvement ratio: empty run record");
  return static_cast<double>(record.samples_at_best) /
         static_cast<double>(record.total_samples);
}

double improvement_ratio_mean(const RunRecord& record) {
  if (record.total_samples <= 0 || record.episodes.empty())
    throw ConfigError("improvement ratio: empty run record");
  double best = -std::numeric_limits<double>::infinity();
  long long best_sample = 0;
  for (const auto& ep : record.episodes) {
    if (ep.mean_reward > best) {
      best = ep.mean_reward;
      best_sample = ep.end_sample;
    }
  }
  return static_cast<double>(best_sample) /
         static_cast<double>(record.total_samples);
}

double best_episode_mean(const RunRecord& record) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& ep : record.episodes) best = std::max(best, ep.mean_reward);
  return best;
}

SampleEfficiency sample_efficiency(std::span<const RunRecord> runs,
                                   int n_generations) {
  if (runs.empty()) throw ConfigError("sample efficiency: no runs");
  std::vector<double> rewards;
  for (const auto& run : runs) {
    const int episodes = static_cast<int>(run.episodes.size());
    if (episodes < n_generations)
      throw ConfigError("sample efficiency: fewer episodes than generations");
    const int begin = static_cast<int>(
        static_cast<long long>(n_generations - 1) * episodes / n_generations);
    for (int e = begin; e < episodes; ++e)
      rewards.push_back(run.episodes[static_cast<std::size_t>(e)].mean_reward);
  }
  SampleEfficiency se;
  for (double r : rewards) se.mean_se += r;
  se.mean_se /= static_cast<double>(rewards.size());
  double var = 0.0;
  for (double r : rewards) var += (r - se.mean_se) * (r - se.mean_se);
  se.sigma_se = std::sqrt(var / static_cast<double>(rewards.size()));
  return se;
}

double otp(double fitness, long long n_calls) {
  if (n_calls <= 0) throw std::domain_error("otp: number of calls must be > 0");
  return fitness / static_cast<double>(n_calls);
}

TreatmentSummary summarize_treatment(const std::string& name,
                                     std::span<const RunRecord> runs,
                                     int n_generations) {
  if (runs.empty()) throw ConfigError("summarize: no runs");
  TreatmentSummary s;
  s.treatment = name;
  s.experiments = static_cast<int>(runs.size());

  auto stats_over = [&](auto&& value, double& avg, double& best, double& sd) {
    std::vector<double> xs;
    for (const auto& r : runs) xs.push_back(value(r));
    avg = 0.0;
    best = -std::numeric_limits<double>::infinity();
    for (double x : xs) {
      avg += x;
      best = std::max(best, x);
    }
    avg /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - avg) * (x - avg);
    sd = std::sqrt(var / static_cast<double>(xs.size()));
  };

  stats_over([](const RunRecord& r) { return r.best_objective; },
             s.avg_max_objective, s.best_max_objective, s.sigma_max_objective);
  stats_over([](const RunRecord& r) { return best_episode_mean(r); },
             s.avg_mean_objective, s.best_mean_objective,
             s.sigma_mean_objective);
  for (const auto& r : runs) {
    s.avg_ir_max += improvement_ratio(r);
    s.avg_ir_mean += improvement_ratio_mean(r);
  }
  s.avg_ir_max /= s.experiments;
  s.avg_ir_mean /= s.experiments;

  const auto se = sample_efficiency(runs, n_generations);
  s.mean_se = se.mean_se;
  s.sigma_se = se.sigma_se;
  return s;
}

nlohmann::json TreatmentSummary::to_json() const {
  return {{"treatment", treatment},
          {"experiments", experiments},
          {"avg_max_objective", avg_max_objective},
          {"best_max_objective", best_max_objective},
          {"sigma_max_objective", sigma_max_objective},
          {"ir_max", avg_ir_max},
          {"avg_mean_objective", avg_mean_objective},
          {"best_mean_objective", best_mean_objective},
          {"sigma_mean_objective", sigma_mean_objective},
          {"ir_mean", avg_ir_mean},
          {"mean_objective_se", mean_se},
          {"sigma_se", sigma_se}};
}

void write_generation_csv(const std::string& path,
                          const GenerationSeries& series) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << "generation,episodes,samples,mean_objective,max_objective\r\n";
  out.precision(17);
  for (int g = 0; g < series.generations(); ++g) {
    out << g + 1 << ',' << series.episode_counts[g] << ','
        << series.sample_counts[g] << ',' << series.mean_objective[g] << ','
        << series.max_objective[g] << "\r\n";
  }
}

stats::Matrix ExperimentSet::max_objective_matrix() const {
  if (runs.empty()) throw ConfigError("experiment set: empty");
  const int k = static_cast<int>(runs.size());
  const int n = static_cast<int>(runs[0].size());
  stats::Matrix m(n, k);
  for (int c = 0; c < k; ++c) {
    if (static_cast<int>(runs[static_cast<std::size_t>(c)].size()) != n)
      throw ConfigError("experiment set: incomplete matrix");
    for (int r = 0; r < n; ++r)
      m.at(r, c) = runs[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]
                       .best_objective;
  }
  return m;
}

stats::Matrix ExperimentSet::mean_objective_matrix() const {
  if (runs.empty()) throw ConfigError("experiment set: empty");
  const int k = static_cast<int>(runs.size());
  const int n = static_cast<int>(runs[0].size());
  stats::Matrix m(n, k);
  for (int c = 0; c < k; ++c) {
    if (static_cast<int>(runs[static_cast<std::size_t>(c)].size()) != n)
      throw ConfigError("experiment set: incomplete matrix");
    for (int r = 0; r < n; ++r)
      m.at(r, c) = best_episode_mean(
          runs[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
  }
  return m;
}

}  // namespace lprl::analytics
