#include "lprl/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "lprl/errors.hpp"

namespace lprl {

void HyperParams::validate() const {
  if (n_steps < 1) throw ConfigError("n_steps must be >= 1");
  if (ncores < 1) throw ConfigError("ncores must be >= 1");
  if (num_frames < 1) throw ConfigError("NF must be >= 1");
  if (noptepochs < 1) throw ConfigError("noptepochs must be >= 1");
  if (nminibatches < 1) throw ConfigError("nminibatches must be >= 1");
  if ((static_cast<long long>(n_steps) * ncores) % nminibatches != 0)
    throw ConfigError("nminibatches must divide n_steps * ncores");
  if (clip_epsilon <= 0.0) throw ConfigError("clip_epsilon must be > 0");
  if (gamma < 0.0 || gamma > 1.0) throw ConfigError("gamma must be in [0, 1]");
  if (lambda_gae < 0.0 || lambda_gae > 1.0)
    throw ConfigError("lambda_gae must be in [0, 1]");
  if (learning_rate < 0.0) throw ConfigError("learning_rate must be >= 0");
  if (max_grad_norm <= 0.0) throw ConfigError("max_grad_norm must be > 0");
  if (total_samples < static_cast<long long>(n_steps) * ncores)
    throw ConfigError("total_samples must cover at least one update");
  if (hidden_width < 1 || hidden_depth < 1)
    throw ConfigError("network width and depth must be >= 1");
  if (ent_coef < 0.0) throw ConfigError("ent_coef must be >= 0");
  if (vf_coef < 0.0) throw ConfigError("vf_coef must be >= 0");
  if (rollout_threads < 1) throw ConfigError("rollout_threads must be >= 1");
}

RolloutBuffer::RolloutBuffer(int ncores_, int n_steps_, int obs_len_,
                             int action_dims_)
    : ncores(ncores_),
      n_steps(n_steps_),
      obs_len(obs_len_),
      action_dims(action_dims_) {
  const std::size_t n = static_cast<std::size_t>(size());
  observations.assign(n * obs_len, 0.0);
  actions.assign(n * action_dims, 0);
  rewards.assign(n, 0.0);
  values.assign(n, 0.0);
  logprobs.assign(n, 0.0);
  dones.assign(n, 0);
  advantages.assign(n, 0.0);
  returns.assign(n, 0.0);
  bootstrap_values.assign(static_cast<std::size_t>(ncores), 0.0);
}

void compute_gae(RolloutBuffer& buffer, double gamma, double lambda_gae) {
  for (int w = 0; w < buffer.ncores; ++w) {
    double next_advantage = 0.0;
    double next_value = buffer.bootstrap_values[w];
    for (int t = buffer.n_steps - 1; t >= 0; --t) {
      const int i = buffer.index(w, t);
      const double r = buffer.rewards[i];
      const double v = buffer.values[i];
      double advantage;
      if (buffer.dones[i]) {
        // Terminal step: no bootstrap, recursion restarts. Written without
        // multiplications by zero so the one-step identity A = r - v is
        // bitwise exact.
        advantage = r - v;
      } else {
        const double delta = r + gamma * next_value - v;
        advantage = delta + gamma * lambda_gae * next_advantage;
      }
      buffer.advantages[i] = advantage;
      buffer.returns[i] = advantage + v;
      next_advantage = advantage;
      next_value = v;
    }
  }
}

LossResult ppo_loss(const PolicyValueNet& net, const MinibatchView& mb,
                    double clip_epsilon, double vf_coef, double ent_coef,
                    std::span<double> grad) {
  const RolloutBuffer& buf = *mb.buffer;
  const int m = static_cast<int>(mb.indices.size());
  if (m == 0) throw ContractViolation("ppo_loss: empty minibatch");
  const double inv_m = 1.0 / m;

  double surrogate_sum = 0.0, value_loss_sum = 0.0, entropy_sum = 0.0;
  double kl_sum = 0.0;
  int clipped = 0;
  std::vector<double> dlogits(static_cast<std::size_t>(net.total_logits()));

  for (int s = 0; s < m; ++s) {
    const int row = mb.indices[s];
    const double advantage = mb.advantages[s];
    const auto obs = buf.obs_row(row);
    const auto action = buf.action_row(row);
    const double old_logprob = buf.logprobs[row];
    const double target = buf.returns[row];

    const auto fwd = net.forward(obs);
    const auto eval = net.evaluate_action(fwd, action);

    const double ratio = std::exp(eval.logprob - old_logprob);
    const double unclipped = ratio * advantage;
    const double clipped_term =
        (advantage >= 0.0 ? (1.0 + clip_epsilon) : (1.0 - clip_epsilon)) *
        advantage;
    const bool use_unclipped = unclipped <= clipped_term;
    surrogate_sum += use_unclipped ? unclipped : clipped_term;
    if (std::abs(ratio - 1.0) > clip_epsilon) ++clipped;

    const double verr = eval.value - target;
    value_loss_sum += verr * verr;
    entropy_sum += eval.entropy;
    kl_sum += old_logprob - eval.logprob;

    // d loss / d logprob: only the unclipped branch carries gradient.
    const double dlogprob = use_unclipped ? (-ratio * advantage * inv_m) : 0.0;
    const double dvalue = vf_coef * 2.0 * verr * inv_m;

    const auto& spec = net.action_spec();
    for (int dim = 0; dim < spec.dims(); ++dim) {
      const int off = net.head_offset(dim);
      const int card = spec.cardinalities[dim];
      double head_entropy = 0.0;
      for (int k = 0; k < card; ++k) {
        const double lp = fwd.logprobs[off + k];
        if (!(std::isinf(lp) && lp < 0.0)) head_entropy -= std::exp(lp) * lp;
      }
      for (int k = 0; k < card; ++k) {
        const double lp = fwd.logprobs[off + k];
        const double p = std::exp(lp);
        double g = dlogprob * ((k == action[dim] ? 1.0 : 0.0) - p);
        // d(-ent_coef * H)/dz_k = ent_coef * p_k (log p_k + H)
        if (p > 0.0) g += ent_coef * inv_m * p * (lp + head_entropy);
        dlogits[off + k] = g;
      }
    }
    net.backward(obs, fwd, dlogits, dvalue, grad);
  }

  LossResult out;
  out.stats.policy_loss = -surrogate_sum * inv_m;
  out.stats.value_loss = value_loss_sum * inv_m;
  out.stats.entropy = entropy_sum * inv_m;
  out.stats.approx_kl = kl_sum * inv_m;
  out.stats.clipfrac = static_cast<double>(clipped) * inv_m;
  out.loss = out.stats.policy_loss + vf_coef * out.stats.value_loss -
             ent_coef * out.stats.entropy;

  if (!std::isfinite(out.loss)) {
    auto minmax = [](std::span<const double> v) {
      double lo = v.empty() ? 0.0 : v[0], hi = lo, sum = 0.0;
      for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        sum += x;
      }
      std::ostringstream os;
      os << "[min " << lo << ", max " << hi << ", mean "
         << (v.empty() ? 0.0 : sum / static_cast<double>(v.size())) << "]";
      return os.str();
    };
    std::ostringstream msg;
    msg << "non-finite PPO loss (" << out.loss << "); minibatch of " << m
        << ": advantages " << minmax(mb.advantages) << ", returns "
        << minmax(buf.returns) << ", values " << minmax(buf.values)
        << ", old logprobs " << minmax(buf.logprobs);
    throw NumericError(msg.str());
  }
  return out;
}

TrainStats update(PolicyValueNet& net, AdamOptimizer& adam,
                  const RolloutBuffer& buffer, const HyperParams& hp,
                  double learning_rate, Rng& shuffle_rng) {
  const int n = buffer.size();
  const int mb_size = n / hp.nminibatches;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> grad(net.param_count(), 0.0);
  std::vector<double> mb_adv(static_cast<std::size_t>(mb_size));
  TrainStats last_epoch{};

  for (int epoch = 0; epoch < hp.noptepochs; ++epoch) {
    // Fisher-Yates with the deterministic project RNG.
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(
          shuffle_rng.uniform_int(static_cast<std::uint64_t>(i) + 1));
      std::swap(order[i], order[j]);
    }
    TrainStats epoch_stats{};
    for (int b = 0; b < hp.nminibatches; ++b) {
      const std::span<const int> idx(order.data() + b * mb_size,
                                     static_cast<std::size_t>(mb_size));
      for (int s = 0; s < mb_size; ++s) mb_adv[s] = buffer.advantages[idx[s]];
      if (hp.normalize_advantage && mb_size > 1) {
        double mean = 0.0;
        for (double a : mb_adv) mean += a;
        mean /= mb_size;
        double var = 0.0;
        for (double a : mb_adv) var += (a - mean) * (a - mean);
        const double stdev = std::sqrt(var / mb_size);
        for (double& a : mb_adv) a = (a - mean) / (stdev + 1e-8);
      }
      std::fill(grad.begin(), grad.end(), 0.0);
      MinibatchView mb{&buffer, idx, mb_adv};
      const LossResult res =
          ppo_loss(net, mb, hp.clip_epsilon, hp.vf_coef, hp.ent_coef, grad);
      clip_global_norm(grad, hp.max_grad_norm);
      adam.step(net.params(), grad, learning_rate);

      epoch_stats.approx_kl += res.stats.approx_kl;
      epoch_stats.clipfrac += res.stats.clipfrac;
      epoch_stats.entropy += res.stats.entropy;
      epoch_stats.policy_loss += res.stats.policy_loss;
      epoch_stats.value_loss += res.stats.value_loss;
    }
    const double inv = 1.0 / hp.nminibatches;
    last_epoch = {epoch_stats.approx_kl * inv, epoch_stats.clipfrac * inv,
                  epoch_stats.entropy * inv, epoch_stats.policy_loss * inv,
                  epoch_stats.value_loss * inv};
  }
  return last_epoch;
}

namespace {

struct StepOutcome {
  PolicyValueNet::Sampled sampled;
  Candidate candidate;
  Observation obs_before;
};

void evaluate_worker_step(const PolicyValueNet& net, Worker& w,
                          StepOutcome& out) {
  out.obs_before = w.obs;
  out.sampled = net.sample(w.obs, w.policy_rng);
  out.candidate = w.env.evaluate(out.sampled.action, w.env_rng);
}

}  // namespace

RolloutBuffer collect_rollout(const PolicyValueNet& net,
                              std::vector<Worker>& workers,
                              BestTracker& tracker, const HyperParams& hp,
                              RunRecord* record) {
  const int ncores = static_cast<int>(workers.size());
  RolloutBuffer buffer(ncores, hp.n_steps, net.obs_len(),
                       net.action_spec().dims());
  std::vector<StepOutcome> outcomes(static_cast<std::size_t>(ncores));

  const int nthreads = std::min(hp.rollout_threads, ncores);
  for (int step = 0; step < hp.n_steps; ++step) {
    // Phase 1: sample + evaluate every worker, possibly concurrently.
    if (nthreads <= 1) {
      for (int w = 0; w < ncores; ++w)
        evaluate_worker_step(net, workers[w], outcomes[w]);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(nthreads));
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nthreads));
      for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
          try {
            for (int w = t; w < ncores; w += nthreads)
              evaluate_worker_step(net, workers[w], outcomes[w]);
          } catch (...) {
            errors[static_cast<std::size_t>(t)] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    }

    // Phase 2: reduce in worker order — tracker updates, buffer writes,
    // episode accounting. This fixed order makes runs reproducible no matter
    // how phase 1 was scheduled.
    for (int w = 0; w < ncores; ++w) {
      Worker& wk = workers[w];
      StepOutcome& oc = outcomes[w];
      StepResult sr = wk.env.finish_step(std::move(oc.candidate), tracker);

      const int i = buffer.index(w, step);
      std::copy(oc.obs_before.begin(), oc.obs_before.end(),
                buffer.observations.begin() +
                    static_cast<std::size_t>(i) * buffer.obs_len);
      std::copy(oc.sampled.action.begin(), oc.sampled.action.end(),
                buffer.actions.begin() +
                    static_cast<std::size_t>(i) * buffer.action_dims);
      buffer.rewards[i] = sr.reward;
      buffer.values[i] = oc.sampled.value;
      buffer.logprobs[i] = oc.sampled.logprob;
      buffer.dones[i] = sr.done ? 1 : 0;

      wk.episode_reward_sum += sr.reward;
      wk.episode_reward_max = (wk.episode_steps == 0)
                                  ? sr.reward
                                  : std::max(wk.episode_reward_max, sr.reward);
      ++wk.episode_steps;
      if (record) record->step_rewards.push_back(sr.reward);
      if (sr.done && record) {
        EpisodeRecord ep;
        ep.length = wk.episode_steps;
        ep.mean_reward = wk.episode_reward_sum / wk.episode_steps;
        ep.max_reward = wk.episode_reward_max;
        ep.end_sample = tracker.samples_seen();
        record->episodes.push_back(ep);
      }
      if (sr.done) {
        wk.episode_reward_sum = 0.0;
        wk.episode_reward_max = 0.0;
        wk.episode_steps = 0;
      }
      wk.obs = std::move(sr.observation);
    }

    // Phase 3: episode restarts see the tracker state after the whole step.
    for (int w = 0; w < ncores; ++w) {
      if (buffer.dones[buffer.index(w, step)])
        workers[w].obs = workers[w].env.reset(tracker);
    }
  }

  for (int w = 0; w < ncores; ++w) {
    const int last = buffer.index(w, hp.n_steps - 1);
    buffer.bootstrap_values[w] =
        buffer.dones[last] ? 0.0 : net.forward(workers[w].obs).value;
  }
  return buffer;
}

void train(const Environment& prototype, const HyperParams& hp,
           RunRecord& record, BestTracker* tracker_out) {
  hp.validate();
  record.seed = hp.seed;
  record.aborted = false;
  record.abort_reason.clear();

  Rng root = Rng::seeded(hp.seed);
  Rng init_rng = root.spawn(0);
  Rng shuffle_rng = root.spawn(1);

  PolicyValueNet net = PolicyValueNet::init(prototype.observation_size(),
                                            prototype.action_spec(),
                                            hp.hidden_width, hp.hidden_depth,
                                            init_rng);
  AdamOptimizer adam(net.param_count());

  std::vector<Worker> workers;
  workers.reserve(static_cast<std::size_t>(hp.ncores));
  BestTracker tracker;
  for (int w = 0; w < hp.ncores; ++w) {
    workers.emplace_back(prototype.clone(), hp.num_frames);
    workers[w].policy_rng = root.spawn(100 + 2 * static_cast<std::uint64_t>(w));
    workers[w].env_rng = root.spawn(101 + 2 * static_cast<std::uint64_t>(w));
    workers[w].obs = workers[w].env.reset(tracker);
  }

  const long long per_update = static_cast<long long>(hp.ncores) * hp.n_steps;
  const long long updates = hp.total_samples / per_update;

  try {
    for (long long u = 0; u < updates; ++u) {
      RolloutBuffer buffer = collect_rollout(net, workers, tracker, hp, &record);
      compute_gae(buffer, hp.gamma, hp.lambda_gae);
      const double lr =
          hp.anneal_lr
              ? hp.learning_rate * (1.0 - static_cast<double>(u) / updates)
              : hp.learning_rate;
      record.update_stats.push_back(
          update(net, adam, buffer, hp, lr, shuffle_rng));
    }
  } catch (...) {
    record.aborted = true;
    record.abort_reason = "training aborted; partial record flushed";
    record.best_objective = tracker.has_best() ? tracker.best_objective() : 0.0;
    record.samples_at_best = tracker.samples_at_best();
    record.total_samples = tracker.samples_seen();
    record.best_observation = tracker.best_observation();
    record.best_payload = tracker.best_payload();
    if (tracker_out) *tracker_out = tracker;
    throw;
  }

  record.best_objective = tracker.has_best() ? tracker.best_objective() : 0.0;
  record.samples_at_best = tracker.samples_at_best();
  record.total_samples = tracker.samples_seen();
  record.best_observation = tracker.best_observation();
  record.best_payload = tracker.best_payload();
  if (tracker_out) *tracker_out = tracker;
}

nlohmann::json RunRecord::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["config"] = config_snapshot;
  j["seed"] = seed;
  j["step_rewards"] = step_rewards;
  nlohmann::json eps;
  eps["mean_reward"] = nlohmann::json::array();
  eps["max_reward"] = nlohmann::json::array();
  eps["length"] = nlohmann::json::array();
  eps["end_sample"] = nlohmann::json::array();
  for (const auto& e : episodes) {
    eps["mean_reward"].push_back(e.mean_reward);
    eps["max_reward"].push_back(e.max_reward);
    eps["length"].push_back(e.length);
    eps["end_sample"].push_back(e.end_sample);
  }
  j["episodes"] = std::move(eps);
  nlohmann::json us;
  us["approx_kl"] = nlohmann::json::array();
  us["clipfrac"] = nlohmann::json::array();
  us["entropy"] = nlohmann::json::array();
  us["policy_loss"] = nlohmann::json::array();
  us["value_loss"] = nlohmann::json::array();
  for (const auto& s : update_stats) {
    us["approx_kl"].push_back(s.approx_kl);
    us["clipfrac"].push_back(s.clipfrac);
    us["entropy"].push_back(s.entropy);
    us["policy_loss"].push_back(s.policy_loss);
    us["value_loss"].push_back(s.value_loss);
  }
  j["updates"] = std::move(us);
  j["tracker"] = {{"best_objective", best_objective},
                  {"samples_at_best", samples_at_best},
                  {"total_samples", total_samples},
                  {"best_observation", best_observation},
                  {"best_payload", best_payload}};
  j["aborted"] = aborted;
  if (aborted) j["abort_reason"] = abort_reason;
  return j;
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
  RunRecord r;
  r.config_snapshot = j.value("config", nlohmann::json::object());
  r.seed = j.value("seed", 0ull);
  r.step_rewards = j.value("step_rewards", std::vector<double>{});
  if (j.contains("episodes")) {
    const auto& eps = j.at("episodes");
    const auto& mean = eps.at("mean_reward");
    const auto& mx = eps.at("max_reward");
    const auto& len = eps.at("length");
    const auto& end = eps.at("end_sample");
    for (std::size_t i = 0; i < mean.size(); ++i) {
      EpisodeRecord e;
      e.mean_reward = mean[i].get<double>();
      e.max_reward = mx[i].get<double>();
      e.length = len[i].get<int>();
      e.end_sample = end[i].get<long long>();
      r.episodes.push_back(e);
    }
  }
  if (j.contains("updates")) {
    const auto& us = j.at("updates");
    const auto& kl = us.at("approx_kl");
    for (std::size_t i = 0; i < kl.size(); ++i) {
      TrainStats s;
      s.approx_kl = kl[i].get<double>();
      s.clipfrac = us.at("clipfrac")[i].get<double>();
      s.entropy = us.at("entropy")[i].get<double>();
      s.policy_loss = us.at("policy_loss")[i].get<double>();
      s.value_loss = us.at("value_loss")[i].get<double>();
      r.update_stats.push_back(s);
    }
  }
  const auto& t = j.at("tracker");
  r.best_objective = t.at("best_objective").get<double>();
  r.samples_at_best = t.at("samples_at_best").get<long long>();
  r.total_samples = t.at("total_samples").get<long long>();
  r.best_observation = t.value("best_observation", Observation{});
  r.best_payload = t.value("best_payload", nlohmann::json());
  r.aborted = j.value("aborted", false);
  r.abort_reason = j.value("abort_reason", std::string{});
  return r;
}

}  // namespace lprl
