#pragma once

#include <span>
#include <vector>

#include "lprl/env.hpp"
#include "lprl/rng.hpp"

namespace lprl {

/// Shared-trunk policy/value network: a stack of tanh affine layers (the first
/// consumes the flattened observation) feeding one categorical logit head per
/// action dimension plus a scalar value head. Parameters live in a single flat
/// vector so the optimizer, gradient clipping, and finite-difference checks
/// can treat the network as one dense parameter block.
///
/// Gradients are computed by reverse-mode differentiation specialized to this
/// fixed architecture; there is no external autodiff dependency.
class PolicyValueNet {
 public:
  PolicyValueNet(int obs_len, ActionSpec spec, int width, int depth);

  /// Orthogonally initialized network (gain sqrt(2) on the trunk, 0.01 on the
  /// policy heads, 1.0 on the value head; zero biases). Deterministic in rng.
  static PolicyValueNet init(int obs_len, const ActionSpec& spec, int width,
                             int depth, Rng& rng);

  struct Forward {
    std::vector<double> hidden;    // depth x width tanh activations, flattened
    std::vector<double> logits;    // per-dim logits, concatenated
    std::vector<double> logprobs;  // per-dim log-softmax, same layout
    double value = 0.0;
  };

  Forward forward(std::span<const double> obs) const;

  struct Sampled {
    std::vector<int> action;
    double logprob = 0.0;
    double value = 0.0;
    double entropy = 0.0;
  };

  /// Draws one action per dimension from its categorical head. logprob and
  /// entropy are sums over dimensions. Throws NumericError on non-finite
  /// network output.
  Sampled sample(std::span<const double> obs, Rng& rng) const;

  struct ActionEval {
    double logprob = 0.0;
    double entropy = 0.0;
    double value = 0.0;
  };

  ActionEval evaluate_action(const Forward& fwd,
                             std::span<const int> action) const;

  /// Accumulates dLoss/dparams into grad given upstream derivatives with
  /// respect to the concatenated logits and the value output. grad must have
  /// param_count() entries; contributions are added, not assigned.
  void backward(std::span<const double> obs, const Forward& fwd,
                std::span<const double> dlogits, double dvalue,
                std::span<double> grad) const;

  int obs_len() const { return obs_len_; }
  int width() const { return width_; }
  int depth() const { return depth_; }
  const ActionSpec& action_spec() const { return spec_; }
  int total_logits() const { return total_logits_; }
  int head_offset(int dim) const { return head_offsets_[dim]; }

  std::size_t param_count() const { return params_.size(); }
  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }

 private:
  struct Block {  // view into params_: weight (out x in, row-major) then bias
    std::size_t w = 0, b = 0;
    int in = 0, out = 0;
  };

  const double* W(const Block& l) const { return params_.data() + l.w; }
  const double* B(const Block& l) const { return params_.data() + l.b; }

  static void affine(const double* w, const double* b, int in, int out,
                     const double* x, double* y);

  int obs_len_;
  ActionSpec spec_;
  int width_;
  int depth_;
  int total_logits_ = 0;
  std::vector<int> head_offsets_;
  std::vector<Block> trunk_;
  std::vector<Block> heads_;
  Block value_head_;
  std::vector<double> params_;
};

/// Adam with standard moment coefficients (0.9, 0.999, eps 1e-8) and bias
/// correction.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(std::size_t n) : m_(n, 0.0), v_(n, 0.0) {}

  void step(std::span<double> params, std::span<const double> grad,
            double learning_rate);

  long long steps_taken() const { return t_; }

 private:
  std::vector<double> m_, v_;
  long long t_ = 0;
};

/// Scales grad in place so its global L2 norm is at most max_norm. Returns the
/// pre-clip norm.
double clip_global_norm(std::span<double> grad, double max_norm);

}  // namespace lprl
