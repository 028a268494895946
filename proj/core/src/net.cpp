#include "lprl/net.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "lprl/errors.hpp"

namespace lprl {

PolicyValueNet::PolicyValueNet(int obs_len, ActionSpec spec, int width,
                               int depth)
    : obs_len_(obs_len), spec_(std::move(spec)), width_(width), depth_(depth) {
  if (obs_len < 1 || width < 1 || depth < 1)
    throw ContractViolation("PolicyValueNet: obs_len, width, depth must be >= 1");
  head_offsets_.reserve(spec_.dims() + 1);
  for (int c : spec_.cardinalities) {
    if (c < 1) throw ContractViolation("PolicyValueNet: cardinality must be >= 1");
    head_offsets_.push_back(total_logits_);
    total_logits_ += c;
  }
  head_offsets_.push_back(total_logits_);

  std::size_t cursor = 0;
  auto add_block = [&](int in, int out) {
    Block blk;
    blk.in = in;
    blk.out = out;
    blk.w = cursor;
    cursor += static_cast<std::size_t>(in) * out;
    blk.b = cursor;
    cursor += out;
    return blk;
  };

  trunk_.push_back(add_block(obs_len_, width_));
  for (int d = 1; d < depth_; ++d) trunk_.push_back(add_block(width_, width_));
  for (int c : spec_.cardinalities) heads_.push_back(add_block(width_, c));
  value_head_ = add_block(width_, 1);
  params_.assign(cursor, 0.0);
}

namespace {

// Semi-orthogonal matrix via modified Gram-Schmidt on the shorter side of a
// Gaussian draw, scaled by gain.
void orthogonal_fill(double* w, int out, int in, double gain, Rng& rng) {
  const int rows = std::min(out, in);
  const int cols = std::max(out, in);
  std::vector<double> a(static_cast<std::size_t>(rows) * cols);
  for (double& x : a) x = rng.normal();
  for (int r = 0; r < rows; ++r) {
    double* vr = a.data() + static_cast<std::size_t>(r) * cols;
    for (int p = 0; p < r; ++p) {
      const double* vp = a.data() + static_cast<std::size_t>(p) * cols;
      double dot = 0.0;
      for (int c = 0; c < cols; ++c) dot += vr[c] * vp[c];
      for (int c = 0; c < cols; ++c) vr[c] -= dot * vp[c];
    }
    double norm = 0.0;
    for (int c = 0; c < cols; ++c) norm += vr[c] * vr[c];
    norm = std::sqrt(norm);
    if (norm < 1e-12) {  // essentially impossible; retry the row
      for (int c = 0; c < cols; ++c) vr[c] = rng.normal();
      --r;
      continue;
    }
    for (int c = 0; c < cols; ++c) vr[c] /= norm;
  }
  for (int o = 0; o < out; ++o)
    for (int i = 0; i < in; ++i) {
      const double v = (out <= in) ? a[static_cast<std::size_t>(o) * cols + i]
                                   : a[static_cast<std::size_t>(i) * cols + o];
      w[static_cast<std::size_t>(o) * in + i] = gain * v;
    }
}

}  // namespace

PolicyValueNet PolicyValueNet::init(int obs_len, const ActionSpec& spec,
                                    int width, int depth, Rng& rng) {
  PolicyValueNet net(obs_len, spec, width, depth);
  const double trunk_gain = std::sqrt(2.0);
  for (const Block& blk : net.trunk_)
    orthogonal_fill(net.params_.data() + blk.w, blk.out, blk.in, trunk_gain, rng);
  for (const Block& blk : net.heads_)
    orthogonal_fill(net.params_.data() + blk.w, blk.out, blk.in, 0.01, rng);
  orthogonal_fill(net.params_.data() + net.value_head_.w, net.value_head_.out,
                  net.value_head_.in, 1.0, rng);
  return net;
}

void PolicyValueNet::affine(const double* w, const double* b, int in, int out,
                            const double* x, double* y) {
  for (int o = 0; o < out; ++o) {
    const double* row = w + static_cast<std::size_t>(o) * in;
    double acc = b[o];
    for (int i = 0; i < in; ++i) acc += row[i] * x[i];
    y[o] = acc;
  }
}

PolicyValueNet::Forward PolicyValueNet::forward(
    std::span<const double> obs) const {
  if (static_cast<int>(obs.size()) != obs_len_)
    throw ContractViolation("forward: observation length mismatch");
  Forward f;
  f.hidden.resize(static_cast<std::size_t>(depth_) * width_);
  const double* x = obs.data();
  for (int d = 0; d < depth_; ++d) {
    double* h = f.hidden.data() + static_cast<std::size_t>(d) * width_;
    const Block& blk = trunk_[d];
    affine(W(blk), B(blk), blk.in, blk.out, x, h);
    for (int i = 0; i < width_; ++i) h[i] = std::tanh(h[i]);
    x = h;
  }
  f.logits.resize(total_logits_);
  for (int dim = 0; dim < spec_.dims(); ++dim) {
    const Block& blk = heads_[dim];
    affine(W(blk), B(blk), blk.in, blk.out, x, f.logits.data() + head_offsets_[dim]);
  }
  double v = 0.0;
  affine(W(value_head_), B(value_head_), value_head_.in, 1, x, &v);
  f.value = v;

  // Stable per-dimension log-softmax.
  f.logprobs.resize(total_logits_);
  for (int dim = 0; dim < spec_.dims(); ++dim) {
    const int off = head_offsets_[dim];
    const int card = spec_.cardinalities[dim];
    double mx = f.logits[off];
    for (int k = 1; k < card; ++k) mx = std::max(mx, f.logits[off + k]);
    double sum = 0.0;
    for (int k = 0; k < card; ++k) sum += std::exp(f.logits[off + k] - mx);
    const double lse = mx + std::log(sum);
    for (int k = 0; k < card; ++k) f.logprobs[off + k] = f.logits[off + k] - lse;
  }
  return f;
}

PolicyValueNet::Sampled PolicyValueNet::sample(std::span<const double> obs,
                                               Rng& rng) const {
  const Forward f = forward(obs);
  if (!std::isfinite(f.value))
    throw NumericError("policy network produced a non-finite value output");
  Sampled s;
  s.value = f.value;
  s.action.resize(spec_.dims());
  for (int dim = 0; dim < spec_.dims(); ++dim) {
    const int off = head_offsets_[dim];
    const int card = spec_.cardinalities[dim];
    const double u = rng.uniform();
    double cdf = 0.0;
    int chosen = card - 1;
    for (int k = 0; k < card; ++k) {
      cdf += std::exp(f.logprobs[off + k]);
      if (u < cdf) {
        chosen = k;
        break;
      }
    }
    s.action[dim] = chosen;
    s.logprob += f.logprobs[off + chosen];
    for (int k = 0; k < card; ++k) {
      const double lp = f.logprobs[off + k];
      if (std::isinf(lp) && lp < 0.0) continue;  // 0 * log 0 == 0
      s.entropy -= std::exp(lp) * lp;
    }
  }
  if (!std::isfinite(s.logprob) || !std::isfinite(s.entropy))
    throw NumericError("policy network produced non-finite log-probabilities");
  return s;
}

PolicyValueNet::ActionEval PolicyValueNet::evaluate_action(
    const Forward& fwd, std::span<const int> action) const {
  if (static_cast<int>(action.size()) != spec_.dims())
    throw ContractViolation("evaluate_action: action dimension mismatch");
  ActionEval e;
  e.value = fwd.value;
  for (int dim = 0; dim < spec_.dims(); ++dim) {
    const int off = head_offsets_[dim];
    const int card = spec_.cardinalities[dim];
    e.logprob += fwd.logprobs[off + action[dim]];
    for (int k = 0; k < card; ++k) {
      const double lp = fwd.logprobs[off + k];
      if (std::isinf(lp) && lp < 0.0) continue;  // 0 * log 0 == 0
      e.entropy -= std::exp(lp) * lp;
    }
  }
  return e;
}

void PolicyValueNet::backward(std::span<const double> obs, const Forward& fwd,
                              std::span<const double> dlogits, double dvalue,
                              std::span<double> grad) const {
  if (grad.size() != params_.size())
    throw ContractViolation("backward: gradient buffer size mismatch");

  const double* h_last =
      fwd.hidden.data() + static_cast<std::size_t>(depth_ - 1) * width_;
  std::vector<double> dh(static_cast<std::size_t>(width_), 0.0);

  // Heads.
  for (int dim = 0; dim < spec_.dims(); ++dim) {
    const Block& blk = heads_[dim];
    const int off = head_offsets_[dim];
    for (int o = 0; o < blk.out; ++o) {
      const double g = dlogits[off + o];
      if (g == 0.0) continue;
      double* gw = grad.data() + blk.w + static_cast<std::size_t>(o) * blk.in;
      const double* wrow = W(blk) + static_cast<std::size_t>(o) * blk.in;
      for (int i = 0; i < blk.in; ++i) {
        gw[i] += g * h_last[i];
        dh[i] += g * wrow[i];
      }
      grad[blk.b + o] += g;
    }
  }
  if (dvalue != 0.0) {
    const Block& blk = value_head_;
    double* gw = grad.data() + blk.w;
    const double* wrow = W(blk);
    for (int i = 0; i < blk.in; ++i) {
      gw[i] += dvalue * h_last[i];
      dh[i] += dvalue * wrow[i];
    }
    grad[blk.b] += dvalue;
  }

  // Trunk, backwards; tanh'(z) expressed through the stored activation.
  std::vector<double> dx(static_cast<std::size_t>(std::max(obs_len_, width_)));
  for (int d = depth_ - 1; d >= 0; --d) {
    const Block& blk = trunk_[d];
    const double* h = fwd.hidden.data() + static_cast<std::size_t>(d) * width_;
    const double* input =
        (d == 0) ? obs.data()
                 : fwd.hidden.data() + static_cast<std::size_t>(d - 1) * width_;
    std::fill(dx.begin(), dx.begin() + blk.in, 0.0);
    for (int o = 0; o < blk.out; ++o) {
      const double dz = dh[o] * (1.0 - h[o] * h[o]);
      if (dz == 0.0) continue;
      double* gw = grad.data() + blk.w + static_cast<std::size_t>(o) * blk.in;
      const double* wrow = W(blk) + static_cast<std::size_t>(o) * blk.in;
      for (int i = 0; i < blk.in; ++i) {
        gw[i] += dz * input[i];
        dx[i] += dz * wrow[i];
      }
      grad[blk.b + o] += dz;
    }
    if (d > 0) std::copy(dx.begin(), dx.begin() + blk.in, dh.begin());
  }
}

void AdamOptimizer::step(std::span<double> params, std::span<const double> grad,
                         double learning_rate) {
  if (params.size() != m_.size() || grad.size() != m_.size())
    throw ContractViolation("AdamOptimizer: size mismatch");
  ++t_;
  const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    m_[i] = b1 * m_[i] + (1.0 - b1) * grad[i];
    v_[i] = b2 * v_[i] + (1.0 - b2) * grad[i] * grad[i];
    const double mhat = m_[i] / bc1;
    const double vhat = v_[i] / bc2;
    params[i] -= learning_rate * mhat / (std::sqrt(vhat) + eps);
  }
}

double clip_global_norm(std::span<double> grad, double max_norm) {
  double sq = 0.0;
  for (double g : grad) sq += g * g;
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double scale = max_norm / norm;
    for (double& g : grad) g *= scale;
  }
  return norm;
}

}  // namespace lprl
