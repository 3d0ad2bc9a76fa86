#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "vecon/nn/categorical.hpp"
#include "vecon/nn/tensor.hpp"

namespace vecon::ppo {

using nn::HeadLayout;
using nn::MaskMatrix;
using nn::Matrix;
using nn::Vector;

template <class S>
struct PolicyLoss {
  S total = 0;        // surrogate - entropy_coef * entropy
  S surrogate = 0;    // -mean(min(r A, clip(r) A))
  S entropy = 0;      // mean entropy (summed over heads)
  S approx_kl = 0;    // mean(old_logp - logp)
  S clip_fraction = 0;
  Matrix<S> d_logits;  // dTotal/dLogits
};

/// Clipped PPO surrogate plus entropy bonus for multi-head masked categoricals.
/// `actions` is rows x heads. Gradients through masked logits are exactly zero.
template <class S>
PolicyLoss<S> policy_loss(const Eigen::Ref<const Matrix<S>>& logits, const MaskMatrix* mask, HeadLayout layout,
                          const Eigen::Ref<const Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>& actions,
                          const Eigen::Ref<const Vector<S>>& old_logp, const Eigen::Ref<const Vector<S>>& advantages,
                          double clip_eps, double entropy_coef) {
  constexpr S kNegInf = -std::numeric_limits<S>::infinity();
  const Eigen::Index n = logits.rows();
  PolicyLoss<S> out;
  Matrix<S> logp;
  nn::masked_log_softmax<S>(logits, mask, layout, logp);
  out.d_logits = Matrix<S>::Zero(n, logits.cols());
  const S inv_n = S(1) / static_cast<S>(n);
  const S lo = static_cast<S>(1.0 - clip_eps), hi = static_cast<S>(1.0 + clip_eps);
  const S c = static_cast<S>(entropy_coef);
  for (Eigen::Index i = 0; i < n; ++i) {
    S lp = 0;
    for (int h = 0; h < layout.heads; ++h) lp += logp(i, h * layout.width + actions(i, h));
    const S ratio = std::exp(lp - old_logp(i));
    const S adv = advantages(i);
    const S unclipped = ratio * adv;
    const S clipped = std::clamp(ratio, lo, hi) * adv;
    const bool clip_active = ratio < lo || ratio > hi;
    out.surrogate -= std::min(unclipped, clipped) * inv_n;
    out.approx_kl += (old_logp(i) - lp) * inv_n;
    if (clip_active) out.clip_fraction += inv_n;
    // d(-min)/d(logp): the clipped branch is flat in ratio.
    const S g_logp = (clip_active && clipped < unclipped) ? S(0) : -unclipped * inv_n;
    for (int h = 0; h < layout.heads; ++h) {
      const int base = h * layout.width;
      const S ent = nn::head_entropy<S>(logp.row(i), base, layout.width);
      out.entropy += ent * inv_n;
      for (int j = base; j < base + layout.width; ++j) {
        if (logp(i, j) == kNegInf) continue;
        const S p = std::exp(logp(i, j));
        const S onehot = (j - base == actions(i, h)) ? S(1) : S(0);
        // d entropy / d z_j = -p_j (log p_j + H)
        const S d_ent = -p * (logp(i, j) + ent);
        out.d_logits(i, j) = g_logp * (onehot - p) - c * inv_n * d_ent;
      }
    }
  }
  out.total = out.surrogate - c * out.entropy;
  return out;
}

template <class S>
struct ValueLoss {
  S total = 0;  // value_coef * 0.5 * mean(max(unclipped^2, clipped^2))
  Vector<S> d_values;
};

/// Squared value error with the prediction clipped to within `value_clip` of
/// the rollout-time estimate; the larger of the two errors is used.
template <class S>
ValueLoss<S> value_loss(const Eigen::Ref<const Vector<S>>& values, const Eigen::Ref<const Vector<S>>& old_values,
                        const Eigen::Ref<const Vector<S>>& targets, double value_clip, double value_coef) {
  const Eigen::Index n = values.size();
  ValueLoss<S> out;
  out.d_values = Vector<S>::Zero(n);
  const S scale = static_cast<S>(value_coef * 0.5) / static_cast<S>(n);
  const S vc = static_cast<S>(value_clip);
  for (Eigen::Index i = 0; i < n; ++i) {
    const S diff = values(i) - old_values(i);
    const bool inside = diff > -vc && diff < vc;
    const S clipped_v = old_values(i) + std::clamp(diff, -vc, vc);
    const S e1 = values(i) - targets(i);
    const S e2 = clipped_v - targets(i);
    if (e1 * e1 >= e2 * e2) {
      out.total += scale * e1 * e1;
      out.d_values(i) = 2 * scale * e1;
    } else {
      out.total += scale * e2 * e2;
      out.d_values(i) = inside ? 2 * scale * e2 : S(0);
    }
  }
  return out;
}

/// Normalizes to zero mean and unit (population) std; unchanged when n <= 1.
template <class S>
void normalize_advantages(Vector<S>& adv) {
  if (adv.size() <= 1) return;
  const double mean = adv.template cast<double>().mean();
  const double var = (adv.template cast<double>().array() - mean).square().mean();
  const double inv = 1.0 / (std::sqrt(var) + 1e-8);
  for (Eigen::Index i = 0; i < adv.size(); ++i) adv(i) = static_cast<S>((adv(i) - mean) * inv);
}

}  // namespace vecon::ppo
