#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vecon/nn/tensor.hpp"
#include "vecon/rng.hpp"

namespace vecon::nn {

/// Output row split into `heads` independent categoricals of `width` logits
/// each. The population policy uses one head over its action space; the
/// government uses one 21-level head per tax bracket.
struct HeadLayout {
  int heads = 1;
  int width = 0;
  int total() const { return heads * width; }
};

/// Log-probabilities per head with masked entries set to -inf. A null mask
/// means every entry is allowed. Throws when a head has no allowed entry.
template <class S>
void masked_log_softmax(const Eigen::Ref<const Matrix<S>>& logits, const MaskMatrix* mask, HeadLayout layout,
                        Matrix<S>& logp) {
  constexpr S kNegInf = -std::numeric_limits<S>::infinity();
  logp.resize(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    for (int h = 0; h < layout.heads; ++h) {
      const int base = h * layout.width;
      S mx = kNegInf;
      for (int j = base; j < base + layout.width; ++j)
        if (!mask || (*mask)(i, j)) mx = std::max(mx, logits(i, j));
      if (mx == kNegInf) throw std::invalid_argument("categorical head has no unmasked action");
      S sum = 0;
      for (int j = base; j < base + layout.width; ++j)
        if (!mask || (*mask)(i, j)) sum += std::exp(logits(i, j) - mx);
      const S lse = mx + std::log(sum);
      for (int j = base; j < base + layout.width; ++j)
        logp(i, j) = (!mask || (*mask)(i, j)) ? logits(i, j) - lse : kNegInf;
    }
  }
}

/// Entropy of one head of one row; masked entries contribute nothing.
template <class S, class Row>
S head_entropy(const Row& logp_row, int base, int width) {
  S h = 0;
  for (int j = base; j < base + width; ++j) {
    const S lp = logp_row(j);
    if (lp != -std::numeric_limits<S>::infinity()) h -= std::exp(lp) * lp;
  }
  return h;
}

/// Inverse-CDF draw from one head. Masked entries have probability exactly 0 and
/// are never returned.
template <class S, class Row>
int sample_head(const Row& logp_row, int base, int width, Rng& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  int last = -1;
  for (int j = 0; j < width; ++j) {
    const S lp = logp_row(base + j);
    if (lp == -std::numeric_limits<S>::infinity()) continue;
    cum += std::exp(static_cast<double>(lp));
    last = j;
    if (u < cum) return j;
  }
  if (last < 0) throw std::invalid_argument("cannot sample from a fully masked head");
  return last;
}

}  // namespace vecon::nn
