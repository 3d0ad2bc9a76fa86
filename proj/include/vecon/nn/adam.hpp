#pragma once

#include <cmath>
#include <limits>

#include "vecon/nn/tensor.hpp"

namespace vecon::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double max_grad_norm = 0.5;  // global norm clip; <= 0 or inf disables
};

template <class S>
struct AdamState {
  Vector<S> m;
  Vector<S> v;
  std::int64_t step = 0;

  AdamState() = default;
  explicit AdamState(Eigen::Index n) : m(Vector<S>::Zero(n)), v(Vector<S>::Zero(n)) {}
};

/// Rescales `grad` in place so its L2 norm is at most `max_norm`. Returns the
/// pre-clip norm.
template <class S>
double clip_global_norm(Vector<S>& grad, double max_norm) {
  const double norm = std::sqrt(static_cast<double>(grad.template cast<double>().squaredNorm()));
  if (max_norm > 0.0 && std::isfinite(max_norm) && norm > max_norm)
    grad *= static_cast<S>(max_norm / (norm + 1e-12));
  return norm;
}

/// One bias-corrected Adam update. Clips `grad` first (it is modified).
/// Returns the pre-clip gradient norm.
template <class S>
double adam_step(Vector<S>& params, Vector<S>& grad, AdamState<S>& state, double lr, const AdamConfig& cfg) {
  const double norm = clip_global_norm(grad, cfg.max_grad_norm);
  if (state.m.size() != params.size()) state = AdamState<S>(params.size());
  ++state.step;
  const S b1 = static_cast<S>(cfg.beta1), b2 = static_cast<S>(cfg.beta2);
  state.m = b1 * state.m + (S(1) - b1) * grad;
  state.v = b2 * state.v + (S(1) - b2) * grad.cwiseProduct(grad);
  const double t = static_cast<double>(state.step);
  const S c1 = static_cast<S>(1.0 - std::pow(cfg.beta1, t));
  const S c2 = static_cast<S>(1.0 - std::pow(cfg.beta2, t));
  const S step = static_cast<S>(lr);
  const S eps = static_cast<S>(cfg.eps);
  params.array() -= step * (state.m.array() / c1) / ((state.v.array() / c2).sqrt() + eps);
  return norm;
}

}  // namespace vecon::nn
