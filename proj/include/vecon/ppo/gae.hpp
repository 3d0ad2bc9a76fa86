#pragma once

#include "vecon/nn/tensor.hpp"

namespace vecon::ppo {

/// Generalized advantage estimation over T x K arrays (time-major, one column
/// per independent sequence). `dones(t, k)` marks that the transition at t
/// ended an episode, so neither the bootstrap value nor later advantages flow
/// back across it. `bootstrap(k)` is the value of the state after the last row.
template <class S>
void compute_gae(const nn::Matrix<S>& rewards, const nn::Matrix<S>& values, const nn::Matrix<S>& dones,
                 const nn::Vector<S>& bootstrap, double gamma, double lambda, nn::Matrix<S>& advantages,
                 nn::Matrix<S>& returns) {
  const Eigen::Index T = rewards.rows(), K = rewards.cols();
  advantages.resize(T, K);
  const S g = static_cast<S>(gamma), gl = static_cast<S>(gamma * lambda);
  for (Eigen::Index k = 0; k < K; ++k) {
    S next_value = bootstrap(k);
    S next_adv = 0;
    for (Eigen::Index t = T - 1; t >= 0; --t) {
      const S live = S(1) - dones(t, k);
      const S delta = rewards(t, k) + g * next_value * live - values(t, k);
      next_adv = delta + gl * live * next_adv;
      advantages(t, k) = next_adv;
      next_value = values(t, k);
    }
  }
  returns = advantages + values;
}

}  // namespace vecon::ppo
