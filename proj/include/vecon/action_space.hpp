#pragma once

#include "vecon/config.hpp"

namespace vecon {

enum class ActionKind { gather, craft, buy, sell, noop };

struct DecodedAction {
  ActionKind kind = ActionKind::noop;
  int resource = -1;
  int price_index = -1;
};

/// Fixed index layout for population actions:
///   [gather r] x R, craft, [buy r,p] x R*P, [sell r,p] x R*P, noop (optional).
class ActionSpace {
 public:
  explicit ActionSpace(const EnvConfig& cfg)
      : resources_(cfg.num_resources), prices_(cfg.num_prices()), noop_(cfg.allow_noop) {}

  int size() const { return resources_ + 1 + 2 * resources_ * prices_ + (noop_ ? 1 : 0); }

  int gather(int r) const { return r; }
  int craft() const { return resources_; }
  int buy(int r, int p) const { return resources_ + 1 + r * prices_ + p; }
  int sell(int r, int p) const { return resources_ + 1 + resources_ * prices_ + r * prices_ + p; }
  int noop() const { return noop_ ? size() - 1 : -1; }

  bool valid_index(int a) const { return a >= 0 && a < size(); }

  DecodedAction decode(int a) const {
    if (a < resources_) return {ActionKind::gather, a, -1};
    if (a == resources_) return {ActionKind::craft, -1, -1};
    int k = a - resources_ - 1;
    const int block = resources_ * prices_;
    if (k < block) return {ActionKind::buy, k / prices_, k % prices_};
    k -= block;
    if (k < block) return {ActionKind::sell, k / prices_, k % prices_};
    return {ActionKind::noop, -1, -1};
  }

  int num_resources() const { return resources_; }
  int num_prices() const { return prices_; }
  bool has_noop() const { return noop_; }

 private:
  int resources_;
  int prices_;
  bool noop_;
};

}  // namespace vecon
