#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecon/action_space.hpp"
#include "vecon/agent.hpp"
#include "vecon/config.hpp"
#include "vecon/market.hpp"
#include "vecon/rng.hpp"
#include "vecon/taxation.hpp"

namespace vecon {

struct WorldState {
  std::vector<AgentState> agents;
  MarketState market;
  TaxState tax;
  int timestep = 0;
  Rng rng;
  // Utilities at the current timestep; rewards are differences of these.
  std::vector<double> utility;
  double gov_utility = 0.0;

  double total_coin() const;
  std::vector<double> coins() const;  // inventory + escrow per agent
};

class InvalidAction : public std::invalid_argument {
 public:
  InvalidAction(int agent, int action, const std::string& why)
      : std::invalid_argument("agent " + std::to_string(agent) + " action " + std::to_string(action) +
                              ": " + why),
        agent_(agent) {}
  int agent() const noexcept { return agent_; }

 private:
  int agent_;
};

struct StepResult {
  std::vector<double> rewards;
  double gov_reward = 0.0;
  bool done = false;
  bool tax_collected_this_step = false;
  double tax_collected = 0.0;
  int crafts = 0;
  double crafted_coin = 0.0;
  std::vector<int> gathered_units;  // per resource
  std::vector<int> crafted_units;   // per resource, consumed by crafting
  std::vector<Trade> trades;
};

/// Fresh episode. Skills are drawn from `skill_seed`; the in-episode stream
/// (gathering, tie-breaks) is seeded from `episode_seed`.
WorldState reset(const EnvConfig& cfg, std::uint64_t skill_seed, std::uint64_t episode_seed);

inline WorldState reset(const EnvConfig& cfg, std::uint64_t seed) { return reset(cfg, seed, seed); }

/// Advances one timestep. Applies, in order: population actions (agent index
/// order), one matching round, order expiry, the periodic tax collection and
/// rate update, then rewards. `gov_levels` may be empty; it only takes effect at
/// period boundaries with taxes enabled. Throws InvalidAction for masked actions.
void step(const EnvConfig& cfg, WorldState& state, std::span<const int> actions,
          std::span<const int> gov_levels, StepResult& out);

StepResult step(const EnvConfig& cfg, WorldState& state, std::span<const int> actions,
                std::span<const int> gov_levels = {});

/// floor(skill + rho) with rho ~ U[0, 1.1). One draw.
int gather_amount(double gather_skill, Rng& rng);

bool can_craft(const AgentState& agent, const EnvConfig& cfg);

/// Consumes craft_units_required from each of the craft_distinct_required
/// most-held resources (lowest index wins ties) and pays skill * scale.
/// Returns the coin gained. Throws std::logic_error if crafting is not allowed.
double craft(AgentState& agent, const EnvConfig& cfg);

double progress_skill(double skill, const EnvConfig& cfg);

bool action_allowed(const WorldState& state, const EnvConfig& cfg, int agent, int action);

/// Writes one byte per action into `mask` (1 = allowed).
void action_mask(const WorldState& state, const EnvConfig& cfg, int agent, std::span<std::uint8_t> mask);
std::vector<std::uint8_t> action_mask(const WorldState& state, const EnvConfig& cfg, int agent);

/// Byte representation of the full state, for bit-identity comparisons.
std::string serialize(const WorldState& state);

}  // namespace vecon
