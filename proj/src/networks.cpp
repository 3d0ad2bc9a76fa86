#include "vecon/ppo/networks.hpp"

#include <algorithm>
#include <cmath>

#include "vecon/action_space.hpp"
#include "vecon/observation.hpp"

namespace vecon::ppo {

namespace {

constexpr double kHiddenGain = 1.4142135623730951;
constexpr double kPolicyGain = 0.01;
constexpr double kValueGain = 1.0;

Network make(int inputs, int hidden, int outputs, double output_gain, Rng& rng) {
  Network n(nn::MlpShape{inputs, hidden, outputs});
  n.mlp.init(rng, kHiddenGain, output_gain);
  return n;
}

std::vector<int> agents_of(const std::vector<int>& owner, int k) {
  std::vector<int> out;
  for (std::size_t i = 0; i < owner.size(); ++i)
    if (owner[i] == k) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace

std::vector<int> AgentNetworks::agents_of_policy(int k) const { return agents_of(policy_of, k); }
std::vector<int> AgentNetworks::agents_of_value(int k) const { return agents_of(value_of, k); }

std::int64_t AgentNetworks::population_param_count() const {
  std::int64_t total = 0;
  for (const auto& p : policies) total += p.num_params();
  for (const auto& v : values) total += v.num_params();
  return total;
}

std::int64_t AgentNetworks::government_param_count() const {
  return has_government ? gov_policy.num_params() + gov_value.num_params() : 0;
}

bool government_active(const EnvConfig& env, const TrainConfig& train) {
  return train.government_enabled && env.taxes_enabled;
}

AgentNetworks build_sharing_mode(const EnvConfig& env, const TrainConfig& train, Rng& rng) {
  env.validate();
  train.validate();
  AgentNetworks a;
  a.mode = train.sharing_mode;
  a.population = env.population_size;
  a.with_agent_id = train.sharing_mode == SharingMode::shared_agent_id;
  a.pop_obs_size = ObservationLayout::population(env, a.with_agent_id).size();
  a.pop_actions = ActionSpace(env).size();
  a.pop_heads = nn::HeadLayout{1, a.pop_actions};
  const int n = env.population_size;
  const int obs = a.pop_obs_size;

  switch (a.mode) {
    case SharingMode::shared:
    case SharingMode::shared_agent_id:
      a.policies.push_back(make(obs, train.hidden_width, a.pop_actions, kPolicyGain, rng));
      a.values.push_back(make(obs, train.hidden_width, 1, kValueGain, rng));
      a.policy_of.assign(static_cast<std::size_t>(n), 0);
      a.value_of.assign(static_cast<std::size_t>(n), 0);
      break;
    case SharingMode::independent:
      for (int i = 0; i < n; ++i) {
        a.policies.push_back(make(obs, train.independent_hidden_width, a.pop_actions, kPolicyGain, rng));
        a.values.push_back(make(obs, train.independent_hidden_width, 1, kValueGain, rng));
        a.policy_of.push_back(i);
        a.value_of.push_back(i);
      }
      break;
    case SharingMode::ctde_naive:
      for (int i = 0; i < n; ++i) {
        a.policies.push_back(make(obs, train.independent_hidden_width, a.pop_actions, kPolicyGain, rng));
        a.policy_of.push_back(i);
      }
      a.values.push_back(make(obs, train.hidden_width, 1, kValueGain, rng));
      a.value_of.assign(static_cast<std::size_t>(n), 0);
      break;
  }

  a.has_government = government_active(env, train);
  a.gov_obs_size = ObservationLayout::government(env).size();
  a.gov_heads = nn::HeadLayout{env.num_brackets(), kRateLevels};
  if (a.has_government) {
    a.gov_policy = make(a.gov_obs_size, train.hidden_width, a.gov_heads.total(), kPolicyGain, rng);
    a.gov_value = make(a.gov_obs_size, train.hidden_width, 1, kValueGain, rng);
  }
  return a;
}

namespace {

void put_network(nn::TensorFile& f, nlohmann::json& shapes, const std::string& prefix, const Network& net) {
  const auto& p = net.mlp.params();
  for (const auto& s : net.mlp.slices()) {
    nn::NamedTensor t{prefix + "/" + s.name, {s.rows, s.cols}, {}};
    t.data.assign(p.data() + s.offset, p.data() + s.offset + s.rows * s.cols);
    f.tensors.push_back(std::move(t));
  }
  const auto n = static_cast<std::int64_t>(net.num_params());
  f.tensors.push_back({prefix + "/adam_m", {n}, std::vector<float>(net.opt.m.data(), net.opt.m.data() + n)});
  f.tensors.push_back({prefix + "/adam_v", {n}, std::vector<float>(net.opt.v.data(), net.opt.v.data() + n)});
  const auto& sh = net.mlp.shape();
  shapes[prefix] = {{"inputs", sh.inputs}, {"hidden", sh.hidden}, {"outputs", sh.outputs}, {"adam_step", net.opt.step}};
}

Network get_network(const nn::TensorFile& f, const nlohmann::json& shapes, const std::string& prefix) {
  if (!shapes.contains(prefix)) throw nn::CheckpointError("checkpoint has no network '" + prefix + "'");
  const auto& j = shapes.at(prefix);
  Network net(nn::MlpShape{j.at("inputs").get<int>(), j.at("hidden").get<int>(), j.at("outputs").get<int>()});
  auto& p = net.mlp.params();
  for (const auto& s : net.mlp.slices()) {
    const auto& t = f.get(prefix + "/" + s.name);
    if (t.data.size() != static_cast<std::size_t>(s.rows * s.cols))
      throw nn::CheckpointError("tensor '" + t.name + "' has the wrong size");
    std::copy(t.data.begin(), t.data.end(), p.data() + s.offset);
  }
  const auto& m = f.get(prefix + "/adam_m");
  const auto& v = f.get(prefix + "/adam_v");
  if (m.data.size() != static_cast<std::size_t>(net.num_params()) || v.data.size() != m.data.size())
    throw nn::CheckpointError("optimizer state of '" + prefix + "' has the wrong size");
  std::copy(m.data.begin(), m.data.end(), net.opt.m.data());
  std::copy(v.data.begin(), v.data.end(), net.opt.v.data());
  net.opt.step = j.at("adam_step").get<std::int64_t>();
  return net;
}

}  // namespace

nn::TensorFile to_tensor_file(const AgentNetworks& nets) {
  nn::TensorFile f;
  nlohmann::json w;
  w["mode"] = to_string(nets.mode);
  w["population"] = nets.population;
  w["pop_obs_size"] = nets.pop_obs_size;
  w["pop_actions"] = nets.pop_actions;
  w["with_agent_id"] = nets.with_agent_id;
  w["policy_of"] = nets.policy_of;
  w["value_of"] = nets.value_of;
  w["has_government"] = nets.has_government;
  w["gov_obs_size"] = nets.gov_obs_size;
  w["gov_heads"] = nets.gov_heads.heads;
  w["gov_head_width"] = nets.gov_heads.width;
  w["num_policies"] = nets.policies.size();
  w["num_values"] = nets.values.size();
  nlohmann::json shapes = nlohmann::json::object();
  for (std::size_t k = 0; k < nets.policies.size(); ++k)
    put_network(f, shapes, "population/policy/" + std::to_string(k), nets.policies[k]);
  for (std::size_t k = 0; k < nets.values.size(); ++k)
    put_network(f, shapes, "population/value/" + std::to_string(k), nets.values[k]);
  if (nets.has_government) {
    put_network(f, shapes, "government/policy", nets.gov_policy);
    put_network(f, shapes, "government/value", nets.gov_value);
  }
  w["shapes"] = shapes;
  f.meta["networks"] = w;
  return f;
}

AgentNetworks from_tensor_file(const nn::TensorFile& f) {
  if (!f.meta.contains("networks")) throw nn::CheckpointError("checkpoint has no network wiring");
  const auto& w = f.meta.at("networks");
  AgentNetworks a;
  try {
    a.mode = sharing_mode_from_string(w.at("mode").get<std::string>());
    a.population = w.at("population").get<int>();
    a.pop_obs_size = w.at("pop_obs_size").get<int>();
    a.pop_actions = w.at("pop_actions").get<int>();
    a.with_agent_id = w.at("with_agent_id").get<bool>();
    a.pop_heads = nn::HeadLayout{1, a.pop_actions};
    a.policy_of = w.at("policy_of").get<std::vector<int>>();
    a.value_of = w.at("value_of").get<std::vector<int>>();
    a.has_government = w.at("has_government").get<bool>();
    a.gov_obs_size = w.at("gov_obs_size").get<int>();
    a.gov_heads = nn::HeadLayout{w.at("gov_heads").get<int>(), w.at("gov_head_width").get<int>()};
    const auto& shapes = w.at("shapes");
    const auto np = w.at("num_policies").get<std::size_t>();
    const auto nv = w.at("num_values").get<std::size_t>();
    for (std::size_t k = 0; k < np; ++k) a.policies.push_back(get_network(f, shapes, "population/policy/" + std::to_string(k)));
    for (std::size_t k = 0; k < nv; ++k) a.values.push_back(get_network(f, shapes, "population/value/" + std::to_string(k)));
    if (a.has_government) {
      a.gov_policy = get_network(f, shapes, "government/policy");
      a.gov_value = get_network(f, shapes, "government/value");
    }
  } catch (const nlohmann::json::exception& e) {
    throw nn::CheckpointError(std::string("malformed network wiring: ") + e.what());
  } catch (const ConfigError& e) {
    throw nn::CheckpointError(e.what());
  }
  const auto valid_owner = [](const std::vector<int>& owner, std::size_t n, std::size_t count) {
    if (owner.size() != n) return false;
    for (int k : owner)
      if (k < 0 || static_cast<std::size_t>(k) >= count) return false;
    return true;
  };
  const auto n = static_cast<std::size_t>(a.population);
  if (!valid_owner(a.policy_of, n, a.policies.size()) || !valid_owner(a.value_of, n, a.values.size()))
    throw nn::CheckpointError("checkpoint wiring references missing networks");
  return a;
}

}  // namespace vecon::ppo
