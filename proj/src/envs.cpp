#include "gsel/envs.hpp"

#include <climits>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gsel {

int EnvironmentSpec::k() const {
  switch (kind) {
    case Kind::SyntheticNormal: return static_cast<int>(means.size());
    case Kind::SyntheticExperiment1: return 50;
    case Kind::Inventory: return static_cast<int>(policies.size());
  }
  return 0;
}

EnvironmentSpec EnvironmentSpec::synthetic_normal(Eigen::VectorXd means, Eigen::VectorXd stds) {
  if (means.size() < 2 || means.size() != stds.size())
    throw std::invalid_argument("synthetic_normal: means/stds must share length k >= 2");
  if ((stds.array() <= 0.0).any())
    throw std::invalid_argument("synthetic_normal: stds must be > 0");
  EnvironmentSpec env;
  env.kind = Kind::SyntheticNormal;
  env.means = std::move(means);
  env.stds = std::move(stds);
  return env;
}

EnvironmentSpec EnvironmentSpec::experiment1() {
  EnvironmentSpec env;
  env.kind = Kind::SyntheticExperiment1;
  return env;
}

EnvironmentSpec EnvironmentSpec::inventory(std::vector<InventoryPolicy> policies,
                                           InventoryParams params, int true_best) {
  if (policies.size() < 2) throw std::invalid_argument("inventory: need at least 2 policies");
  for (const auto& p : policies)
    if (p.reorder_point >= p.order_up_to)
      throw std::invalid_argument("inventory: each policy needs s < S");
  if (params.horizon < 1) throw std::invalid_argument("inventory: horizon must be >= 1");
  EnvironmentSpec env;
  env.kind = Kind::Inventory;
  env.objective = Objective::Minimize;
  env.policies = std::move(policies);
  env.inv_params = params;
  env.true_best_override = true_best;
  return env;
}

StageResult inventory_stage_backlog(int level, int demand, const InventoryPolicy& policy,
                                    const InventoryParams& params) {
  StageResult out;
  if (level < policy.reorder_point) {
    out.cost += params.setup_cost + params.unit_cost * (policy.order_up_to - level);
    level = policy.order_up_to;
  }
  const int end = level - demand;
  out.cost += end >= 0 ? params.holding_cost * end : params.shortage_cost * (-end);
  out.next_level = end;
  return out;
}

StageResult inventory_stage_replenish(int level, int demand, const InventoryPolicy& policy,
                                      const InventoryParams& params) {
  const int s = policy.reorder_point;
  const int cap = policy.order_up_to;
  StageResult out;
  if (demand <= level - s) {
    out.cost = params.holding_cost * (level - demand);
    out.next_level = level - demand;
  } else if (demand <= level) {
    out.cost = (params.holding_cost - params.unit_cost) * (level - demand) +
               params.setup_cost + params.unit_cost * cap;
    out.next_level = cap;
  } else {
    out.cost = params.shortage_cost * (demand - level) + params.setup_cost +
               params.unit_cost * cap;
    out.next_level = cap;
  }
  return out;
}

StageResult inventory_stage(int level, int demand, const InventoryPolicy& policy,
                            const InventoryParams& params) {
  return params.carry_backlog ? inventory_stage_backlog(level, demand, policy, params)
                              : inventory_stage_replenish(level, demand, policy, params);
}

double inventory_replication_cost(const InventoryPolicy& policy, const InventoryParams& params,
                                  Rng& rng) {
  int level = params.initial_level != INT_MIN ? params.initial_level : policy.order_up_to;
  double total = 0.0;
  for (int stage = 0; stage < params.horizon; ++stage) {
    const int demand = rng.poisson(params.demand_mean);
    const StageResult r = inventory_stage(level, demand, policy, params);
    total += r.cost;
    level = r.next_level;
  }
  return total / params.horizon;
}

double sample(const EnvironmentSpec& env, int i, Rng& rng) {
  if (i < 0 || i >= env.k()) throw std::out_of_range("sample: alternative index out of range");
  switch (env.kind) {
    case EnvironmentSpec::Kind::SyntheticNormal:
      return rng.normal(env.means[i], env.stds[i]);
    case EnvironmentSpec::Kind::SyntheticExperiment1:
      throw std::logic_error("sample: draw a concrete instance before sampling");
    case EnvironmentSpec::Kind::Inventory: {
      const double cost = inventory_replication_cost(env.policies[i], env.inv_params, rng);
      return env.objective == Objective::Minimize ? -cost : cost;
    }
  }
  throw std::logic_error("sample: unknown environment kind");
}

EnvironmentSpec draw_experiment1_instance(Rng& rng) {
  const int k = 50;
  Eigen::VectorXd means(k), stds(k);
  for (int i = 0; i < k; ++i) {
    const double spread = (k + 1.0 - (i + 1)) / 10.0;  // (51-i)/10 for 1-based i
    means[i] = rng.normal(0.0, spread);
    stds[i] = k + 1.0 - (i + 1);
  }
  return EnvironmentSpec::synthetic_normal(std::move(means), std::move(stds));
}

int true_best(const EnvironmentSpec& env) {
  switch (env.kind) {
    case EnvironmentSpec::Kind::SyntheticNormal: {
      int best = 0;
      for (int i = 1; i < env.k(); ++i)
        if (env.means[i] > env.means[best]) best = i;
      for (int i = 0; i < env.k(); ++i)
        if (i != best && std::fabs(env.means[i] - env.means[best]) < 1e-12)
          throw std::runtime_error("true_best: ambiguous tie between alternatives");
      return best;
    }
    case EnvironmentSpec::Kind::SyntheticExperiment1:
      throw std::logic_error("true_best: meta environment has no fixed best");
    case EnvironmentSpec::Kind::Inventory:
      if (env.true_best_override < 0 || env.true_best_override >= env.k())
        throw std::runtime_error("true_best: inventory ground truth not configured");
      return env.true_best_override;
  }
  throw std::logic_error("true_best: unknown environment kind");
}

std::vector<InventoryPolicy> default_inventory_table() {
  return {
      {5, 45},  {5, 50},  {10, 45}, {10, 50}, {10, 55}, {10, 60}, {10, 65},
      {10, 70}, {20, 40}, {20, 45}, {20, 50}, {20, 55}, {20, 60}, {20, 65},
      {20, 70}, {20, 75}, {20, 80}, {30, 50}, {30, 55}, {30, 60},
  };
}

std::vector<InventoryPolicy> load_inventory_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open inventory table: " + path);
  std::vector<InventoryPolicy> table;
  std::string line;
  int lineno = 0;
  int expected_index = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.find("index") != std::string::npos) continue;  // header
    std::istringstream row(line);
    std::string cell;
    int vals[3];
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(row, cell, ','))
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": expected columns index,s,S");
      try {
        vals[c] = std::stoi(cell);
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": non-integer value '" + cell + "'");
      }
    }
    if (vals[0] != expected_index)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": indices must run 1..k in order");
    if (vals[1] >= vals[2])
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": needs s < S");
    table.push_back({vals[1], vals[2]});
    ++expected_index;
  }
  if (table.size() < 2)
    throw std::runtime_error(path + ": inventory table needs at least 2 rows");
  return table;
}

}  // namespace gsel
