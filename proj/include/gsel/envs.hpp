#pragma once

#include <Eigen/Dense>
#include <climits>
#include <string>
#include <vector>

#include "gsel/rng.hpp"

namespace gsel {

enum class Objective { Maximize, Minimize };

struct InventoryPolicy {
  int reorder_point = 0;  // s
  int order_up_to = 0;    // S
};

struct InventoryParams {
  double demand_mean = 25.0;
  int horizon = 30;
  double setup_cost = 32.0;     // K, per order
  double unit_cost = 3.0;       // K', per stock ordered
  double holding_cost = 1.0;    // H, per stock per stage
  double shortage_cost = 5.0;   // p, per short unit per stage
  int initial_level = INT_MIN;  // INT_MIN: start at capacity S_i
  // Carried backlog: review before demand, order up to S when the level is
  // below s, end-of-stage holding/shortage on a level that may go negative.
  // The alternative arrangement replenishes after demand and never carries
  // a negative level; only the backlog model reproduces the published
  // optimum of the 20-alternative benchmark.
  bool carry_backlog = true;
};

// Stochastic replication oracle. SyntheticExperiment1 is a meta
// environment: the harness draws a concrete SyntheticNormal instance from
// it at the start of each macro replication.
struct EnvironmentSpec {
  enum class Kind { SyntheticNormal, SyntheticExperiment1, Inventory };
  Kind kind = Kind::SyntheticNormal;
  Objective objective = Objective::Maximize;

  Eigen::VectorXd means;  // SyntheticNormal
  Eigen::VectorXd stds;

  std::vector<InventoryPolicy> policies;  // Inventory
  InventoryParams inv_params;
  int true_best_override = -1;  // 0-based; inventory ground truth

  int k() const;
  bool has_true_means() const { return kind == Kind::SyntheticNormal; }

  static EnvironmentSpec synthetic_normal(Eigen::VectorXd means, Eigen::VectorXd stds);
  static EnvironmentSpec experiment1();
  static EnvironmentSpec inventory(std::vector<InventoryPolicy> policies,
                                   InventoryParams params = {}, int true_best = 11);
};

// One replication of alternative i, oriented so larger is better.
double sample(const EnvironmentSpec& env, int i, Rng& rng);

// Concrete instance of the 50-alternative synthetic benchmark: means drawn
// fresh from N(0, ((51-i)/10)^2), stds fixed at 51-i.
EnvironmentSpec draw_experiment1_instance(Rng& rng);

int true_best(const EnvironmentSpec& env);

// One review period. The backlog form reviews the level first (order up to
// S when below s), then applies demand and charges holding/shortage on the
// possibly negative end-of-stage level. The replenish-after-demand form is
// the three-branch stage cost with an immediate return to capacity.
struct StageResult {
  double cost = 0.0;
  int next_level = 0;
};
StageResult inventory_stage_backlog(int level, int demand, const InventoryPolicy& policy,
                                    const InventoryParams& params);
StageResult inventory_stage_replenish(int level, int demand, const InventoryPolicy& policy,
                                      const InventoryParams& params);
StageResult inventory_stage(int level, int demand, const InventoryPolicy& policy,
                            const InventoryParams& params);

// Average per-stage cost of one replication (before orientation).
double inventory_replication_cost(const InventoryPolicy& policy, const InventoryParams& params,
                                  Rng& rng);

std::vector<InventoryPolicy> default_inventory_table();
std::vector<InventoryPolicy> load_inventory_table_csv(const std::string& path);

}  // namespace gsel
