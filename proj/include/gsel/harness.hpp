#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gsel/belief.hpp"
#include "gsel/envs.hpp"
#include "gsel/policy.hpp"

namespace gsel {

struct ExperimentConfig {
  EnvironmentSpec env;
  int m = 1;
  long long budget = 0;  // T
  int n0 = 10;
  PolicyKind policy = PolicyKind::AoaGs;
  std::string external_name;  // reserved slot, no behavior
  long long macros = 20000;
  std::uint64_t seed = 0;
  std::vector<long long> checkpoints;  // optional; T is always evaluated
  PriorSpec prior;
  VarianceMode var_mode;
  bool freeze_plugin_after_init = false;

  void validate() const;
  // Sorted user checkpoints with the terminal budget appended.
  std::vector<long long> effective_checkpoints() const;
};

struct MacroResult {
  std::vector<std::vector<int>> selected;  // top-m set per checkpoint
  std::vector<std::uint8_t> correct;
  Eigen::VectorXi final_counts;
  int survivor = -1;       // top-m member with the largest final count
  int true_best_alt = -1;  // realized instance's best
};

struct IpcsCurve {
  std::vector<long long> checkpoints;
  Eigen::VectorXd ipcs;
  Eigen::VectorXd std_error;
  long long macros = 0;
};

struct RatioReport {
  Eigen::VectorXd mean_ratios;  // averaged over all macros
  Eigen::VectorXi survivor_histogram;
  int modal_survivor = -1;
  Eigen::VectorXd conditioned_mean_ratios;  // macros realizing the modal survivor
  double balance_residual;   // NaN when true parameters are unavailable
  double closure_residual;
  Eigen::VectorXd theory_ratios;  // NaN-filled when unavailable
};

struct ExperimentResult {
  IpcsCurve curve;
  RatioReport ratio_report;
};

// One full sequential procedure: n0 round-robin replications per
// alternative, then policy-driven allocation to the budget, with the
// estimated top-m set recorded at each checkpoint. Deterministic in
// (config.seed, macro_index).
MacroResult run_macro(const ExperimentConfig& config, long long macro_index);

// Independent macro replications with a deterministic reduction; the
// result is identical for any worker count.
ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 1);

const char* policy_name(PolicyKind kind);

}  // namespace gsel
