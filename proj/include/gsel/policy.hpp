#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gsel/belief.hpp"

namespace gsel {

enum class PolicyKind { AoaGs, EqualAllocation, External };

struct AllocationDecision {
  int alternative = -1;             // 0-based
  double score = 0.0;               // winning lookahead value
  std::vector<double> scores_all;   // per alternative; empty on the fast path
};

// Resolved pairs saturate instead of overflowing to inf/NaN.
constexpr double kDCap = 1e18;

// Signed squared pairwise statistic sign(d) * d^2 for a (top, complement)
// pair, d = (mu_hi - mu_lo) / sqrt(var_hi + var_lo). A zero denominator
// saturates: the pair is resolved (or exactly tied at 0).
inline double pair_stat(double mu_hi, double mu_lo, double var_hi, double var_lo) {
  const double num = mu_hi - mu_lo;
  const double vsum = var_hi + var_lo;
  if (!(vsum > 0.0)) {
    if (num == 0.0) return 0.0;
    return num > 0.0 ? kDCap * kDCap : -kDCap * kDCap;
  }
  double v = num * num / vsum;
  if (v > kDCap * kDCap) v = kDCap * kDCap;
  return num >= 0.0 ? v : -v;
}

// The pairwise statistic d_{i,j} itself, on raw alternative indices.
double d_pair(const BeliefState& state, int i, int j);

// Reusable buffers for the per-step allocation decision.
struct PolicyWorkspace {
  std::vector<double> mu, var, var_next;       // by rank position
  std::vector<double> base;                    // m x (k-m) signed-square table
  std::vector<double> row_min, row_min2;
  std::vector<int> row_argmin;
  std::vector<double> prefix_max, suffix_max;
  std::vector<double> scores_rank, scores_alt;
};

// Value function approximation on the current ranking:
// max over top-m ranks of the squared min-pair statistic.
double vfa(const BeliefState& state, int m);

// Certainty-equivalent one-step lookahead: for each candidate alternative,
// the VFA of the state with only that candidate's posterior variance advanced
// one replication and all posterior means (hence the ranking) frozen.
std::vector<double> lookahead_scores(const BeliefState& state, int m);

// Sequential rule: sample the candidate with the largest lookahead value,
// ties broken by lowest alternative index.
AllocationDecision aoa_gs_select(const BeliefState& state, int m);
int aoa_gs_choose(const BeliefState& state, int m, PolicyWorkspace& ws);

// Equal allocation: least-sampled alternative, ties by lowest index.
AllocationDecision ea_select(const BeliefState& state);

// Min-pair statistic d_i for the alternative ranked rank_i (1-based, in
// 1..m) of a raw posterior snapshot; ranking computed internally.
double boundary_d_statistic(const Eigen::VectorXd& means, const Eigen::VectorXd& variances,
                            int m, int rank_i);

}  // namespace gsel
