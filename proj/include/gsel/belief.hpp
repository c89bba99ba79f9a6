#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace gsel {

enum class PriorMode { Uninformative, Informative };

// Conjugate normal prior; a scalar prior broadcasts over alternatives,
// and per-alternative hyper-parameters are supported for environments
// whose generating measure differs by alternative.
struct PriorSpec {
  PriorMode mode = PriorMode::Uninformative;
  double mean = 0.0;
  double variance = 1.0;
  Eigen::VectorXd means;      // optional, length k
  Eigen::VectorXd variances;  // optional, length k

  static PriorSpec uninformative() { return {}; }
  static PriorSpec informative(double mean, double variance);
  static PriorSpec informative_each(Eigen::VectorXd means, Eigen::VectorXd variances);

  bool per_alternative() const { return means.size() > 0; }
  double mean_of(int i) const { return per_alternative() ? means[i] : mean; }
  double variance_of(int i) const { return per_alternative() ? variances[i] : variance; }
};

enum class VarianceModeKind { Known, PlugIn };

struct VarianceMode {
  VarianceModeKind kind = VarianceModeKind::PlugIn;
  Eigen::VectorXd known_variances;  // length k when kind == Known
  double plugin_floor = 1e-12;      // clamp for a degenerate sample variance

  static VarianceMode plug_in(double floor = 1e-12);
  static VarianceMode known(Eigen::VectorXd variances);
};

// Per-alternative posterior hyper-parameters and raw sample moments.
// Moments are held in extended precision; cancellation in the plug-in
// variance is acceptable at desk scale (counts up to ~1e6).
struct AlternativeBelief {
  long long count = 0;
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  double posterior_mean = 0.0;
  double posterior_var = 0.0;
  double sampling_var = 0.0;
  bool mean_defined = false;
  bool var_defined = false;

  double sample_mean() const { return static_cast<double>(sum / count); }
  // Unbiased sample variance from raw moments; requires count >= 2.
  double sample_variance() const {
    const long double num = sum_sq - sum * sum / count;
    return static_cast<double>(num / (count - 1));
  }
};

// Full sampling state: all beliefs, step counter, posterior-mean ranking.
// Value type; one macro replication owns one instance.
struct BeliefState {
  std::vector<AlternativeBelief> beliefs;
  long long step = 0;
  std::vector<int> ranking;  // alternatives sorted by posterior mean desc, ties by ascending index
  PriorSpec prior;
  VarianceMode var_mode;
  bool plugin_frozen = false;  // stop refreshing the plug-in variance (sensitivity option)

  int k() const { return static_cast<int>(beliefs.size()); }
};

BeliefState init_beliefs(int k, const PriorSpec& prior, const VarianceMode& var_mode);

// Incorporate one replication of alternative i (0-based) and re-rank.
void update(BeliefState& state, int i, double x);

// Posterior variance of alternative i after one further replication,
// holding the sampling variance at its current value.
double posterior_var_after_one_more(const BeliefState& state, int i);

// Estimated top-m set and its complement, both in ranking order.
std::pair<std::vector<int>, std::vector<int>> top_split(const BeliefState& state, int m);

}  // namespace gsel
