#pragma once

#include <Eigen/Dense>

#include "gsel/rng.hpp"

namespace gsel {

struct PosteriorSnapshot {
  Eigen::VectorXd means;
  Eigen::VectorXd variances;
  int m = 1;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Joint model of the mean differences between the rank-i member of a
// snapshot and every complement member: mean vector, covariance, and its
// lower Cholesky factor. Zero posterior variances are admitted; the factor
// treats the corresponding coordinates as deterministic.
struct PairDiffModel {
  Eigen::VectorXd mean_diffs;  // mu_<i> - mu_<j>, j over the complement
  Eigen::MatrixXd sigma;
  Eigen::MatrixXd chol;        // lower triangular, chol * chol^T = sigma
};

PairDiffModel pair_diff_model(const PosteriorSnapshot& snapshot, int rank_i);

// Lower Cholesky of a symmetric PSD matrix; zero pivots produce zero
// columns instead of failing. Throws if the matrix is indefinite.
Eigen::MatrixXd cholesky_psd(const Eigen::MatrixXd& a);

// Fraction of standard normal draws z with (L z)_row > -mean_diffs[row]
// for every row, i.e. the probability that rank i beats all complement
// members, with binomial standard error.
McEstimate mc_region_probability(const PairDiffModel& model, long n_samples, Rng& rng);

// Probability that a dim-dimensional standard normal lands in the centered
// ball of radius d.
double ball_probability(double d, int dim);

// |MC region probability - ball probability| for the rank-i comparison,
// with d_i supplied by the caller (the min-pair statistic).
double approximation_gap(const PosteriorSnapshot& snapshot, int rank_i, double d_i,
                         long n_samples, Rng& rng);

// Posterior PCS estimators over independent posterior draws. The lower
// bound takes the best single top-m rank; the exact version takes the
// union over top-m ranks. Both are computed from common draws so the
// union estimate dominates the bound pathwise.
struct PcsEstimates {
  McEstimate exact;
  McEstimate lower_bound;
};
PcsEstimates estimate_pcs_both(const PosteriorSnapshot& snapshot, long n_samples, Rng& rng);
McEstimate estimate_pcs_exact(const PosteriorSnapshot& snapshot, long n_samples, Rng& rng);
McEstimate estimate_pcs_lower_bound(const PosteriorSnapshot& snapshot, long n_samples, Rng& rng);

}  // namespace gsel
