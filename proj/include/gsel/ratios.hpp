#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gsel {

// Asymptotic sampling-ratio instance: true parameters, subset size, and the
// surviving top-m member (rank within the true top-m, 1-based). Theory does
// not pin the survivor down, so it is an input.
struct RatioProblem {
  Eigen::VectorXd means;
  Eigen::VectorXd stds;
  int m = 1;
  int survivor_rank = 1;
  double min_gap = 1e-12;  // reject near-tied means
};

struct RatioSolution {
  Eigen::VectorXd r;        // per alternative; zero on non-survivor top-m members
  double balance_residual = 0;  // relative spread of the balance values G
  double closure_residual = 0; // survivor closure residual
  double residual = 0;
  bool converged = false;
  int iterations = 0;
};

// G_{ij}(r_i, r_j) = (mu_i - mu_j)^2 / (sigma_i^2/r_i + sigma_j^2/r_j).
double g_value(double mu_i, double sigma_i, double r_i,
               double mu_j, double sigma_j, double r_j);

// Analytic partials of G in its first and second ratio arguments.
double g_partial_ri(double mu_i, double sigma_i, double r_i,
                    double mu_j, double sigma_j, double r_j);
double g_partial_rj(double mu_i, double sigma_i, double r_i,
                    double mu_j, double sigma_j, double r_j);

// Damped multiplicative fixed-point iteration on the complement ratios,
// with the survivor closed in each sweep and the vector renormalized.
// An optional initial guess for the complement block supports restart probes.
RatioSolution solve_ratios(const RatioProblem& problem, double tol = 1e-9,
                           int max_iter = 100000,
                           const Eigen::VectorXd& b_init = Eigen::VectorXd());

// Balance and closure residuals of an arbitrary ratio vector (e.g. empirical
// ratios from a harness run) for survivor i' and complement set B.
struct RatioResiduals {
  double balance = 0;
  double closure = 0;
};
RatioResiduals ratio_residuals(const Eigen::VectorXd& means, const Eigen::VectorXd& stds,
                               const Eigen::VectorXd& r, int survivor_alt,
                               const std::vector<int>& B_alts);

struct StationarityReport {
  double min_balance_residual = 0;  // spread of min-G across Gamma
  bool cover_satisfied = false;
  double marginal_residual = 0;  // spread of the min-G partial derivatives across Gamma
  std::vector<std::vector<int>> argmin_sets;  // J_i per Gamma member
  std::vector<int> missing_from_union;
};

StationarityReport check_stationarity_conditions(const Eigen::VectorXd& r,
                                         const std::vector<int>& gamma,
                                         const std::vector<int>& B,
                                         const Eigen::VectorXd& means,
                                         const Eigen::VectorXd& stds, double tol);

// Normalized allocation counts.
Eigen::VectorXd empirical_ratios(const Eigen::VectorXi& counts);

}  // namespace gsel
