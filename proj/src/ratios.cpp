#include "gsel/ratios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gsel {

namespace {

constexpr double kTiny = 1e-300;

double g_limit(double mu_i, double sigma_i, double r_i,
               double mu_j, double sigma_j, double r_j) {
  // Zero ratios handled in the limit: G -> 0.
  if (r_i <= 0.0 || r_j <= 0.0) return 0.0;
  const double gap = mu_i - mu_j;
  return gap * gap / (sigma_i * sigma_i / r_i + sigma_j * sigma_j / r_j);
}

std::vector<int> rank_desc(const Eigen::VectorXd& means) {
  std::vector<int> order(means.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (means[a] != means[b]) return means[a] > means[b];
    return a < b;
  });
  return order;
}

void validate_problem(const RatioProblem& p) {
  const int k = static_cast<int>(p.means.size());
  if (k < 2 || p.stds.size() != k)
    throw std::invalid_argument("solve_ratios: means/stds must share length k >= 2");
  if ((p.stds.array() <= 0.0).any())
    throw std::invalid_argument("solve_ratios: stds must be > 0");
  if (p.m < 1 || p.m >= k) throw std::invalid_argument("solve_ratios: need 1 <= m < k");
  if (p.survivor_rank < 1 || p.survivor_rank > p.m)
    throw std::invalid_argument("solve_ratios: survivor rank must lie in the top-m");
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (std::fabs(p.means[a] - p.means[b]) < p.min_gap)
        throw std::invalid_argument("solve_ratios: means closer than the minimum gap");
}

}  // namespace

double g_value(double mu_i, double sigma_i, double r_i,
               double mu_j, double sigma_j, double r_j) {
  if (!(r_i > 0.0) || !(r_j > 0.0))
    throw std::domain_error("g_value: ratios must be > 0");
  const double gap = mu_i - mu_j;
  return gap * gap / (sigma_i * sigma_i / r_i + sigma_j * sigma_j / r_j);
}

double g_partial_ri(double mu_i, double sigma_i, double r_i,
                    double mu_j, double sigma_j, double r_j) {
  if (!(r_i > 0.0) || !(r_j > 0.0))
    throw std::domain_error("g_partial_ri: ratios must be > 0");
  const double gap = mu_i - mu_j;
  const double denom = sigma_i * sigma_i / r_i + sigma_j * sigma_j / r_j;
  const double s_over_r = sigma_i / r_i;
  return s_over_r * s_over_r * gap * gap / (denom * denom);
}

double g_partial_rj(double mu_i, double sigma_i, double r_i,
                    double mu_j, double sigma_j, double r_j) {
  return g_partial_ri(mu_j, sigma_j, r_j, mu_i, sigma_i, r_i);
}

RatioSolution solve_ratios(const RatioProblem& problem, double tol, int max_iter,
                           const Eigen::VectorXd& b_init) {
  validate_problem(problem);
  const int k = static_cast<int>(problem.means.size());
  const auto order = rank_desc(problem.means);
  const int survivor = order[problem.survivor_rank - 1];
  std::vector<int> B(order.begin() + problem.m, order.end());
  const int nb = static_cast<int>(B.size());

  const auto& mu = problem.means;
  const auto& sd = problem.stds;

  Eigen::VectorXd rb;
  if (b_init.size() == nb) {
    if ((b_init.array() <= 0.0).any())
      throw std::invalid_argument("solve_ratios: initial guess must be positive");
    rb = b_init;
  } else {
    rb = Eigen::VectorXd::Constant(nb, 1.0);
  }

  auto close_survivor = [&](const Eigen::VectorXd& b) {
    double acc = 0.0;
    for (int q = 0; q < nb; ++q) {
      const double z = b[q] / sd[B[q]];
      acc += z * z;
    }
    return sd[survivor] * std::sqrt(acc);
  };

  const double damping = 0.5;
  double rs = close_survivor(rb);
  double total = rs + rb.sum();
  rs /= total;
  rb /= total;

  Eigen::VectorXd g(nb);
  double balance = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    for (int q = 0; q < nb; ++q)
      g[q] = g_value(mu[survivor], sd[survivor], rs, mu[B[q]], sd[B[q]], rb[q]);
    const double gmax = g.maxCoeff();
    const double gmin = g.minCoeff();
    balance = (gmax - gmin) / std::max(gmax, kTiny);
    if (balance < tol) {
      converged = true;
      break;
    }
    const double gbar = g.mean();
    for (int q = 0; q < nb; ++q) rb[q] *= std::pow(gbar / std::max(g[q], kTiny), damping);
    rs = close_survivor(rb);
    total = rs + rb.sum();
    rs /= total;
    rb /= total;
  }

  RatioSolution sol;
  sol.r = Eigen::VectorXd::Zero(k);
  sol.r[survivor] = rs;
  for (int q = 0; q < nb; ++q) sol.r[B[q]] = rb[q];
  sol.balance_residual = balance;
  sol.closure_residual = std::fabs(rs - close_survivor(rb)) / std::max(rs, kTiny);
  sol.residual = std::max(sol.balance_residual, sol.closure_residual);
  sol.converged = converged;
  sol.iterations = iter;
  return sol;
}

RatioResiduals ratio_residuals(const Eigen::VectorXd& means, const Eigen::VectorXd& stds,
                               const Eigen::VectorXd& r, int survivor_alt,
                               const std::vector<int>& B_alts) {
  if (B_alts.empty()) throw std::invalid_argument("ratio_residuals: empty complement set");
  double gmax = -std::numeric_limits<double>::infinity();
  double gmin = std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (int j : B_alts) {
    const double gj =
        g_limit(means[survivor_alt], stds[survivor_alt], r[survivor_alt], means[j], stds[j], r[j]);
    gmax = std::max(gmax, gj);
    gmin = std::min(gmin, gj);
    const double z = r[j] / stds[j];
    acc += z * z;
  }
  RatioResiduals res;
  res.balance = (gmax - gmin) / std::max(gmax, kTiny);
  const double closed = stds[survivor_alt] * std::sqrt(acc);
  res.closure = std::fabs(r[survivor_alt] - closed) / std::max(r[survivor_alt], kTiny);
  return res;
}

StationarityReport check_stationarity_conditions(const Eigen::VectorXd& r,
                                         const std::vector<int>& gamma,
                                         const std::vector<int>& B,
                                         const Eigen::VectorXd& means,
                                         const Eigen::VectorXd& stds, double tol) {
  const int k = static_cast<int>(means.size());
  if (gamma.empty() || B.empty())
    throw std::invalid_argument("check_stationarity_conditions: empty index set");
  std::set<int> seen;
  double mass = 0.0;
  for (int i : gamma) {
    if (i < 0 || i >= k || !seen.insert(i).second)
      throw std::invalid_argument("check_stationarity_conditions: malformed Gamma");
    if (!(r[i] > 0.0))
      throw std::invalid_argument("check_stationarity_conditions: ratios must be > 0 on Gamma");
    mass += r[i];
  }
  for (int j : B) {
    if (j < 0 || j >= k || !seen.insert(j).second)
      throw std::invalid_argument("check_stationarity_conditions: malformed B");
    if (!(r[j] > 0.0))
      throw std::invalid_argument("check_stationarity_conditions: ratios must be > 0 on B");
    mass += r[j];
  }
  if (std::fabs(mass - 1.0) > 1e-6)
    throw std::invalid_argument("check_stationarity_conditions: ratios must sum to 1 on Gamma+B");

  StationarityReport rep;
  std::vector<double> min_g(gamma.size());
  std::vector<double> min_deriv(gamma.size());
  std::set<int> covered;
  for (size_t gi = 0; gi < gamma.size(); ++gi) {
    const int i = gamma[gi];
    double best = std::numeric_limits<double>::infinity();
    for (int j : B)
      best = std::min(best, g_value(means[i], stds[i], r[i], means[j], stds[j], r[j]));
    min_g[gi] = best;
    std::vector<int> argmin;
    double deriv = std::numeric_limits<double>::infinity();
    for (int j : B) {
      const double gij = g_value(means[i], stds[i], r[i], means[j], stds[j], r[j]);
      const bool active = best > 0.0 ? gij <= best * (1.0 + tol) : gij <= best + tol;
      if (active) {
        argmin.push_back(j);
        covered.insert(j);
        deriv = std::min(deriv, g_partial_ri(means[i], stds[i], r[i], means[j], stds[j], r[j]));
      }
    }
    min_deriv[gi] = deriv;
    rep.argmin_sets.push_back(std::move(argmin));
  }

  if (gamma.size() == 1) {
    rep.min_balance_residual = 0.0;  // singleton: holds by definition
    rep.marginal_residual = 0.0;
  } else {
    const auto [g_lo, g_hi] = std::minmax_element(min_g.begin(), min_g.end());
    rep.min_balance_residual = (*g_hi - *g_lo) / std::max(*g_hi, kTiny);
    const auto [d_lo, d_hi] = std::minmax_element(min_deriv.begin(), min_deriv.end());
    rep.marginal_residual = (*d_hi - *d_lo) / std::max(*d_hi, kTiny);
  }

  rep.cover_satisfied = true;
  for (int j : B)
    if (!covered.count(j)) {
      rep.cover_satisfied = false;
      rep.missing_from_union.push_back(j);
    }
  return rep;
}

Eigen::VectorXd empirical_ratios(const Eigen::VectorXi& counts) {
  const long long total = counts.cast<long long>().sum();
  if (counts.size() == 0 || total <= 0)
    throw std::invalid_argument("empirical_ratios: counts must have a positive total");
  if ((counts.array() < 0).any())
    throw std::invalid_argument("empirical_ratios: counts must be non-negative");
  return counts.cast<double>() / static_cast<double>(total);
}

}  // namespace gsel
