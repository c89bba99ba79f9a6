#include "gsel/pcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gsel/mathfn.hpp"

namespace gsel {

namespace {

std::vector<int> rank_desc(const Eigen::VectorXd& means) {
  std::vector<int> order(means.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (means[a] != means[b]) return means[a] > means[b];
    return a < b;
  });
  return order;
}

void validate_snapshot(const PosteriorSnapshot& s) {
  const int k = static_cast<int>(s.means.size());
  if (k < 2 || s.variances.size() != k)
    throw std::invalid_argument("PosteriorSnapshot: means/variances must share length k >= 2");
  if ((s.variances.array() < 0.0).any())
    throw std::invalid_argument("PosteriorSnapshot: variances must be >= 0");
  if (s.m < 1 || s.m >= k)
    throw std::invalid_argument("PosteriorSnapshot: need 1 <= m < k");
}

double binomial_se(double p, long n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace

Eigen::MatrixXd cholesky_psd(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("cholesky_psd: matrix must be square");
  const double scale = std::max(a.diagonal().maxCoeff(), 1.0);
  const double eps = 1e-12 * scale;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    double d = a(c, c);
    for (int k = 0; k < c; ++k) d -= L(c, k) * L(c, k);
    if (d > eps) {
      L(c, c) = std::sqrt(d);
      for (int r = c + 1; r < n; ++r) {
        double v = a(r, c);
        for (int k = 0; k < c; ++k) v -= L(r, k) * L(c, k);
        L(r, c) = v / L(c, c);
      }
    } else if (d > -eps) {
      // deterministic coordinate: zero pivot, zero column
      L(c, c) = 0.0;
    } else {
      throw std::runtime_error("cholesky_psd: matrix is not positive semi-definite");
    }
  }
  return L;
}

PairDiffModel pair_diff_model(const PosteriorSnapshot& snapshot, int rank_i) {
  validate_snapshot(snapshot);
  const int k = static_cast<int>(snapshot.means.size());
  const int m = snapshot.m;
  if (rank_i < 1 || rank_i > m)
    throw std::invalid_argument("pair_diff_model: rank_i must lie in 1..m");
  const auto order = rank_desc(snapshot.means);
  const int kc = k - m;
  const int top = order[rank_i - 1];

  PairDiffModel model;
  model.mean_diffs.resize(kc);
  for (int jj = 0; jj < kc; ++jj)
    model.mean_diffs[jj] = snapshot.means[top] - snapshot.means[order[m + jj]];

  // Sigma_i = G' Lambda_i G with G the (kc+1) x kc differencing matrix
  // (first row all ones, then -I) and Lambda_i the diagonal of posterior
  // variances of (rank i, complement).
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(kc + 1, kc);
  g.row(0).setOnes();
  for (int jj = 0; jj < kc; ++jj) g(jj + 1, jj) = -1.0;
  Eigen::VectorXd lambda(kc + 1);
  lambda[0] = snapshot.variances[top];
  for (int jj = 0; jj < kc; ++jj) lambda[jj + 1] = snapshot.variances[order[m + jj]];
  model.sigma = g.transpose() * lambda.asDiagonal() * g;
  model.chol = cholesky_psd(model.sigma);
  return model;
}

McEstimate mc_region_probability(const PairDiffModel& model, long n_samples, Rng& rng) {
  if (n_samples < 1) throw std::invalid_argument("mc_region_probability: need n_samples >= 1");
  const int dim = static_cast<int>(model.mean_diffs.size());
  std::vector<double> z(dim);
  long hits = 0;
  for (long s = 0; s < n_samples; ++s) {
    for (int h = 0; h < dim; ++h) z[h] = rng.normal();
    bool inside = true;
    for (int row = 0; row < dim && inside; ++row) {
      double lz = 0.0;
      for (int h = 0; h <= row; ++h) lz += model.chol(row, h) * z[h];
      inside = lz > -model.mean_diffs[row];
    }
    if (inside) ++hits;
  }
  McEstimate e;
  e.estimate = static_cast<double>(hits) / n_samples;
  e.std_error = binomial_se(e.estimate, n_samples);
  return e;
}

double ball_probability(double d, int dim) {
  if (d < 0.0) throw std::domain_error("ball_probability: d must be >= 0");
  if (dim < 1) throw std::domain_error("ball_probability: dim must be >= 1");
  if (d == 0.0) return 0.0;
  return regularized_lower_gamma(0.5 * dim, 0.5 * d * d);
}

double approximation_gap(const PosteriorSnapshot& snapshot, int rank_i, double d_i,
                         long n_samples, Rng& rng) {
  const PairDiffModel model = pair_diff_model(snapshot, rank_i);
  const McEstimate region = mc_region_probability(model, n_samples, rng);
  const int dim = static_cast<int>(snapshot.means.size()) - snapshot.m;
  const double ball = ball_probability(std::max(d_i, 0.0), dim);
  return std::fabs(region.estimate - ball);
}

PcsEstimates estimate_pcs_both(const PosteriorSnapshot& snapshot, long n_samples, Rng& rng) {
  validate_snapshot(snapshot);
  if (n_samples < 1) throw std::invalid_argument("estimate_pcs: need n_samples >= 1");
  const int k = static_cast<int>(snapshot.means.size());
  const int m = snapshot.m;
  const auto order = rank_desc(snapshot.means);

  std::vector<double> sd(k), draw(k);
  for (int p = 0; p < k; ++p) sd[p] = std::sqrt(snapshot.variances[order[p]]);

  std::vector<long> row_hits(m, 0);
  long union_hits = 0;
  for (long s = 0; s < n_samples; ++s) {
    for (int p = 0; p < k; ++p)
      draw[p] = snapshot.means[order[p]] + sd[p] * rng.normal();
    double max_complement = -std::numeric_limits<double>::infinity();
    for (int p = m; p < k; ++p) max_complement = std::max(max_complement, draw[p]);
    bool any = false;
    for (int i = 0; i < m; ++i)
      if (draw[i] > max_complement) {
        ++row_hits[i];
        any = true;
      }
    if (any) ++union_hits;
  }

  PcsEstimates out;
  out.exact.estimate = static_cast<double>(union_hits) / n_samples;
  out.exact.std_error = binomial_se(out.exact.estimate, n_samples);
  const long best_row = *std::max_element(row_hits.begin(), row_hits.end());
  out.lower_bound.estimate = static_cast<double>(best_row) / n_samples;
  out.lower_bound.std_error = binomial_se(out.lower_bound.estimate, n_samples);
  return out;
}

McEstimate estimate_pcs_exact(const PosteriorSnapshot& snapshot, long n_samples, Rng& rng) {
  return estimate_pcs_both(snapshot, n_samples, rng).exact;
}

McEstimate estimate_pcs_lower_bound(const PosteriorSnapshot& snapshot, long n_samples, Rng& rng) {
  return estimate_pcs_both(snapshot, n_samples, rng).lower_bound;
}

}  // namespace gsel
