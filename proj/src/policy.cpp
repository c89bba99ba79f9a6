#include "gsel/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gsel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

void require_ready(const BeliefState& state, int m) {
  const int k = state.k();
  if (m < 1 || m >= k) throw std::invalid_argument("policy: m must satisfy 1 <= m < k");
  for (int i = 0; i < k; ++i)
    if (!state.beliefs[i].mean_defined || !state.beliefs[i].var_defined)
      throw std::logic_error("policy: posterior not fully initialized");
}

// Gather posterior means/variances and one-step-advanced variances in
// ranking order.
void load_ranked(const BeliefState& state, PolicyWorkspace& ws) {
  const int k = state.k();
  ws.mu.resize(k);
  ws.var.resize(k);
  ws.var_next.resize(k);
  for (int p = 0; p < k; ++p) {
    const int alt = state.ranking[p];
    ws.mu[p] = state.beliefs[alt].posterior_mean;
    ws.var[p] = state.beliefs[alt].posterior_var;
    ws.var_next[p] = posterior_var_after_one_more(state, alt);
  }
}

// Base table of signed-square statistics for the current split plus row
// minima (with runner-up minima for O(1) exclusion of one column).
void build_base(const std::vector<double>& mu, const std::vector<double>& var, int m,
                PolicyWorkspace& ws) {
  const int k = static_cast<int>(mu.size());
  const int kc = k - m;
  ws.base.resize(static_cast<size_t>(m) * kc);
  ws.row_min.assign(m, kPosInf);
  ws.row_min2.assign(m, kPosInf);
  ws.row_argmin.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    double* row = ws.base.data() + static_cast<size_t>(i) * kc;
    double best = kPosInf, second = kPosInf;
    int arg = -1;
    for (int jj = 0; jj < kc; ++jj) {
      const double v = pair_stat(mu[i], mu[m + jj], var[i], var[m + jj]);
      row[jj] = v;
      if (v < best) {
        second = best;
        best = v;
        arg = jj;
      } else if (v < second) {
        second = v;
      }
    }
    ws.row_min[i] = best;
    ws.row_min2[i] = second;
    ws.row_argmin[i] = arg;
  }
}

// Lookahead scores by rank position. Advancing a top-m rank replaces its
// whole row; advancing a complement rank replaces one column entry per row.
void lookahead_ranked(const std::vector<double>& mu, const std::vector<double>& var,
                      const std::vector<double>& var_next, int m, PolicyWorkspace& ws) {
  const int k = static_cast<int>(mu.size());
  const int kc = k - m;
  build_base(mu, var, m, ws);

  ws.prefix_max.assign(m + 1, kNegInf);
  ws.suffix_max.assign(m + 1, kNegInf);
  for (int i = 0; i < m; ++i) ws.prefix_max[i + 1] = std::max(ws.prefix_max[i], ws.row_min[i]);
  for (int i = m - 1; i >= 0; --i) ws.suffix_max[i] = std::max(ws.suffix_max[i + 1], ws.row_min[i]);

  ws.scores_rank.resize(k);
  for (int p = 0; p < m; ++p) {
    double adv = kPosInf;
    for (int jj = 0; jj < kc; ++jj)
      adv = std::min(adv, pair_stat(mu[p], mu[m + jj], var_next[p], var[m + jj]));
    ws.scores_rank[p] = std::max(adv, std::max(ws.prefix_max[p], ws.suffix_max[p + 1]));
  }
  for (int p = m; p < k; ++p) {
    const int jj = p - m;
    double best = kNegInf;
    for (int i = 0; i < m; ++i) {
      const double t_adv = pair_stat(mu[i], mu[p], var[i], var_next[p]);
      const double rest = (ws.row_argmin[i] == jj) ? ws.row_min2[i] : ws.row_min[i];
      best = std::max(best, std::min(t_adv, rest));
    }
    ws.scores_rank[p] = best;
  }
}

}  // namespace

double d_pair(const BeliefState& state, int i, int j) {
  const int k = state.k();
  if (i < 0 || i >= k || j < 0 || j >= k || i == j)
    throw std::invalid_argument("d_pair: invalid index pair");
  const auto& bi = state.beliefs[i];
  const auto& bj = state.beliefs[j];
  if (!bi.mean_defined || !bi.var_defined || !bj.mean_defined || !bj.var_defined)
    throw std::logic_error("d_pair: posterior undefined");
  const double num = bi.posterior_mean - bj.posterior_mean;
  const double vsum = bi.posterior_var + bj.posterior_var;
  if (!(vsum > 0.0)) {
    if (num == 0.0) return 0.0;
    return num > 0.0 ? kDCap : -kDCap;
  }
  const double d = num / std::sqrt(vsum);
  return std::clamp(d, -kDCap, kDCap);
}

double vfa(const BeliefState& state, int m) {
  require_ready(state, m);
  PolicyWorkspace ws;
  load_ranked(state, ws);
  build_base(ws.mu, ws.var, m, ws);
  return *std::max_element(ws.row_min.begin(), ws.row_min.end());
}

std::vector<double> lookahead_scores(const BeliefState& state, int m) {
  require_ready(state, m);
  PolicyWorkspace ws;
  load_ranked(state, ws);
  lookahead_ranked(ws.mu, ws.var, ws.var_next, m, ws);
  std::vector<double> by_alt(state.k());
  for (int p = 0; p < state.k(); ++p) by_alt[state.ranking[p]] = ws.scores_rank[p];
  return by_alt;
}

int aoa_gs_choose(const BeliefState& state, int m, PolicyWorkspace& ws) {
  require_ready(state, m);
  load_ranked(state, ws);
  lookahead_ranked(ws.mu, ws.var, ws.var_next, m, ws);
  const int k = state.k();
  ws.scores_alt.resize(k);
  for (int p = 0; p < k; ++p) ws.scores_alt[state.ranking[p]] = ws.scores_rank[p];
  int best = 0;
  for (int i = 1; i < k; ++i)
    if (ws.scores_alt[i] > ws.scores_alt[best]) best = i;
  return best;
}

AllocationDecision aoa_gs_select(const BeliefState& state, int m) {
  PolicyWorkspace ws;
  const int alt = aoa_gs_choose(state, m, ws);
  AllocationDecision d;
  d.alternative = alt;
  d.score = ws.scores_alt[alt];
  d.scores_all = ws.scores_alt;
  return d;
}

AllocationDecision ea_select(const BeliefState& state) {
  const int k = state.k();
  if (k < 2) throw std::invalid_argument("ea_select: uninitialized state");
  int best = 0;
  for (int i = 1; i < k; ++i)
    if (state.beliefs[i].count < state.beliefs[best].count) best = i;
  AllocationDecision d;
  d.alternative = best;
  d.score = static_cast<double>(state.beliefs[best].count);
  return d;
}

double boundary_d_statistic(const Eigen::VectorXd& means, const Eigen::VectorXd& variances,
                            int m, int rank_i) {
  const int k = static_cast<int>(means.size());
  if (variances.size() != k) throw std::invalid_argument("boundary_d_statistic: size mismatch");
  if (m < 1 || m >= k || rank_i < 1 || rank_i > m)
    throw std::invalid_argument("boundary_d_statistic: need 1 <= rank_i <= m < k");
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (means[a] != means[b]) return means[a] > means[b];
    return a < b;
  });
  const int top = order[rank_i - 1];
  double dmin = kPosInf;
  for (int p = m; p < k; ++p) {
    const int j = order[p];
    const double num = means[top] - means[j];
    const double vsum = variances[top] + variances[j];
    double d;
    if (!(vsum > 0.0))
      d = (num == 0.0) ? 0.0 : (num > 0.0 ? kDCap : -kDCap);
    else
      d = std::clamp(num / std::sqrt(vsum), -kDCap, kDCap);
    dmin = std::min(dmin, d);
  }
  return dmin;
}

}  // namespace gsel
