#include "gsel/belief.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gsel {

PriorSpec PriorSpec::informative(double mean, double variance) {
  if (!(variance > 0.0))
    throw std::invalid_argument("PriorSpec: informative prior variance must be > 0");
  PriorSpec p;
  p.mode = PriorMode::Informative;
  p.mean = mean;
  p.variance = variance;
  return p;
}

PriorSpec PriorSpec::informative_each(Eigen::VectorXd means, Eigen::VectorXd variances) {
  if (means.size() < 2 || means.size() != variances.size())
    throw std::invalid_argument("PriorSpec: per-alternative prior needs matching lengths");
  if ((variances.array() <= 0.0).any())
    throw std::invalid_argument("PriorSpec: informative prior variances must be > 0");
  PriorSpec p;
  p.mode = PriorMode::Informative;
  p.means = std::move(means);
  p.variances = std::move(variances);
  return p;
}

VarianceMode VarianceMode::plug_in(double floor) {
  VarianceMode v;
  v.kind = VarianceModeKind::PlugIn;
  v.plugin_floor = floor;
  return v;
}

VarianceMode VarianceMode::known(Eigen::VectorXd variances) {
  if ((variances.array() <= 0.0).any())
    throw std::invalid_argument("VarianceMode: known variances must be > 0");
  VarianceMode v;
  v.kind = VarianceModeKind::Known;
  v.known_variances = std::move(variances);
  return v;
}

namespace {

// Ranking comparator: posterior mean descending, ties by ascending index.
// Alternatives with undefined posterior means sort last (by index).
bool rank_before(const BeliefState& s, int a, int b) {
  const auto& ba = s.beliefs[a];
  const auto& bb = s.beliefs[b];
  if (ba.mean_defined != bb.mean_defined) return ba.mean_defined;
  if (!ba.mean_defined) return a < b;
  if (ba.posterior_mean != bb.posterior_mean) return ba.posterior_mean > bb.posterior_mean;
  return a < b;
}

void recompute_posterior(BeliefState& state, int i) {
  AlternativeBelief& b = state.beliefs[i];

  if (state.var_mode.kind == VarianceModeKind::PlugIn && !state.plugin_frozen) {
    if (b.count >= 2)
      b.sampling_var = std::max(b.sample_variance(), state.var_mode.plugin_floor);
  }
  const bool have_sampling_var =
      state.var_mode.kind == VarianceModeKind::Known || b.count >= 2 || state.plugin_frozen;

  if (state.prior.mode == PriorMode::Informative) {
    if (b.count == 0) {
      b.posterior_mean = state.prior.mean_of(i);
      b.posterior_var = state.prior.variance_of(i);
      b.mean_defined = b.var_defined = true;
      return;
    }
    if (!have_sampling_var) {
      // Plug-in variance not yet available: posterior not computable.
      b.mean_defined = b.var_defined = false;
      return;
    }
    const double prior_prec = 1.0 / state.prior.variance_of(i);
    const double data_prec = b.count / b.sampling_var;
    b.posterior_var = 1.0 / (prior_prec + data_prec);
    b.posterior_mean =
        b.posterior_var * (state.prior.mean_of(i) * prior_prec + b.sample_mean() * data_prec);
    b.mean_defined = b.var_defined = true;
  } else {
    if (b.count == 0) {
      b.mean_defined = b.var_defined = false;
      return;
    }
    b.posterior_mean = b.sample_mean();
    b.mean_defined = true;
    if (have_sampling_var) {
      b.posterior_var = b.sampling_var / b.count;
      b.var_defined = true;
    } else {
      b.var_defined = false;
    }
  }
}

// Move alternative i to its sorted position; the other k-1 stay ordered.
void rerank(BeliefState& state, int i) {
  auto& r = state.ranking;
  auto pos = std::find(r.begin(), r.end(), i);
  r.erase(pos);
  auto it = r.begin();
  while (it != r.end() && rank_before(state, *it, i)) ++it;
  r.insert(it, i);
}

}  // namespace

BeliefState init_beliefs(int k, const PriorSpec& prior, const VarianceMode& var_mode) {
  if (k < 2) throw std::invalid_argument("init_beliefs: need at least two alternatives");
  if (var_mode.kind == VarianceModeKind::Known &&
      var_mode.known_variances.size() != k)
    throw std::invalid_argument("init_beliefs: known variance vector must have length k");
  if (prior.per_alternative() && prior.means.size() != k)
    throw std::invalid_argument("init_beliefs: per-alternative prior must have length k");

  BeliefState state;
  state.prior = prior;
  state.var_mode = var_mode;
  state.beliefs.resize(k);
  state.ranking.resize(k);
  for (int i = 0; i < k; ++i) {
    state.ranking[i] = i;
    if (var_mode.kind == VarianceModeKind::Known)
      state.beliefs[i].sampling_var = var_mode.known_variances[i];
    recompute_posterior(state, i);
  }
  std::sort(state.ranking.begin(), state.ranking.end(),
            [&](int a, int b) { return rank_before(state, a, b); });
  return state;
}

void update(BeliefState& state, int i, double x) {
  if (i < 0 || i >= state.k())
    throw std::out_of_range("update: alternative index out of range");
  if (!std::isfinite(x)) throw std::invalid_argument("update: observation must be finite");

  AlternativeBelief& b = state.beliefs[i];
  b.count += 1;
  b.sum += static_cast<long double>(x);
  b.sum_sq += static_cast<long double>(x) * x;
  state.step += 1;
  recompute_posterior(state, i);
  rerank(state, i);
}

double posterior_var_after_one_more(const BeliefState& state, int i) {
  const AlternativeBelief& b = state.beliefs[i];
  if (!b.var_defined)
    throw std::logic_error("posterior_var_after_one_more: posterior variance undefined");
  if (state.prior.mode == PriorMode::Informative)
    return 1.0 / (1.0 / state.prior.variance_of(i) + (b.count + 1) / b.sampling_var);
  return b.sampling_var / (b.count + 1);
}

std::pair<std::vector<int>, std::vector<int>> top_split(const BeliefState& state, int m) {
  const int k = state.k();
  if (m < 1 || m >= k)
    throw std::invalid_argument("top_split: m must satisfy 1 <= m < k (m=" +
                                std::to_string(m) + ", k=" + std::to_string(k) + ")");
  for (int i = 0; i < k; ++i)
    if (!state.beliefs[i].mean_defined)
      throw std::logic_error("top_split: posterior mean undefined for alternative " +
                             std::to_string(i + 1));
  std::vector<int> top(state.ranking.begin(), state.ranking.begin() + m);
  std::vector<int> rest(state.ranking.begin() + m, state.ranking.end());
  return {std::move(top), std::move(rest)};
}

}  // namespace gsel
