#include "gsel/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "gsel/ratios.hpp"

namespace gsel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<int> rank_desc(const Eigen::VectorXd& means) {
  std::vector<int> order(means.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (means[a] != means[b]) return means[a] > means[b];
    return a < b;
  });
  return order;
}

}  // namespace

const char* policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::AoaGs: return "aoa-gs";
    case PolicyKind::EqualAllocation: return "equal-allocation";
    case PolicyKind::External: return "external";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  const int k = env.k();
  if (k < 2) throw std::invalid_argument("config error: env must define k >= 2 alternatives");
  if (m < 1 || m >= k)
    throw std::invalid_argument("config error: m must satisfy 1 <= m < k (m=" +
                                std::to_string(m) + ", k=" + std::to_string(k) + ")");
  const int min_n0 = var_mode.kind == VarianceModeKind::PlugIn
                         ? 2
                         : (prior.mode == PriorMode::Uninformative ? 1 : 0);
  if (n0 < min_n0)
    throw std::invalid_argument("config error: n0 must be >= " + std::to_string(min_n0) +
                                " for this prior/variance mode (n0=" + std::to_string(n0) + ")");
  const long long warmup = static_cast<long long>(k) * n0;
  if (budget < warmup)
    throw std::invalid_argument("config error: T must satisfy k*n0 <= T (k=" +
                                std::to_string(k) + ", n0=" + std::to_string(n0) +
                                ", T=" + std::to_string(budget) + ")");
  if (macros < 1) throw std::invalid_argument("config error: macros must be >= 1");
  if (var_mode.kind == VarianceModeKind::Known && var_mode.known_variances.size() != k)
    throw std::invalid_argument("config error: known variance vector must have length k");
  long long prev = warmup;
  for (long long cp : checkpoints) {
    if (cp <= warmup || cp > budget)
      throw std::invalid_argument("config error: checkpoints must lie in (k*n0, T] (found " +
                                  std::to_string(cp) + ")");
    if (cp <= prev && prev != warmup)
      throw std::invalid_argument("config error: checkpoints must be strictly increasing");
    prev = cp;
  }
  if (policy == PolicyKind::External)
    throw std::invalid_argument("config error: external policy '" + external_name +
                                "' has no implementation in this artifact");
}

std::vector<long long> ExperimentConfig::effective_checkpoints() const {
  std::vector<long long> cps = checkpoints;
  if (cps.empty() || cps.back() != budget) cps.push_back(budget);
  return cps;
}

MacroResult run_macro(const ExperimentConfig& config, long long macro_index) {
  config.validate();
  try {
    Rng rng = Rng::substream(config.seed, static_cast<std::uint64_t>(macro_index));
    const EnvironmentSpec env = config.env.kind == EnvironmentSpec::Kind::SyntheticExperiment1
                                    ? draw_experiment1_instance(rng)
                                    : config.env;
    const int k = env.k();

    BeliefState state = init_beliefs(k, config.prior, config.var_mode);

    const auto cps = config.effective_checkpoints();
    MacroResult result;
    result.true_best_alt = true_best(env);
    result.selected.reserve(cps.size());
    result.correct.reserve(cps.size());

    size_t next_cp = 0;
    auto note_checkpoints = [&]() {
      while (next_cp < cps.size() && state.step == cps[next_cp]) {
        auto [top, rest] = top_split(state, config.m);
        const bool ok =
            std::find(top.begin(), top.end(), result.true_best_alt) != top.end();
        result.selected.push_back(std::move(top));
        result.correct.push_back(ok ? 1 : 0);
        ++next_cp;
      }
    };

    for (int round = 0; round < config.n0; ++round)
      for (int i = 0; i < k; ++i) {
        update(state, i, sample(env, i, rng));
        note_checkpoints();
      }
    if (config.freeze_plugin_after_init) state.plugin_frozen = true;

    PolicyWorkspace ws;
    while (state.step < config.budget) {
      int pick;
      switch (config.policy) {
        case PolicyKind::AoaGs: pick = aoa_gs_choose(state, config.m, ws); break;
        case PolicyKind::EqualAllocation: pick = ea_select(state).alternative; break;
        default: throw std::logic_error("unreachable policy kind");
      }
      update(state, pick, sample(env, pick, rng));
      note_checkpoints();
    }

    result.final_counts.resize(k);
    for (int i = 0; i < k; ++i) result.final_counts[i] = static_cast<int>(state.beliefs[i].count);
    result.survivor = state.ranking[0];
    for (int p = 1; p < config.m; ++p) {
      const int alt = state.ranking[p];
      if (result.final_counts[alt] > result.final_counts[result.survivor] ||
          (result.final_counts[alt] == result.final_counts[result.survivor] &&
           alt < result.survivor))
        result.survivor = alt;
    }
    return result;
  } catch (const std::exception& e) {
    throw std::runtime_error("macro " + std::to_string(macro_index) + ": " + e.what());
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  const long long macros = config.macros;
  const int k = config.env.k();
  const auto cps = config.effective_checkpoints();

  std::vector<MacroResult> results(macros);
  const int workers = static_cast<int>(
      std::min<long long>(threads < 1 ? 1 : threads, macros));
  std::atomic<long long> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    for (;;) {
      const long long idx = next.fetch_add(1);
      if (idx >= macros) return;
      try {
        results[idx] = run_macro(config, idx);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Deterministic reduction in macro order over integer accumulators.
  std::vector<long long> correct(cps.size(), 0);
  Eigen::Matrix<long long, Eigen::Dynamic, 1> count_sum =
      Eigen::Matrix<long long, Eigen::Dynamic, 1>::Zero(k);
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> survivor_count_sum =
      Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(k, k);
  Eigen::VectorXi survivor_hist = Eigen::VectorXi::Zero(k);
  for (const auto& r : results) {
    for (size_t c = 0; c < cps.size(); ++c) correct[c] += r.correct[c];
    for (int i = 0; i < k; ++i) count_sum[i] += r.final_counts[i];
    survivor_hist[r.survivor] += 1;
    for (int i = 0; i < k; ++i) survivor_count_sum(r.survivor, i) += r.final_counts[i];
  }

  ExperimentResult out;
  out.curve.checkpoints = cps;
  out.curve.macros = macros;
  out.curve.ipcs.resize(cps.size());
  out.curve.std_error.resize(cps.size());
  for (size_t c = 0; c < cps.size(); ++c) {
    const double p = static_cast<double>(correct[c]) / macros;
    out.curve.ipcs[c] = p;
    out.curve.std_error[c] = std::sqrt(p * (1.0 - p) / macros);
  }

  RatioReport& rr = out.ratio_report;
  const double total_budget = static_cast<double>(macros) * config.budget;
  rr.mean_ratios = count_sum.cast<double>() / total_budget;
  rr.survivor_histogram = survivor_hist;
  rr.modal_survivor = 0;
  for (int i = 1; i < k; ++i)
    if (survivor_hist[i] > survivor_hist[rr.modal_survivor]) rr.modal_survivor = i;
  const long long modal_macros = survivor_hist[rr.modal_survivor];
  rr.conditioned_mean_ratios =
      survivor_count_sum.row(rr.modal_survivor).transpose().cast<double>() /
      (static_cast<double>(modal_macros) * config.budget);

  rr.balance_residual = rr.closure_residual = kNaN;
  rr.theory_ratios = Eigen::VectorXd::Constant(k, kNaN);
  if (config.env.has_true_means()) {
    const auto order = rank_desc(config.env.means);
    int survivor_rank = -1;
    for (int p = 0; p < config.m; ++p)
      if (order[p] == rr.modal_survivor) survivor_rank = p + 1;
    if (survivor_rank > 0) {
      std::vector<int> B(order.begin() + config.m, order.end());
      const auto res = ratio_residuals(config.env.means, config.env.stds,
                                       rr.conditioned_mean_ratios, rr.modal_survivor, B);
      rr.balance_residual = res.balance;
      rr.closure_residual = res.closure;
      RatioProblem problem;
      problem.means = config.env.means;
      problem.stds = config.env.stds;
      problem.m = config.m;
      problem.survivor_rank = survivor_rank;
      const RatioSolution sol = solve_ratios(problem);
      if (sol.converged) rr.theory_ratios = sol.r;
    }
  }
  return out;
}

}  // namespace gsel
