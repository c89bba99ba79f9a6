#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "gsel/config.hpp"
#include "gsel/envs.hpp"
#include "gsel/harness.hpp"
#include "gsel/io.hpp"
#include "gsel/pcs.hpp"
#include "gsel/policy.hpp"
#include "gsel/ratios.hpp"

namespace {

constexpr const char* kVersion = "gsel 1.0.0";

int default_threads() {
  if (const char* env = std::getenv("GSEL_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

Eigen::VectorXd parse_list(const std::string& csv, const std::string& flag) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      vals.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": bad number '" + cell + "'");
    }
  }
  if (vals.empty()) throw std::invalid_argument(flag + ": empty list");
  return Eigen::Map<Eigen::VectorXd>(vals.data(), vals.size());
}

// Writer that targets a file (append, header only when new) or stdout.
struct CsvTarget {
  std::ofstream file;
  bool to_stdout = true;
  bool fresh = true;

  explicit CsvTarget(const std::string& path) {
    if (path.empty()) return;
    to_stdout = false;
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    fresh = ec || size == 0;
    file.open(path, std::ios::app);
    if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
  }
  std::ostream& os() { return to_stdout ? std::cout : file; }
};

struct RunArgs {
  std::string config_path, out, ratio_out;
  int threads = default_threads();
  bool seed_set = false, macros_set = false;
  std::uint64_t seed = 0;
  long long macros = 0;
};

int cmd_run(const RunArgs& args) {
  gsel::ExperimentConfig cfg = gsel::load_config(args.config_path);
  if (args.seed_set) cfg.seed = args.seed;
  if (args.macros_set) cfg.macros = args.macros;
  cfg.validate();
  std::cerr << "config: " << gsel::describe_config(cfg) << "\n";

  const gsel::ExperimentResult result = gsel::run_experiment(cfg, args.threads);
  for (size_t c = 0; c < result.curve.checkpoints.size(); ++c)
    std::cerr << "checkpoint T=" << result.curve.checkpoints[c]
              << " ipcs=" << gsel::format_double(result.curve.ipcs[c])
              << " se=" << gsel::format_double(result.curve.std_error[c]) << "\n";

  CsvTarget target(args.out);
  if (target.to_stdout || target.fresh) gsel::write_results_header(target.os());
  gsel::write_results_rows(target.os(), gsel::policy_name(cfg.policy), cfg.m, result.curve,
                           cfg.seed);
  if (!args.ratio_out.empty()) {
    std::ofstream rf(args.ratio_out, std::ios::trunc);
    if (!rf) throw std::invalid_argument("cannot open output file '" + args.ratio_out + "'");
    gsel::write_ratio_report(rf, result.ratio_report);
  }
  return 0;
}

struct RatiosArgs {
  std::string means, stds, out;
  int k = 0, m = 1, survivor = 1;
  double tol = 1e-9;
  double min_gap = 1e-12;
  int max_iter = 100000;
};

int cmd_ratios(const RatiosArgs& args) {
  gsel::RatioProblem problem;
  problem.means = parse_list(args.means, "--means");
  problem.stds = parse_list(args.stds, "--stds");
  problem.m = args.m;
  problem.survivor_rank = args.survivor;
  problem.min_gap = args.min_gap;
  if (args.k > 0 && args.k != problem.means.size())
    throw std::invalid_argument("--k does not match the length of --means");
  const gsel::RatioSolution sol = gsel::solve_ratios(problem, args.tol, args.max_iter);

  CsvTarget target(args.out);
  gsel::write_ratio_solution(target.os(), sol.r, sol.balance_residual, sol.closure_residual,
                             sol.converged);
  if (!sol.converged) {
    std::cerr << "ratios: solver did not converge (best residual "
              << gsel::format_double(sol.residual) << ")\n";
    return 1;
  }
  return 0;
}

struct ApproxArgs {
  std::string means, vars, scalings = "1,2,4,8", out;
  int m = 1, rank = 1;
  long samples = 1000000;
  std::uint64_t seed = 1;
};

int cmd_validate_approx(const ApproxArgs& args) {
  const Eigen::VectorXd means = parse_list(args.means, "--means");
  const Eigen::VectorXd vars = parse_list(args.vars, "--vars");
  const Eigen::VectorXd scalings = parse_list(args.scalings, "--scalings");
  if (args.samples < 1) throw std::invalid_argument("--samples must be >= 1");

  CsvTarget target(args.out);
  gsel::write_approx_header(target.os());
  for (int s = 0; s < scalings.size(); ++s) {
    const double c = scalings[s];
    if (!(c > 0.0)) throw std::invalid_argument("--scalings must be > 0");
    gsel::PosteriorSnapshot snap{c * means, vars, args.m};
    const double d = gsel::boundary_d_statistic(snap.means, snap.variances, args.m, args.rank);
    // same substream for every scaling: common random numbers
    gsel::Rng rng = gsel::Rng::substream(args.seed, 0);
    const auto region =
        gsel::mc_region_probability(gsel::pair_diff_model(snap, args.rank), args.samples, rng);
    const double ball =
        gsel::ball_probability(std::max(d, 0.0), static_cast<int>(means.size()) - args.m);
    gsel::write_approx_row(target.os(), d, region.estimate, ball,
                           std::fabs(region.estimate - ball));
  }
  return 0;
}

struct OracleArgs {
  std::string table, out;
  long reps = 1000000;
  std::uint64_t seed = 1;
  int threads = default_threads();
};

int cmd_inventory_oracle(const OracleArgs& args) {
  if (args.reps < 2) throw std::invalid_argument("--reps must be >= 2");
  const std::vector<gsel::InventoryPolicy> table =
      args.table.empty() ? gsel::default_inventory_table()
                         : gsel::load_inventory_table_csv(args.table);
  const gsel::InventoryParams params;
  const int k = static_cast<int>(table.size());

  std::vector<double> mean(k), se(k);
  // one substream per alternative; estimates are threading-independent
  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= k) return;
      gsel::Rng rng = gsel::Rng::substream(args.seed, static_cast<std::uint64_t>(i));
      double m = 0.0, m2 = 0.0;
      for (long r = 0; r < args.reps; ++r) {
        const double x = gsel::inventory_replication_cost(table[i], params, rng);
        const double delta = x - m;
        m += delta / (r + 1);
        m2 += delta * (x - m);
      }
      mean[i] = m;
      se[i] = std::sqrt(m2 / (args.reps - 1) / args.reps);
    }
  };
  const int workers = std::max(1, std::min(args.threads, k));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  CsvTarget target(args.out);
  gsel::write_oracle_header(target.os());
  int best = 0;
  for (int i = 0; i < k; ++i) {
    if (mean[i] < mean[best]) best = i;
    gsel::write_oracle_row(target.os(), i + 1, table[i].reorder_point, table[i].order_up_to,
                           mean[i], se[i]);
  }
  std::cerr << "inventory-oracle: argmin cost is alternative " << (best + 1) << " (s="
            << table[best].reorder_point << ", S=" << table[best].order_up_to << ", mean cost "
            << gsel::format_double(mean[best]) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential sampling policies for good-enough subset selection"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a configured experiment and emit result CSV");
  run->add_option("--config", run_args.config_path, "JSON experiment config")->required();
  run->add_option("--out", run_args.out, "results CSV path (default: stdout, appends)");
  run->add_option("--ratio-out", run_args.ratio_out, "sampling-ratio report CSV path");
  run->add_option("--threads", run_args.threads, "worker threads");
  run->add_option("--seed", run_args.seed, "override the config seed")
      ->each([&](const std::string&) { run_args.seed_set = true; });
  run->add_option("--macros", run_args.macros, "override the config macro count")
      ->each([&](const std::string&) { run_args.macros_set = true; });

  RatiosArgs ratio_args;
  auto* ratios = app.add_subcommand("ratios", "Solve the asymptotic sampling-ratio equations");
  ratios->add_option("--k", ratio_args.k, "number of alternatives (checked against --means)");
  ratios->add_option("--m", ratio_args.m, "good-enough subset size")->required();
  ratios->add_option("--means", ratio_args.means, "comma-separated true means")->required();
  ratios->add_option("--stds", ratio_args.stds, "comma-separated true stds")->required();
  ratios->add_option("--survivor", ratio_args.survivor, "surviving top-m rank (1-based)");
  ratios->add_option("--tol", ratio_args.tol, "convergence tolerance");
  ratios->add_option("--min-gap", ratio_args.min_gap, "minimum distinct-mean gap");
  ratios->add_option("--max-iter", ratio_args.max_iter, "iteration cap");
  ratios->add_option("--out", ratio_args.out, "output CSV path (default: stdout)");

  ApproxArgs approx_args;
  auto* approx = app.add_subcommand(
      "validate-approx", "Region probability vs. ball approximation across gap scalings");
  approx->add_option("--means", approx_args.means, "posterior means")->required();
  approx->add_option("--vars", approx_args.vars, "posterior variances")->required();
  approx->add_option("--m", approx_args.m, "good-enough subset size")->required();
  approx->add_option("--rank", approx_args.rank, "top-m rank under study (1-based)");
  approx->add_option("--scalings", approx_args.scalings, "gap scaling factors");
  approx->add_option("--samples", approx_args.samples, "Monte Carlo samples per scaling");
  approx->add_option("--seed", approx_args.seed, "RNG seed");
  approx->add_option("--out", approx_args.out, "output CSV path (default: stdout)");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("inventory-oracle",
                                    "Long-run mean cost per inventory alternative");
  oracle->add_option("--reps", oracle_args.reps, "replications per alternative");
  oracle->add_option("--table", oracle_args.table, "alternative table CSV (index,s,S)");
  oracle->add_option("--seed", oracle_args.seed, "RNG seed");
  oracle->add_option("--threads", oracle_args.threads, "worker threads");
  oracle->add_option("--out", oracle_args.out, "output CSV path (default: stdout)");

  auto* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*ratios) return cmd_ratios(ratio_args);
    if (*approx) return cmd_validate_approx(approx_args);
    if (*oracle) return cmd_inventory_oracle(oracle_args);
    if (*version) {
      std::cout << kVersion << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
